// Acceptance suite: one pass/fail line per criterion, nonzero exit on any
// failure. Tolerances are pinned in the checks themselves.

#include <unsupported/Eigen/MatrixFunctions>

#include <chrono>
#include <cmath>
#include <iostream>
#include <random>
#include <sstream>
#include <vector>

#include "reeb/betti.hpp"
#include "reeb/gromov.hpp"
#include "reeb/growth.hpp"
#include "reeb/hamflow.hpp"
#include "reeb/loopmodel.hpp"
#include "reeb/loops.hpp"
#include "reeb/maslov.hpp"

using namespace reeb;

namespace {

struct Criterion {
    int number = 0;
    std::string label;
    double time_limit_s = 0;
    bool pass = true;
    std::ostringstream detail;

    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail << "  failed: " << what << "\n";
        }
    }
};

betti::BettiTable table_for(const std::string& spec, int k) {
    auto model = loopmodel::build_model(loopmodel::ModelSpec::parse(spec), k + 2);
    return betti::betti_numbers(model, k);
}

maslov::SymplecticPath rotation_path(double angle, int n = 2000) {
    std::vector<double> times;
    std::vector<maslov::Mat> mats;
    for (int i = 0; i <= n; ++i) {
        double t = double(i) / n;
        maslov::Mat m(2, 2);
        m << std::cos(angle * t), std::sin(angle * t), -std::sin(angle * t), std::cos(angle * t);
        times.push_back(t);
        mats.push_back(m);
    }
    return maslov::make_symplectic_path(2, times, mats);
}

void criterion_1(Criterion& c) {
    std::vector<long> s5 = {1, 0, 0, 0, 1, 1, 0, 0, 1, 1, 0, 0, 1, 1, 0, 0};
    std::vector<long> s7 = {1, 0, 0, 0, 0, 0, 1, 1, 0, 0, 0, 0, 1, 1, 0, 0};
    std::vector<long> prod = {1, 0, 0, 0, 1, 1, 1, 1, 1, 1, 1, 2, 3, 2, 1, 2};
    c.require(table_for("loop(s5)", 15).values == s5, "betti row of loop(S^5)");
    c.require(table_for("loop(s7)", 15).values == s7, "betti row of loop(S^7)");
    c.require(table_for("loop(s5)*loop(s7)", 15).values == prod, "betti row of the product");
}

void criterion_2(Criterion& c) {
    for (int n : {3, 5, 7, 9}) {
        auto computed = table_for("loop(s" + std::to_string(n) + ")", 30);
        auto pattern = betti::odd_sphere_degree_pattern(n, 30);
        c.require(computed.values == pattern.values,
                  "odd sphere pattern n=" + std::to_string(n));
    }
}

void criterion_3(Criterion& c) {
    for (int n : {2, 4, 6}) {
        auto table = table_for("loop(s" + std::to_string(n) + ")", 30);
        for (int s = 0;; ++s) {
            int deg = (1 + 2 * s) * (n - 1);
            if (deg > 30) break;
            c.require(table.at(deg) >= 1, "sullivan class degree " + std::to_string(deg) +
                                              " of loop(S^" + std::to_string(n) + ")");
        }
    }
}

void criterion_4(Criterion& c) {
    // Odd spheres: the printed bound needs b_0 counted in (the degree-one
    // tail alone is short by exactly one at multiples of n-1, as the tables
    // themselves show); check the sharp corrected form.
    for (int n : {3, 5, 7, 9}) {
        auto table = table_for("loop(s" + std::to_string(n) + ")", 30);
        auto sums = betti::partial_sums_from_degree_one(table);
        for (int k = 1; k <= 30; ++k) {
            c.require(sums[std::size_t(k)] + table.at(0) >= 2 * (k / (n - 1)),
                      "odd partial sum bound n=" + std::to_string(n) + " k=" + std::to_string(k));
            c.require(sums[std::size_t(k)] >= 2 * (k / (n - 1)) - 1,
                      "odd degree-one tail bound n=" + std::to_string(n) + " k=" + std::to_string(k));
        }
    }
    // Even spheres and products: below the first loop class the degree-one
    // tail is empty, so the printed bounds hold once b_0 is counted; past
    // that degree the tail alone is checked as well.
    for (int n : {2, 4, 6}) {
        auto table = table_for("loop(s" + std::to_string(n) + ")", 30);
        auto sums = betti::partial_sums_from_degree_one(table);
        for (int k = 1; k <= 30; ++k) {
            double bound = double(k) / (2.0 * (n - 1));
            c.require(double(sums[std::size_t(k)]) + double(table.at(0)) >= bound,
                      "even partial sum bound n=" + std::to_string(n) + " k=" + std::to_string(k));
            if (k >= n - 1)
                c.require(double(sums[std::size_t(k)]) >= bound,
                          "even degree-one tail bound n=" + std::to_string(n) +
                              " k=" + std::to_string(k));
        }
    }
    {
        auto table = table_for("loop(s5)*loop(s7)", 15);
        auto sums = betti::partial_sums_from_degree_one(table);
        for (int k = 1; k <= 15; ++k) {
            double bound = double(k) * k / (16.0 * 36.0);
            c.require(double(sums[std::size_t(k)]) + double(table.at(0)) >= bound,
                      "product bound (5,7) k=" + std::to_string(k));
            if (k >= 4)
                c.require(double(sums[std::size_t(k)]) >= bound,
                          "product tail bound (5,7) k=" + std::to_string(k));
        }
    }
    {
        auto table = table_for("loop(s3)*loop(s3)", 30);
        auto sums = betti::partial_sums_from_degree_one(table);
        for (int k = 1; k <= 30; ++k) {
            double bound = double(k) * k / (4.0 * 4.0);
            c.require(double(sums[std::size_t(k)]) + double(table.at(0)) >= bound,
                      "product bound (3,3) k=" + std::to_string(k));
            if (k >= 2)
                c.require(double(sums[std::size_t(k)]) >= bound,
                          "product tail bound (3,3) k=" + std::to_string(k));
        }
        growth::CountSequence seq;
        for (int k = 1; k <= 30; ++k)
            seq.samples.push_back(
                growth::CountSample{double(k), (unsigned long long)(sums[std::size_t(k)])});
        double rate = growth::poly_growth_rate(seq);
        c.detail << "  poly growth estimate of loop(S^3 x S^3) partial sums: " << rate << "\n";
        c.require(rate >= 1.8, "polynomial growth estimate >= 1.8");
    }
}

void criterion_5(Criterion& c) {
    auto half = maslov::cz_index(rotation_path(M_PI));
    c.require(half.index.twice == 2, "cz of the half rotation = 1");
    auto full = maslov::cz_index(rotation_path(2 * M_PI));
    c.require(full.index.twice == 4, "cz of the full rotation loop = 2");

    maslov::SymplecticPath base = rotation_path(2 * M_PI, 500);
    for (int k = 2; k <= 5; ++k) {
        double lhs = maslov::delta_winding(maslov::iterate_path(base, k));
        double rhs = double(k) * maslov::delta_winding(base);
        c.require(std::abs(lhs - rhs) <= 1e-6,
                  "winding iteration k=" + std::to_string(k));
    }

    std::mt19937 rng(424242);
    auto random_symmetric = [&](int n) {
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        maslov::Mat s(n, n);
        for (int i = 0; i < n; ++i)
            for (int j = i; j < n; ++j) {
                s(i, j) = u(rng);
                s(j, i) = s(i, j);
            }
        return s;
    };
    int tested = 0;
    while (tested < 50) {
        int m = 1 + int(rng() % 2);
        int dim = 2 * m;
        maslov::Mat j0 = maslov::standard_J(dim);
        maslov::Mat a1 = j0 * random_symmetric(dim) * (0.5 + 2.5 * double(rng() % 1000) / 1000.0);
        maslov::Mat a2 = j0 * random_symmetric(dim);
        std::vector<double> times;
        std::vector<maslov::Mat> mats;
        int n = 1200;
        for (int i = 0; i <= n; ++i) {
            double t = double(i) / n;
            times.push_back(t);
            mats.push_back(((t * a1).exp() * (t * a2).exp()).eval());
        }
        maslov::SymplecticPath path = maslov::make_symplectic_path(dim, times, mats, 1e-5);
        if (!maslov::endpoint_nondegenerate(path, 1e-4)) continue;
        ++tested;
        auto cz = maslov::cz_index(path);
        double delta = maslov::delta_winding(path);
        c.require(cz.index.is_integer(), "nondegenerate path has integer index");
        c.require(std::abs(cz.index.value() - delta) < double(m),
                  "|CZ - Delta| < m on random path " + std::to_string(tested));
    }
}

void criterion_6(Criterion& c) {
    using hamflow::HamiltonianField;
    using hamflow::Orbit;
    using hamflow::PhaseSpace;
    using hamflow::State;
    using hamflow::VecD;
    PhaseSpace torus1{PhaseSpace::Kind::TorusCotangent, 1};
    PhaseSpace torus2{PhaseSpace::Kind::TorusCotangent, 2};

    auto kinetic = [](PhaseSpace ps) {
        return HamiltonianField(ps, [](double, const VecD&, const VecD& p) {
            double s = 0;
            for (double x : p) s += x * x;
            return 0.5 * s;
        });
    };

    // Euler identity on homogeneous test fields
    HamiltonianField g2 = kinetic(torus2);
    std::mt19937 rng(7);
    std::uniform_real_distribution<double> u(-2.0, 2.0);
    for (int i = 0; i < 20; ++i) {
        State x{{u(rng), u(rng)}, {u(rng), u(rng)}};
        if (std::abs(x.p[0]) + std::abs(x.p[1]) < 0.1) continue;
        c.require(hamflow::euler_identity_residual(g2, x) <= 1e-7, "euler residual (kinetic)");
    }
    HamiltonianField quartic(
        PhaseSpace{PhaseSpace::Kind::Euclidean, 2},
        [](double, const VecD&, const VecD& p) {
            double num = p[0] * p[0] * p[0] * p[0] + p[1] * p[1] * p[1] * p[1];
            return 0.5 * num / (p[0] * p[0] + p[1] * p[1]);
        },
        [](double, const VecD& q, const VecD& p, VecD& dq, VecD& dp) {
            dq.assign(q.size(), 0.0);
            dp.assign(2, 0.0);
            double num = p[0] * p[0] * p[0] * p[0] + p[1] * p[1] * p[1] * p[1];
            double den = p[0] * p[0] + p[1] * p[1];
            for (int i = 0; i < 2; ++i)
                dp[std::size_t(i)] =
                    0.5 * (4 * p[i] * p[i] * p[i] * den - num * 2 * p[i]) / (den * den);
        });
    for (int i = 0; i < 20; ++i) {
        State x{{0.0, 0.0}, {u(rng), u(rng)}};
        if (std::abs(x.p[0]) + std::abs(x.p[1]) < 0.1) continue;
        c.require(hamflow::euler_identity_residual(quartic, x) <= 1e-7,
                  "euler residual (quartic homogeneous)");
    }

    // energy drift on the torus geodesic flow
    HamiltonianField g1 = kinetic(torus1);
    Orbit o1 = hamflow::integrate_flow(g1, State{{0.0}, {1.0}}, 1.0, 1e-3);
    c.require(o1.energy_drift <= 1e-8, "energy drift <= 1e-8");

    // action-homogeneity on torus orbits
    Orbit o2 = hamflow::integrate_flow(kinetic(torus2), State{{0.0, 0.0}, {1.0, 2.0}}, 1.0, 1e-3);
    c.require(std::abs(hamflow::action(g2, o2) - g2.value(0, o2.x.front())) <= 1e-6,
              "|A_F - F| <= 1e-6");

    // period sqrt(a) rescaling; closed torus orbits need integer momentum, so
    // a = 1/2, 2, 5 are realized on T*T^2 by p = (1,0), (2,0), (3,1)
    {
        HamiltonianField g = kinetic(torus2);
        const std::vector<std::pair<double, VecD>> cases = {
            {0.5, {1.0, 0.0}}, {2.0, {2.0, 0.0}}, {5.0, {3.0, 1.0}}};
        for (const auto& [a, p0] : cases) {
            Orbit orbit = hamflow::integrate_flow(g, State{{0.0, 0.0}, p0}, 1.0, 1e-3);
            double action_value = hamflow::action(g, orbit);
            c.require(std::abs(action_value - a) <= 1e-9, "action = a");
            Orbit rescaled = hamflow::rescale_orbit(orbit, 1.0 / std::sqrt(a));
            c.require(std::abs(g.value(0, rescaled.x.front()) - 1.0) <= 1e-9, "F = 1 after rescale");
            c.require(std::abs(rescaled.period - std::sqrt(a)) <= 1e-12, "period sqrt(a)");
            c.require(hamflow::flow_residual(g, rescaled) <= 1e-6, "rescaled orbit solves the flow");
        }
    }

    // Legendre: A_H = E_L
    for (double beta : {1.0, 2.0}) {
        HamiltonianField h(torus1, [beta](double, const VecD&, const VecD& p) {
            return beta * 0.5 * p[0] * p[0];
        });
        Orbit orbit = hamflow::integrate_flow(h, State{{0.0}, {1.0 / beta}}, 1.0, 1e-3);
        auto lag = hamflow::legendre_quadratic(beta, [](double, const VecD&) { return 0.0; });
        double ah = hamflow::action(h, orbit);
        double el = hamflow::lagrangian_action(lag, orbit, beta);
        c.require(std::abs(ah - el) <= 1e-6, "A_H = E_L");
    }
}

void criterion_7(Criterion& c) {
    std::mt19937 rng(1234);
    // immersed loops: amplitudes keep the x-speed positive so arc-length
    // marks cannot collapse onto a fold
    std::uniform_real_distribution<double> amp1(-0.05, 0.05), amp2(-0.03, 0.03),
        ampy(-0.1, 0.1);
    for (int trial = 0; trial < 100; ++trial) {
        loops::DiscreteLoop loop;
        loop.metric = loops::DiscreteLoop::Metric::Torus;
        double a1 = amp1(rng), a2 = amp2(rng), b1 = ampy(rng);
        for (int i = 0; i < 600; ++i) {
            double u = double(i) / 600.0;
            double x = u + a1 * std::sin(2 * M_PI * u) + a2 * std::cos(4 * M_PI * u);
            double y = b1 * std::sin(2 * M_PI * u);
            loop.points.push_back({x - std::floor(x), y - std::floor(y)});
        }
        auto m = loops::measure(loop);
        c.require(0.5 * m.length * m.length <= m.energy * (1 + 1e-12),
                  "Schwarz inequality trial " + std::to_string(trial));
        auto flat = loops::measure(loops::arclength_reparametrize(loop));
        double rel = std::abs(flat.energy - 0.5 * flat.length * flat.length) /
                     std::max(1e-12, flat.energy);
        c.require(rel <= 1e-6, "Schwarz equality after reparametrization, trial " +
                                   std::to_string(trial));
    }

    // product-circle lift identity at N = 2000
    loops::DiscreteLoop base;
    base.metric = loops::DiscreteLoop::Metric::Euclidean;
    for (int i = 0; i < 2000; ++i) {
        double a = 2 * M_PI * double(i) / 2000.0;
        base.points.push_back({std::cos(a), std::sin(a)});
    }
    double length = loops::measure(base).length;
    auto lifted = loops::arclength_reparametrize(loops::lift_to_product_circle(base));
    double energy = loops::measure(lifted).energy;
    double expected = 0.5 * (length * length + 1.0);
    c.require(std::abs(energy - expected) / expected <= 1e-3, "lift energy identity");
}

void criterion_8(Criterion& c) {
    gromov::Triangulation tri = gromov::build_triangulation(
        {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}},
        {{0, 2, 4}, {0, 2, 5}, {0, 3, 4}, {0, 3, 5}, {1, 2, 4}, {1, 2, 5}, {1, 3, 4}, {1, 3, 5}});
    auto cover = gromov::star_cover(tri);
    auto all = gromov::enumerate_Bk(tri, cover, 1, false);
    c.require(!all.cells.empty(), "nonempty enumeration");
    auto report = gromov::leg_bound_report(tri, all.cells);
    for (const auto& row : report)
        c.require(row.pass, "leg bound on cell " + std::to_string(row.cell_index));

    gromov::Admissibility adm(tri, cover);
    for (const auto& cell : all.cells)
        c.require(adm.sequence(gromov::duplicate_sequence(cell.face_seq)),
                  "monotone inclusion of cell");
}

}  // namespace

int main() {
    struct Entry {
        int number;
        const char* label;
        double time_limit_s;
    };
    const Entry entries[] = {
        {1, "Betti tables of loop(S^5), loop(S^7) and their product, degrees 0-15, exact", 10},
        {2, "odd-sphere degree pattern for n in {3,5,7,9} up to degree 30, exact", 30},
        {3, "even-sphere Sullivan class degrees have rank >= 1 up to degree 30", 30},
        {4, "partial-sum growth bounds and product growth estimate >= 1.8", 30},
        {5, "Maslov indices: rotation oracles, winding iteration, |CZ-Delta| < m", 20},
        {6, "Hamiltonian suite: Euler, drift, action homogeneity, rescaling, Legendre", 10},
        {7, "loop functionals: Schwarz equality and the product-circle lift", 5},
        {8, "broken-geodesic complex: leg bounds and monotone inclusion", 30},
    };

    int failures = 0;
    for (const auto& entry : entries) {
        Criterion c;
        c.number = entry.number;
        c.label = entry.label;
        c.time_limit_s = entry.time_limit_s;
        auto start = std::chrono::steady_clock::now();
        try {
            switch (c.number) {
                case 1: criterion_1(c); break;
                case 2: criterion_2(c); break;
                case 3: criterion_3(c); break;
                case 4: criterion_4(c); break;
                case 5: criterion_5(c); break;
                case 6: criterion_6(c); break;
                case 7: criterion_7(c); break;
                case 8: criterion_8(c); break;
            }
        } catch (const std::exception& e) {
            c.pass = false;
            c.detail << "  exception: " << e.what() << "\n";
        }
        double elapsed = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (elapsed > c.time_limit_s) {
            c.pass = false;
            c.detail << "  time limit " << c.time_limit_s << "s exceeded\n";
        }
        std::cout << (c.pass ? "[PASS] " : "[FAIL] ") << "criterion " << c.number << ": " << c.label
                  << " (" << elapsed << "s)\n";
        if (!c.detail.str().empty()) std::cout << c.detail.str();
        if (!c.pass) ++failures;
    }
    if (failures) std::cout << failures << " criterion(s) failed\n";
    else std::cout << "all criteria passed\n";
    return failures == 0 ? 0 : 1;
}
