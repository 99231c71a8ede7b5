#include "reeb/maslov.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>

#include <algorithm>
#include <cmath>
#include <complex>
#include <sstream>
#include <stdexcept>

namespace reeb::maslov {

namespace {

constexpr double kCrossingSigma = 5e-7;   // sigma_min at a refined crossing
constexpr double kTimeTol = 1e-8;         // bisection width for crossing times
constexpr double kKernelSigma = 1e-5;     // kernel cut in the stacked-frame SVD
constexpr double kRegularityRel = 1e-7;   // relative eigenvalue floor of Gamma
constexpr double kZeroFormAbs = 1e-6;     // |Gamma| below this counts as zero

Mat orthonormal_columns(const Mat& frame) {
    Eigen::HouseholderQR<Mat> qr(frame);
    Mat q = qr.householderQ() * Mat::Identity(frame.rows(), frame.cols());
    return q;
}

double smallest_stacked_sigma(const Mat& qa, const Mat& qb) {
    Mat stacked(qa.rows(), qa.cols() + qb.cols());
    stacked << qa, qb;
    Eigen::JacobiSVD<Mat> svd(stacked);
    return svd.singularValues().minCoeff();
}

}  // namespace

std::string HalfInt::str() const {
    std::ostringstream os;
    if (twice % 2 == 0)
        os << twice / 2;
    else
        os << twice << "/2";
    return os.str();
}

Mat standard_J(int two_m) {
    if (two_m <= 0 || two_m % 2 != 0) throw std::invalid_argument("dimension must be positive even");
    int m = two_m / 2;
    Mat j = Mat::Zero(two_m, two_m);
    j.topRightCorner(m, m) = Mat::Identity(m, m);
    j.bottomLeftCorner(m, m) = -Mat::Identity(m, m);
    return j;
}

Mat graph_J(int two_m) {
    Mat j0 = standard_J(two_m);
    Mat j = Mat::Zero(2 * two_m, 2 * two_m);
    j.topLeftCorner(two_m, two_m) = -j0;
    j.bottomRightCorner(two_m, two_m) = j0;
    return j;
}

LagrangianFrame make_frame(const Mat& structure, const Mat& frame, double tolerance) {
    const int dim = int(frame.rows());
    if (structure.rows() != dim || structure.cols() != dim)
        throw std::invalid_argument("structure/frame dimension mismatch");
    if (frame.cols() * 2 != dim)
        throw std::invalid_argument("a Lagrangian frame must have dim/2 columns");
    Eigen::JacobiSVD<Mat> svd(frame);
    if (svd.singularValues().minCoeff() < tolerance * std::max(1.0, svd.singularValues().maxCoeff()))
        throw std::invalid_argument("Lagrangian frame is rank deficient");
    // omega(v, w) = <J v, w>  =>  isotropy is frame^T J^T frame = 0.
    Mat iso = frame.transpose() * structure.transpose() * frame;
    if (iso.cwiseAbs().maxCoeff() > tolerance * std::max(1.0, frame.squaredNorm()))
        throw std::invalid_argument("frame does not span an isotropic subspace");
    return LagrangianFrame{dim, frame};
}

LagrangianFrame horizontal_frame(int two_m) {
    int m = two_m / 2;
    Mat f = Mat::Zero(two_m, m);
    f.topRows(m) = Mat::Identity(m, m);
    return LagrangianFrame{two_m, f};
}

LagrangianFrame vertical_frame(int two_m) {
    int m = two_m / 2;
    Mat f = Mat::Zero(two_m, m);
    f.bottomRows(m) = Mat::Identity(m, m);
    return LagrangianFrame{two_m, f};
}

LagrangianFrame diagonal_frame(int two_m) {
    Mat f(2 * two_m, two_m);
    f.topRows(two_m) = Mat::Identity(two_m, two_m);
    f.bottomRows(two_m) = Mat::Identity(two_m, two_m);
    return LagrangianFrame{2 * two_m, f};
}

void LagrangianPath::validate() const {
    if (times.size() != frames.size() || times.size() < 2)
        throw std::invalid_argument("Lagrangian path needs matching times/frames, >= 2 samples");
    for (std::size_t i = 1; i < times.size(); ++i)
        if (!(times[i] > times[i - 1]))
            throw std::invalid_argument("Lagrangian path times must be strictly increasing");
    for (const auto& f : frames)
        if (int(f.rows()) != dim || int(f.cols()) * 2 != dim)
            throw std::invalid_argument("Lagrangian path frame has wrong shape");
    if (int(structure.rows()) != dim || int(structure.cols()) != dim)
        throw std::invalid_argument("Lagrangian path structure has wrong shape");
}

Mat LagrangianPath::frame_at(double t) const {
    if (t <= times.front()) return frames.front();
    if (t >= times.back()) return frames.back();
    auto it = std::upper_bound(times.begin(), times.end(), t);
    std::size_t hi = std::size_t(it - times.begin());
    std::size_t lo = hi - 1;
    double lambda = (t - times[lo]) / (times[hi] - times[lo]);
    return (1.0 - lambda) * frames[lo] + lambda * frames[hi];
}

void SymplecticPath::validate() const {
    if (times.size() != samples.size() || times.size() < 2)
        throw std::invalid_argument("symplectic path needs matching times/samples, >= 2 samples");
    if (dim <= 0 || dim % 2 != 0) throw std::invalid_argument("symplectic path dimension must be even");
    for (std::size_t i = 1; i < times.size(); ++i)
        if (!(times[i] > times[i - 1]))
            throw std::invalid_argument("symplectic path times must be strictly increasing");
    Mat j = standard_J(dim);
    for (const auto& m : samples) {
        if (int(m.rows()) != dim || int(m.cols()) != dim)
            throw std::invalid_argument("symplectic path sample has wrong shape");
        double defect = (m.transpose() * j * m - j).cwiseAbs().maxCoeff();
        if (defect > tolerance)
            throw std::invalid_argument("path sample is not symplectic within tolerance");
    }
}

Mat SymplecticPath::at(double t) const {
    if (t <= times.front()) return samples.front();
    if (t >= times.back()) return samples.back();
    auto it = std::upper_bound(times.begin(), times.end(), t);
    std::size_t hi = std::size_t(it - times.begin());
    std::size_t lo = hi - 1;
    double lambda = (t - times[lo]) / (times[hi] - times[lo]);
    return (1.0 - lambda) * samples[lo] + lambda * samples[hi];
}

SymplecticPath make_symplectic_path(int dim, std::vector<double> times, std::vector<Mat> samples,
                                    double tolerance) {
    SymplecticPath p;
    p.dim = dim;
    p.times = std::move(times);
    p.samples = std::move(samples);
    p.tolerance = tolerance;
    p.validate();
    return p;
}

int intersection_dim(const LagrangianFrame& a, const LagrangianFrame& b, double threshold) {
    if (a.dim != b.dim) throw std::invalid_argument("intersection_dim: dimension mismatch");
    Mat qa = orthonormal_columns(a.frame);
    Mat qb = orthonormal_columns(b.frame);
    Mat stacked(qa.rows(), qa.cols() + qb.cols());
    stacked << qa, qb;
    Eigen::JacobiSVD<Mat> svd(stacked);
    Vec sv = svd.singularValues();
    int k = 0;
    for (int i = 0; i < sv.size(); ++i) {
        if (sv[i] < threshold) ++k;
        else if (sv[i] < 100.0 * threshold)
            throw std::runtime_error(
                "intersection_dim: singular value inside the ambiguity band; refine tolerance");
    }
    return k;
}

namespace {

// Orthonormal basis of Lambda(t) cap V from the null space of the stacked
// orthonormal frames. sigma_cut separates the kernel cluster.
Mat intersection_basis(const Mat& q_lambda, const Mat& q_v, double sigma_cut, int* kernel_dim) {
    Mat stacked(q_lambda.rows(), q_lambda.cols() + q_v.cols());
    stacked << q_lambda, q_v;
    Eigen::JacobiSVD<Mat> svd(stacked, Eigen::ComputeFullV);
    Vec sv = svd.singularValues();
    int k = 0;
    for (int i = 0; i < sv.size(); ++i)
        if (sv[i] < sigma_cut) ++k;
    if (kernel_dim) *kernel_dim = k;
    if (k == 0) return Mat(q_lambda.rows(), 0);
    Mat null_vecs = svd.matrixV().rightCols(k);
    Mat basis = q_lambda * null_vecs.topRows(q_lambda.cols());
    return orthonormal_columns(basis);
}

struct Stencil {
    std::vector<double> ts;
    std::vector<double> weights;  // weights of w(ts[i]) for d/dt at t0
};

Stencil choose_stencil(double t0, double lo, double hi, double h) {
    // Central when there is room, second-order one-sided otherwise. At the
    // crossing itself w(t0) = 0 exactly, so one-sided stencils omit it.
    if (t0 - h >= lo && t0 + h <= hi)
        return Stencil{{t0 - h, t0 + h}, {-0.5 / h, 0.5 / h}};
    if (t0 + 2 * h <= hi) return Stencil{{t0 + h, t0 + 2 * h}, {2.0 / h, -0.5 / h}};
    if (t0 - 2 * h >= lo) return Stencil{{t0 - h, t0 - 2 * h}, {-2.0 / h, 0.5 / h}};
    throw std::invalid_argument("crossing_form: no room for the finite-difference stencil");
}

}  // namespace

CrossingForm crossing_form(const LagrangianPath& path, const LagrangianFrame& v, double t0,
                           const Mat* complement_frame) {
    path.validate();
    if (v.dim != path.dim) throw std::invalid_argument("crossing_form: dimension mismatch");
    const Mat q_lambda = orthonormal_columns(path.frame_at(t0));
    const Mat q_v = orthonormal_columns(v.frame);

    int kernel_dim = 0;
    Mat basis = intersection_basis(q_lambda, q_v, kKernelSigma, &kernel_dim);
    if (kernel_dim == 0)
        throw std::invalid_argument("crossing_form: Lambda(t0) and V intersect trivially");

    // Lagrangian complement of Lambda(t0); J Lambda(t0) works for any
    // orthogonal complex structure, and Q is independent of this choice.
    Mat w_frame = complement_frame ? *complement_frame : Mat(path.structure * q_lambda);

    double spacing = (path.t1() - path.t0()) / double(path.times.size() - 1);
    double h = 2.0 * spacing;
    Stencil st = choose_stencil(t0, path.t0(), path.t1(), h);

    // For v in the kernel solve v = Q_Lambda(t) c - W beta, i.e. v + w(t) in
    // Lambda(t) with w(t) = W beta in the complement.
    Mat deriv_w = Mat::Zero(path.dim, kernel_dim);
    for (std::size_t s = 0; s < st.ts.size(); ++s) {
        Mat lam_t = orthonormal_columns(path.frame_at(st.ts[s]));
        Mat system(path.dim, path.dim);
        system << lam_t, -w_frame;
        Mat sol = system.partialPivLu().solve(basis);
        Mat w_t = w_frame * sol.bottomRows(path.dim / 2);
        deriv_w += st.weights[s] * w_t;
    }

    // Q(v_a, v_b) = d/dt omega(v_a, w_b(t)) with omega(v, w) = <J v, w>.
    Mat form = basis.transpose() * path.structure.transpose() * deriv_w;
    form = 0.5 * (form + form.transpose()).eval();
    return CrossingForm{basis, form};
}

namespace {

struct CrossingSite {
    double t;
    CrossingRecord::Boundary boundary;
    bool plateau = false;
    double plateau_lo = 0, plateau_hi = 0;
};

double gap_at(const LagrangianPath& path, const Mat& q_v, double t) {
    return smallest_stacked_sigma(orthonormal_columns(path.frame_at(t)), q_v);
}

// Golden-section refinement of a local minimum of the gap function.
std::pair<double, double> refine_minimum(const LagrangianPath& path, const Mat& q_v, double a,
                                         double b) {
    const double gr = 0.5 * (std::sqrt(5.0) - 1.0);
    double c = b - gr * (b - a);
    double d = a + gr * (b - a);
    double fc = gap_at(path, q_v, c);
    double fd = gap_at(path, q_v, d);
    while (b - a > kTimeTol) {
        if (fc < fd) {
            b = d;
            d = c;
            fd = fc;
            c = b - gr * (b - a);
            fc = gap_at(path, q_v, c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + gr * (b - a);
            fd = gap_at(path, q_v, d);
        }
    }
    double t = 0.5 * (a + b);
    return {t, gap_at(path, q_v, t)};
}

}  // namespace

IndexResult rs_index(const LagrangianPath& path, const LagrangianFrame& v) {
    path.validate();
    if (v.dim != path.dim) throw std::invalid_argument("rs_index: dimension mismatch");
    const Mat q_v = orthonormal_columns(v.frame);
    const std::size_t n = path.times.size();

    std::vector<double> gap(n);
    for (std::size_t i = 0; i < n; ++i)
        gap[i] = smallest_stacked_sigma(orthonormal_columns(path.frames[i]), q_v);

    std::vector<CrossingSite> sites;

    // Runs of consecutive at-crossing samples: short runs are isolated
    // crossings, long runs are intervals of constant intersection.
    std::size_t i = 0;
    while (i < n) {
        if (gap[i] >= kCrossingSigma) {
            ++i;
            continue;
        }
        std::size_t j = i;
        while (j + 1 < n && gap[j + 1] < kCrossingSigma) ++j;
        if (j - i + 1 >= 3) {
            CrossingSite site;
            site.t = 0.5 * (path.times[i] + path.times[j]);
            site.plateau = true;
            site.plateau_lo = path.times[i];
            site.plateau_hi = path.times[j];
            site.boundary = CrossingRecord::Boundary::Interior;
            sites.push_back(site);
        } else {
            CrossingSite site;
            if (i == 0) {
                site.t = path.times.front();
                site.boundary = CrossingRecord::Boundary::Start;
            } else if (j == n - 1) {
                site.t = path.times.back();
                site.boundary = CrossingRecord::Boundary::End;
            } else {
                std::size_t best = i;
                for (std::size_t k = i; k <= j; ++k)
                    if (gap[k] < gap[best]) best = k;
                site.t = path.times[best];
                site.boundary = CrossingRecord::Boundary::Interior;
            }
            sites.push_back(site);
        }
        i = j + 1;
    }

    // Crossings between samples appear as local minima of the gap.
    for (std::size_t k = 1; k + 1 < n; ++k) {
        if (gap[k] < kCrossingSigma) continue;  // already handled above
        if (gap[k] <= gap[k - 1] && gap[k] <= gap[k + 1]) {
            auto [t_star, g_star] = refine_minimum(path, q_v, path.times[k - 1], path.times[k + 1]);
            if (g_star < kCrossingSigma) {
                CrossingSite site;
                site.t = t_star;
                site.boundary = CrossingRecord::Boundary::Interior;
                sites.push_back(site);
            }
        }
    }

    std::sort(sites.begin(), sites.end(), [](const CrossingSite& a, const CrossingSite& b) {
        return a.t < b.t;
    });
    // Merge near-duplicates from overlapping detection routes.
    std::vector<CrossingSite> merged;
    for (const auto& s : sites) {
        if (!merged.empty() && std::abs(s.t - merged.back().t) < 100.0 * kTimeTol) {
            if (merged.back().boundary == CrossingRecord::Boundary::Interior)
                merged.back().boundary = s.boundary;
            continue;
        }
        merged.push_back(s);
    }

    IndexResult result;
    long long twice = 0;
    for (const auto& site : merged) {
        if (site.plateau) {
            // Constant-dimensional intersection: the crossing form must vanish
            // identically, and the segment contributes nothing.
            for (double frac : {0.25, 0.5, 0.75}) {
                double t = site.plateau_lo + frac * (site.plateau_hi - site.plateau_lo);
                CrossingForm cf = crossing_form(path, v, t);
                if (cf.form.cwiseAbs().maxCoeff() > kZeroFormAbs)
                    throw std::runtime_error(
                        "rs_index: non-regular crossing (nonzero form on a constant-intersection "
                        "interval)");
            }
            CrossingRecord rec;
            rec.t = site.t;
            rec.kernel_dim = int(crossing_form(path, v, site.t).basis.cols());
            rec.signature = 0;
            rec.boundary = site.boundary;
            result.crossings.push_back(rec);
            continue;
        }

        CrossingForm cf = crossing_form(path, v, site.t);
        Eigen::SelfAdjointEigenSolver<Mat> eig(cf.form);
        Vec lambda = eig.eigenvalues();
        double norm = lambda.cwiseAbs().maxCoeff();
        if (norm <= kZeroFormAbs)
            throw std::runtime_error("rs_index: non-regular crossing (vanishing crossing form)");
        int sig = 0;
        for (int e = 0; e < lambda.size(); ++e) {
            if (std::abs(lambda[e]) < kRegularityRel * norm)
                throw std::runtime_error("rs_index: non-regular crossing (singular crossing form)");
            sig += (lambda[e] > 0) ? 1 : -1;
        }
        CrossingRecord rec;
        rec.t = site.t;
        rec.kernel_dim = int(cf.basis.cols());
        rec.signature = sig;
        rec.boundary = site.boundary;
        result.crossings.push_back(rec);
        twice += (rec.boundary == CrossingRecord::Boundary::Interior) ? 2LL * sig : sig;
    }
    result.index = HalfInt{twice};
    return result;
}

LagrangianPath graph_lagrangian_path(const SymplecticPath& path) {
    path.validate();
    LagrangianPath lp;
    lp.dim = 2 * path.dim;
    lp.structure = graph_J(path.dim);
    lp.times = path.times;
    lp.tolerance = path.tolerance;
    lp.frames.reserve(path.samples.size());
    for (const auto& psi : path.samples) {
        Mat f(2 * path.dim, path.dim);
        f.topRows(path.dim) = Mat::Identity(path.dim, path.dim);
        f.bottomRows(path.dim) = psi;
        lp.frames.push_back(f);
    }
    return lp;
}

IndexResult cz_index(const SymplecticPath& path) {
    LagrangianPath graph = graph_lagrangian_path(path);
    LagrangianFrame delta = diagonal_frame(path.dim);
    return rs_index(graph, delta);
}

double delta_winding(const SymplecticPath& path) {
    path.validate();
    const int m = path.dim / 2;
    double alpha = 0;
    double prev = 0;
    bool have_prev = false;
    for (const auto& psi : path.samples) {
        Eigen::JacobiSVD<Mat> svd(psi, Eigen::ComputeFullU | Eigen::ComputeFullV);
        Mat rot = svd.matrixU() * svd.matrixV().transpose();
        // rot lies in Sp(2m) cap O(2m) = U(m): blocks [[A, B], [-B, A]].
        Eigen::MatrixXcd u(m, m);
        u.real() = rot.topLeftCorner(m, m);
        u.imag() = rot.topRightCorner(m, m);
        std::complex<double> det = u.determinant();
        double angle = std::arg(det);
        if (have_prev) {
            double jump = angle - prev;
            while (jump > M_PI) jump -= 2 * M_PI;
            while (jump < -M_PI) jump += 2 * M_PI;
            if (std::abs(jump) >= M_PI / 2)
                throw std::invalid_argument("delta_winding: sampling too coarse (angle jump >= pi/2)");
            alpha += jump;
        }
        prev = angle;
        have_prev = true;
    }
    return alpha / M_PI;
}

SymplecticPath iterate_path(const SymplecticPath& path, int k) {
    path.validate();
    if (k < 1) throw std::invalid_argument("iterate_path: k must be >= 1");
    if (std::abs(path.times.front()) > 0)
        throw std::invalid_argument("iterate_path: path must start at t = 0");
    if (k == 1) return path;
    const double tau = path.times.back();
    const Mat end = path.samples.back();

    SymplecticPath out;
    out.dim = path.dim;
    out.tolerance = path.tolerance;
    Mat power = Mat::Identity(path.dim, path.dim);
    for (int j = 0; j < k; ++j) {
        std::size_t start = (j == 0) ? 0 : 1;  // skip the duplicated junction
        for (std::size_t i = start; i < path.times.size(); ++i) {
            out.times.push_back(j * tau + path.times[i]);
            out.samples.push_back(path.samples[i] * power);
        }
        power = end * power;
    }
    out.validate();
    return out;
}

bool endpoint_nondegenerate(const SymplecticPath& path, double threshold) {
    Mat gap = Mat::Identity(path.dim, path.dim) - path.samples.back();
    Eigen::JacobiSVD<Mat> svd(gap);
    return svd.singularValues().minCoeff() > threshold;
}

}  // namespace reeb::maslov
