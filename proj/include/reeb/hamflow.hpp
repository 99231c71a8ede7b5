#pragma once

#include <functional>
#include <string>
#include <vector>

namespace reeb::hamflow {

using VecD = std::vector<double>;

struct PhaseSpace {
    enum class Kind { Euclidean, TorusCotangent };
    Kind kind = Kind::Euclidean;
    int dof = 1;  // dimension of the base; phase space is 2*dof dimensional

    // Torus base coordinates live in [0, 1).
    void wrap(VecD& q) const;
    // Distance in configuration space, respecting wrapping.
    double config_distance(const VecD& a, const VecD& b) const;
};

struct State {
    VecD q, p;
};

// Hamiltonian with either an analytic gradient or central finite differences
// with step 1e-6 (1 + |x|).
class HamiltonianField {
  public:
    using Fn = std::function<double(double t, const VecD& q, const VecD& p)>;
    using GradFn = std::function<void(double t, const VecD& q, const VecD& p, VecD& dq, VecD& dp)>;

    HamiltonianField(PhaseSpace space, Fn h) : space_(space), h_(std::move(h)) {}
    HamiltonianField(PhaseSpace space, Fn h, GradFn grad)
        : space_(space), h_(std::move(h)), grad_(std::move(grad)) {}

    const PhaseSpace& space() const { return space_; }
    double value(double t, const State& x) const { return h_(t, x.q, x.p); }
    void gradient(double t, const State& x, VecD& dq, VecD& dp) const;

    // (q', p') = (dH/dp, -dH/dq); the sign convention omega(X_H, .) = -dH.
    State vector_field(double t, const State& x) const;

    int homogeneity_degree = 0;  // 2 for fiberwise homogeneous kinetic terms

  private:
    PhaseSpace space_;
    Fn h_;
    GradFn grad_;
};

// |dF(x)(Y) - 2 F(x)| with the Liouville field Y = sum_i p_i d/dp_i.
double euler_identity_residual(const HamiltonianField& f, const State& x, double t = 0.0);

struct Orbit {
    PhaseSpace space;
    std::vector<double> t;
    std::vector<State> x;
    double period = 0;
    double dt = 0;
    std::string method = "rk4";
    double energy_drift = 0;  // autonomous H only

    double closure_defect() const;
};

// Classical fixed-step RK4. Torus coordinates are wrapped after each step.
Orbit integrate_flow(const HamiltonianField& f, const State& x0, double T, double dt,
                     std::size_t step_cap = 10'000'000);

// Independent orbits integrated in parallel (REEB_GROWTH_THREADS caps the
// pool); results are ordered like the inputs.
std::vector<Orbit> integrate_batch(const HamiltonianField& f, const std::vector<State>& starts,
                                   double T, double dt);

// Trapezoid quadrature of sum_i p_i q'_i - H over the orbit, with q' taken
// from the vector field. The orbit must close up within closure_tol.
double action(const HamiltonianField& f, const Orbit& orbit, double closure_tol = 1e-6);

// (q, p) -> (q, s p) with time rescaled so the result again solves x' = X_F;
// a 1-periodic orbit with action a lands on {F = 1} with period sqrt(a) under
// s = 1/sqrt(a).
Orbit rescale_orbit(const Orbit& orbit, double s);

// Residual max_t |x'(t) - X_F(x(t))| estimated by central differences; used
// to certify that a (rescaled) orbit still solves the flow equation.
double flow_residual(const HamiltonianField& f, const Orbit& orbit);

// Smoothing cut-off: f = 0 below eps^2, f = r above eps, C^1 monotone cubic
// Hermite blend between, with 0 <= f' <= 2 everywhere and f' > 0 past eps^2.
struct CutoffF {
    double eps;
    double operator()(double r) const;
    double derivative(double r) const;
};
CutoffF cutoff_f(double eps);

// Lagrangian side of H = beta |p|^2 / 2 + W(t, q).
struct QuadraticLagrangian {
    double beta;
    std::function<double(double t, const VecD& q)> potential;  // W
    double operator()(double t, const VecD& q, const VecD& v) const;
};
QuadraticLagrangian legendre_quadratic(double beta,
                                       std::function<double(double t, const VecD& q)> potential);

// Lagrangian action E_L(q) = int L(t, q, q') dt along a Hamiltonian orbit of
// H = beta |p|^2/2 + W, using v = dH/dp = beta p.
double lagrangian_action(const QuadraticLagrangian& lagrangian, const Orbit& orbit, double beta);

// | int (p q' - h(F) - W) - int (2 h'(F) F - h(F) - W) | on a closed orbit of
// X_{h o F + W}, the action identity for fiberwise 2-homogeneous F.
double action_formula_residual(const std::function<double(double)>& h,
                               const std::function<double(double)>& h_prime,
                               const HamiltonianField& homogeneous_f,
                               const std::function<double(double, const VecD&)>& potential,
                               const Orbit& orbit);

}  // namespace reeb::hamflow
