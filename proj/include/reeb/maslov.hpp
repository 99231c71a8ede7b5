#pragma once

#include <Eigen/Dense>

#include <string>
#include <vector>

namespace reeb::maslov {

using Mat = Eigen::MatrixXd;
using Vec = Eigen::VectorXd;

// Half-integer index values, stored as twice the value.
struct HalfInt {
    long long twice = 0;
    double value() const { return 0.5 * double(twice); }
    bool is_integer() const { return twice % 2 == 0; }
    std::string str() const;
    bool operator==(const HalfInt& o) const { return twice == o.twice; }
};

// Standard complex structure on R^{2m} in (q, p) block order; the symplectic
// form is omega(v, w) = <J v, w>, which matches omega = dp ^ dq and the sign
// convention omega(X_H, .) = -dH.
Mat standard_J(int two_m);

// Structure matrix of (-omega) (+) omega on R^{2m} (+) R^{2m}; graphs of
// symplectic maps are Lagrangian for this form.
Mat graph_J(int two_m);

struct LagrangianFrame {
    int dim = 0;   // ambient dimension 2m
    Mat frame;     // dim x (dim/2), full column rank
};

// Checks rank and isotropy of the frame against the structure J.
LagrangianFrame make_frame(const Mat& structure, const Mat& frame, double tolerance = 1e-9);

LagrangianFrame horizontal_frame(int two_m);  // R^m x {0}
LagrangianFrame vertical_frame(int two_m);    // {0} x R^m
LagrangianFrame diagonal_frame(int two_m);    // diagonal in the doubled space

// Sampled path of Lagrangian subspaces of (R^dim, omega_J). Frames between
// samples are linearly interpolated, so sampling must resolve all crossings.
struct LagrangianPath {
    int dim = 0;
    Mat structure;                 // the J matrix of the ambient form
    std::vector<double> times;     // strictly increasing, times.front() == 0
    std::vector<Mat> frames;       // dim x (dim/2) each
    double tolerance = 1e-6;

    void validate() const;
    Mat frame_at(double t) const;
    double t0() const { return times.front(); }
    double t1() const { return times.back(); }
};

// Sampled path in Sp(2m). Each sample must satisfy Psi^T J Psi = J within
// tolerance; paths representing elements of the Conley-Zehnder domain start
// at the identity.
struct SymplecticPath {
    int dim = 0;  // 2m
    std::vector<double> times;
    std::vector<Mat> samples;
    double tolerance = 1e-6;

    void validate() const;
    Mat at(double t) const;
};

SymplecticPath make_symplectic_path(int dim, std::vector<double> times, std::vector<Mat> samples,
                                    double tolerance = 1e-6);

// dim(L1 cap L2) via the singular values of the stacked orthonormal frames.
// Singular values inside the ambiguity band around the threshold raise an
// error asking for finer tolerance.
int intersection_dim(const LagrangianFrame& a, const LagrangianFrame& b, double threshold = 1e-8);

struct CrossingForm {
    Mat basis;  // dim x k, orthonormal basis of Lambda(t0) cap V
    Mat form;   // k x k symmetric matrix of the crossing form on that basis
};

// Crossing form Q restricted to Lambda(t0) cap V, computed with finite
// differences of the W-component w(t) for the complement W = J Lambda(t0).
CrossingForm crossing_form(const LagrangianPath& path, const LagrangianFrame& v, double t0,
                           const Mat* complement_frame = nullptr);

struct CrossingRecord {
    double t = 0;
    int kernel_dim = 0;
    int signature = 0;
    enum class Boundary { Start, Interior, End } boundary = Boundary::Interior;
};

struct IndexResult {
    HalfInt index;
    std::vector<CrossingRecord> crossings;
};

// Robbin-Salamon index: half signatures at the endpoints, full signatures at
// interior crossings. Singular crossing forms at isolated crossings raise an
// error (no silent perturbation); intervals of constant intersection with an
// identically vanishing form contribute zero.
IndexResult rs_index(const LagrangianPath& path, const LagrangianFrame& v);

// Conley-Zehnder index of a symplectic path as the Robbin-Salamon index of
// its graph against the diagonal. Integer exactly when det(I - Psi(tau)) != 0.
IndexResult cz_index(const SymplecticPath& path);

// Winding (alpha(tau) - alpha(0)) / pi of the determinant of the unitary
// polar factor. Consecutive samples must stay within pi/2 of each other.
double delta_winding(const SymplecticPath& path);

// k-fold iteration Psi(j tau + t) = Psi(t) Psi(tau)^j on [0, k tau].
SymplecticPath iterate_path(const SymplecticPath& path, int k);

LagrangianPath graph_lagrangian_path(const SymplecticPath& path);

// True when det(I - Psi(tau)) is nonzero beyond numerical doubt.
bool endpoint_nondegenerate(const SymplecticPath& path, double threshold = 1e-8);

}  // namespace reeb::maslov
