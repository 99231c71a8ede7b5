#pragma once

#include <vector>

namespace reeb::loops {

using VecD = std::vector<double>;

// Closed polyline sampled at N >= 3 points on a uniform parameter grid;
// point N wraps to point 0. Torus coordinates live in [0,1) with wrap-aware
// segment vectors; EuclideanCircle wraps only the last coordinate (the
// parameter circle appended by the product lift).
struct DiscreteLoop {
    enum class Metric { Euclidean, Torus, EuclideanCircle };
    Metric metric = Metric::Euclidean;
    std::vector<VecD> points;

    std::size_t size() const { return points.size(); }
    int ambient_dim() const { return points.empty() ? 0 : int(points[0].size()); }
    void validate() const;
    // Segment vector from point i to point i+1 (mod N), wrap-aware.
    VecD segment(std::size_t i) const;
};

struct Measure {
    double energy = 0;
    double length = 0;
};

// E = N/2 sum |dq_i|^2, L = sum |dq_i| on the uniform grid.
Measure measure(const DiscreteLoop& loop);

// Same image polyline, resampled at equal arc-length increments; afterwards
// E = L^2/2 up to resampling error. N is preserved.
DiscreteLoop arclength_reparametrize(const DiscreteLoop& loop);

// Appends the unit-speed parameter circle as an extra wrapped coordinate.
DiscreteLoop lift_to_product_circle(const DiscreteLoop& loop);

// (g1 *_eps g2): g1 (translated so endpoints match) traversed on [0, eps],
// g2 on [eps, 1]. Sample count of the result is n_out (default: max of the
// inputs, at least 3).
DiscreteLoop concat_eps(const DiscreteLoop& g1, const DiscreteLoop& g2, double eps,
                        std::size_t n_out = 0);

// Point at parameter s in [0,1) by linear interpolation along the polyline
// in parameter (not arc-length), wrap-aware.
VecD point_at_parameter(const DiscreteLoop& loop, double s);

}  // namespace reeb::loops
