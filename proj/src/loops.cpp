#include "reeb/loops.hpp"

#include <cmath>
#include <stdexcept>

namespace reeb::loops {

namespace {

double norm(const VecD& v) {
    double s = 0;
    for (double c : v) s += c * c;
    return std::sqrt(s);
}

bool wraps_coordinate(DiscreteLoop::Metric m, std::size_t coord, std::size_t dim) {
    switch (m) {
        case DiscreteLoop::Metric::Euclidean: return false;
        case DiscreteLoop::Metric::Torus: return true;
        case DiscreteLoop::Metric::EuclideanCircle: return coord + 1 == dim;
    }
    return false;
}

}  // namespace

void DiscreteLoop::validate() const {
    if (points.size() < 3) throw std::invalid_argument("loop needs at least 3 points");
    for (const auto& p : points)
        if (int(p.size()) != ambient_dim())
            throw std::invalid_argument("loop points have inconsistent dimensions");
}

VecD DiscreteLoop::segment(std::size_t i) const {
    const std::size_t n = points.size();
    const VecD& a = points[i % n];
    const VecD& b = points[(i + 1) % n];
    VecD d(a.size());
    for (std::size_t c = 0; c < a.size(); ++c) {
        d[c] = b[c] - a[c];
        if (wraps_coordinate(metric, c, a.size())) d[c] -= std::round(d[c]);
    }
    return d;
}

Measure measure(const DiscreteLoop& loop) {
    loop.validate();
    const std::size_t n = loop.size();
    double e = 0, l = 0;
    for (std::size_t i = 0; i < n; ++i) {
        double seg = norm(loop.segment(i));
        e += seg * seg;
        l += seg;
    }
    return Measure{0.5 * double(n) * e, l};
}

VecD point_at_parameter(const DiscreteLoop& loop, double s) {
    const std::size_t n = loop.size();
    s -= std::floor(s);
    double scaled = s * double(n);
    std::size_t i = std::size_t(scaled);
    if (i >= n) i = n - 1;
    double frac = scaled - double(i);
    VecD seg = loop.segment(i);
    VecD out = loop.points[i];
    for (std::size_t c = 0; c < out.size(); ++c) {
        out[c] += frac * seg[c];
        if (wraps_coordinate(loop.metric, c, out.size())) out[c] -= std::floor(out[c]);
    }
    return out;
}

DiscreteLoop arclength_reparametrize(const DiscreteLoop& loop) {
    loop.validate();
    const std::size_t n = loop.size();
    std::vector<double> cumulative(n + 1, 0.0);
    for (std::size_t i = 0; i < n; ++i) cumulative[i + 1] = cumulative[i] + norm(loop.segment(i));
    const double total = cumulative[n];
    if (!(total > 0)) throw std::invalid_argument("arclength_reparametrize: zero-length loop");

    DiscreteLoop out;
    out.metric = loop.metric;
    out.points.reserve(n);
    std::size_t seg_idx = 0;
    for (std::size_t k = 0; k < n; ++k) {
        double target = total * double(k) / double(n);
        while (seg_idx + 1 < n && cumulative[seg_idx + 1] <= target) ++seg_idx;
        double seg_len = cumulative[seg_idx + 1] - cumulative[seg_idx];
        double frac = seg_len > 0 ? (target - cumulative[seg_idx]) / seg_len : 0.0;
        VecD seg = loop.segment(seg_idx);
        VecD p = loop.points[seg_idx];
        for (std::size_t c = 0; c < p.size(); ++c) {
            p[c] += frac * seg[c];
            if (wraps_coordinate(loop.metric, c, p.size())) p[c] -= std::floor(p[c]);
        }
        out.points.push_back(p);
    }
    return out;
}

DiscreteLoop lift_to_product_circle(const DiscreteLoop& loop) {
    loop.validate();
    DiscreteLoop out;
    out.metric = (loop.metric == DiscreteLoop::Metric::Torus) ? DiscreteLoop::Metric::Torus
                                                              : DiscreteLoop::Metric::EuclideanCircle;
    const std::size_t n = loop.size();
    out.points.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        VecD p = loop.points[i];
        p.push_back(double(i) / double(n));  // the parameter circle coordinate
        out.points.push_back(p);
    }
    return out;
}

DiscreteLoop concat_eps(const DiscreteLoop& g1, const DiscreteLoop& g2, double eps,
                        std::size_t n_out) {
    g1.validate();
    g2.validate();
    if (!(eps > 0.0) || !(eps < 1.0)) throw std::invalid_argument("concat_eps: eps must lie in (0,1)");
    if (g1.ambient_dim() != g2.ambient_dim())
        throw std::invalid_argument("concat_eps: ambient dimensions differ");
    if (g1.metric != g2.metric) throw std::invalid_argument("concat_eps: metrics differ");
    if (n_out == 0) n_out = std::max(std::max(g1.size(), g2.size()), std::size_t(3));

    // Translate g1 so the traversal is continuous: h g1(0) = g2(0).
    VecD shift(g1.points[0].size());
    for (std::size_t c = 0; c < shift.size(); ++c) shift[c] = g2.points[0][c] - g1.points[0][c];

    DiscreteLoop out;
    out.metric = g1.metric;
    out.points.reserve(n_out);
    for (std::size_t k = 0; k < n_out; ++k) {
        double t = double(k) / double(n_out);
        VecD p;
        if (t < eps) {
            p = point_at_parameter(g1, t / eps);
            for (std::size_t c = 0; c < p.size(); ++c) {
                p[c] += shift[c];
                if (wraps_coordinate(out.metric, c, p.size())) p[c] -= std::floor(p[c]);
            }
        } else {
            p = point_at_parameter(g2, (t - eps) / (1.0 - eps));
        }
        out.points.push_back(p);
    }
    return out;
}

}  // namespace reeb::loops
