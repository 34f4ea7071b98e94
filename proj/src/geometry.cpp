#include "foldex/geometry.hpp"

#include <algorithm>
#include <string>

#include "foldex/error.hpp"

namespace foldex {

const char* to_string(ErrorKind kind) noexcept {
    switch (kind) {
        case ErrorKind::DegenerateInput: return "DegenerateInput";
        case ErrorKind::OutOfRange: return "OutOfRange";
        case ErrorKind::BadParam: return "BadParam";
        case ErrorKind::Parse: return "Parse";
    }
    return "Unknown";
}

const char* to_string(IntervalKind kind) noexcept {
    switch (kind) {
        case IntervalKind::minimal: return "minimal";
        case IntervalKind::maximal: return "maximal";
        case IntervalKind::fold: return "fold";
    }
    return "unknown";
}

double overlap_length(const Interval& a, const Interval& b) {
    return std::max(0.0, std::min(a.t_b, b.t_b) - std::max(a.t_a, b.t_a));
}

Polyline Polyline::build(std::span<const Point2> points) {
    double raw = 0.0;
    for (std::size_t i = 1; i < points.size(); ++i) raw += distance(points[i - 1], points[i]);
    return build(points, std::isfinite(raw) ? 1e-9 * raw : 0.0);
}

Polyline Polyline::build(std::span<const Point2> points, double eps_geom) {
    if (!(eps_geom >= 0.0) || !std::isfinite(eps_geom))
        throw Error(ErrorKind::BadParam, "eps_geom must be finite and non-negative");

    Polyline p;
    p.vertices_.reserve(points.size());
    for (const Point2& q : points) {
        if (!std::isfinite(q.x) || !std::isfinite(q.y))
            throw Error(ErrorKind::DegenerateInput, "polyline contains a non-finite coordinate");
        if (!p.vertices_.empty() && distance(p.vertices_.back(), q) <= eps_geom) continue;
        p.vertices_.push_back(q);
    }
    if (p.vertices_.size() < 2)
        throw Error(ErrorKind::DegenerateInput,
                    "polyline needs at least 2 distinct points, got " +
                        std::to_string(p.vertices_.size()));

    const std::size_t n = p.vertices_.size() - 1;
    p.segments_.reserve(n);
    p.cum_lengths_.reserve(n + 1);
    p.cum_lengths_.push_back(0.0);
    for (std::size_t i = 0; i < n; ++i) {
        const Point2 s = p.vertices_[i + 1] - p.vertices_[i];
        p.segments_.push_back(s);
        p.cum_lengths_.push_back(p.cum_lengths_.back() + norm(s));
    }
    return p;
}

void Polyline::check_interval(const Interval& iv) const {
    if (!(iv.t_a >= 0.0 && iv.t_a < iv.t_b && iv.t_b <= length()))
        throw Error(ErrorKind::OutOfRange, "interval [" + std::to_string(iv.t_a) + ", " +
                                               std::to_string(iv.t_b) + "] not valid on [0, " +
                                               std::to_string(length()) + "]");
}

Location Polyline::locate(double t) const {
    if (!(t >= 0.0 && t <= length()))
        throw Error(ErrorKind::OutOfRange, "arc length " + std::to_string(t) + " outside [0, " +
                                               std::to_string(length()) + "]");
    const std::size_t n = segments_.size();
    if (t == length()) return {n - 1, 1.0};
    auto it = std::upper_bound(cum_lengths_.begin(), cum_lengths_.end(), t);
    const auto i = std::min<std::size_t>(static_cast<std::size_t>(it - cum_lengths_.begin()) - 1, n - 1);
    const double u = (t - cum_lengths_[i]) / segment_length(i);
    return {i, std::clamp(u, 0.0, 1.0)};
}

Point2 Polyline::point_at(double t) const {
    const Location loc = locate(t);
    if (t == length()) return vertices_.back();
    const std::size_t i = loc.segment;
    return vertices_[i] + ((t - cum_lengths_[i]) / segment_length(i)) * segments_[i];
}

Polyline Polyline::subchain(const Interval& iv) const {
    check_interval(iv);
    std::vector<Point2> pts;
    pts.push_back(point_at(iv.t_a));
    for (std::size_t i = 0; i < vertices_.size(); ++i) {
        if (cum_lengths_[i] > iv.t_a && cum_lengths_[i] < iv.t_b) pts.push_back(vertices_[i]);
    }
    pts.push_back(point_at(iv.t_b));
    return build(pts, 0.0);
}

double Polyline::chord_distance(const Interval& iv) const {
    check_interval(iv);
    return distance(point_at(iv.t_a), point_at(iv.t_b));
}

}  // namespace foldex
