#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <span>
#include <vector>

namespace foldex {

struct Point2 {
    double x = 0.0;
    double y = 0.0;

    friend Point2 operator+(Point2 a, Point2 b) { return {a.x + b.x, a.y + b.y}; }
    friend Point2 operator-(Point2 a, Point2 b) { return {a.x - b.x, a.y - b.y}; }
    friend Point2 operator*(double s, Point2 a) { return {s * a.x, s * a.y}; }
    friend Point2 operator*(Point2 a, double s) { return {s * a.x, s * a.y}; }
    friend bool operator==(Point2 a, Point2 b) = default;
};

inline double dot(Point2 a, Point2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Point2 a, Point2 b) { return a.x * b.y - a.y * b.x; }
inline double norm(Point2 a) { return std::hypot(a.x, a.y); }
inline double distance(Point2 a, Point2 b) { return norm(b - a); }

enum class IntervalKind { minimal, maximal, fold };

const char* to_string(IntervalKind kind) noexcept;

// Closed arc-length range [t_a, t_b] on a polyline.
struct Interval {
    double t_a = 0.0;
    double t_b = 0.0;
    IntervalKind kind = IntervalKind::minimal;

    double length() const { return t_b - t_a; }
    friend bool operator==(const Interval&, const Interval&) = default;
};

// Positive-length overlap of two intervals (0 when disjoint or touching).
double overlap_length(const Interval& a, const Interval& b);

struct Location {
    std::size_t segment = 0;
    double fraction = 0.0;
};

/// Open polygonal chain parameterized by arc length.
///
/// Immutable after construction. Consecutive vertices are guaranteed to be
/// further apart than the cleaning epsilon, so every segment has a
/// well-defined direction.
class Polyline {
public:
    /// Collapses consecutive points whose distance is <= eps_geom and caches
    /// segment vectors and cumulative arc lengths. Throws DegenerateInput
    /// when fewer than two distinct points remain or a coordinate is not
    /// finite.
    static Polyline build(std::span<const Point2> points, double eps_geom);

    /// Same as above with eps_geom = 1e-9 times the raw input length.
    static Polyline build(std::span<const Point2> points);

    const std::vector<Point2>& vertices() const { return vertices_; }
    const std::vector<Point2>& segments() const { return segments_; }
    const std::vector<double>& cum_lengths() const { return cum_lengths_; }

    std::size_t vertex_count() const { return vertices_.size(); }
    std::size_t segment_count() const { return segments_.size(); }
    double length() const { return cum_lengths_.back(); }
    double segment_length(std::size_t i) const { return cum_lengths_[i + 1] - cum_lengths_[i]; }

    /// Piece lookup by binary search. t = L maps to (n-1, 1).
    Location locate(double t) const;

    /// Arc-length evaluation; t = L returns the final vertex exactly.
    Point2 point_at(double t) const;

    /// Subchain from point_at(t_a) to point_at(t_b) including all interior vertices.
    Polyline subchain(const Interval& iv) const;

    double chord_distance(const Interval& iv) const;

    /// Throws OutOfRange unless 0 <= t_a < t_b <= L.
    void check_interval(const Interval& iv) const;

    // Cached segments and lengths are functions of the vertices.
    friend bool operator==(const Polyline& a, const Polyline& b) { return a.vertices_ == b.vertices_; }

private:
    Polyline() = default;

    std::vector<Point2> vertices_;
    std::vector<Point2> segments_;
    std::vector<double> cum_lengths_;
};

inline Polyline build_polyline(std::span<const Point2> points, double eps_geom) {
    return Polyline::build(points, eps_geom);
}

}  // namespace foldex
