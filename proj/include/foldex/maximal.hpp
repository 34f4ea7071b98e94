#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <vector>

#include "foldex/geometry.hpp"
#include "foldex/minimal.hpp"

namespace foldex {

enum class Side { left, right };
enum class SideMode { left, right, automatic };
enum class NormalWeighting { length, equal };

const char* to_string(Side s) noexcept;
const char* to_string(SideMode s) noexcept;
const char* to_string(NormalWeighting w) noexcept;

/// Offsets grow into the opening of folds: left-chirality folds open to the
/// right of the direction of travel and vice versa.
Side offset_side_for(Chirality c) noexcept;

// Vertex-wise offset of a base polyline; vertex k is base vertex k moved by
// delta along the averaged normal at k.
struct OffsetPolyline {
    std::vector<Point2> vertices;
    double delta = 0.0;
    Side side = Side::left;

    friend bool operator==(const OffsetPolyline&, const OffsetPolyline&) = default;
};

// Crossing of two non-adjacent offset segments (seg_j >= seg_i + 2).
struct SelfIntersection {
    std::size_t seg_i = 0;
    std::size_t seg_j = 0;
    double u_i = 0.0;
    double u_j = 0.0;
    Point2 point;

    friend bool operator==(const SelfIntersection&, const SelfIntersection&) = default;
};

struct MaximalParams {
    double delta = 1.0;
    SideMode side = SideMode::automatic;
    double rho = 3.0;
    double chord_slack = 0.05;
    NormalWeighting weighting = NormalWeighting::length;

    void validate() const;
    double chord_limit() const { return 2.0 * delta * (1.0 + chord_slack); }

    friend bool operator==(const MaximalParams&, const MaximalParams&) = default;
};

std::vector<Point2> vertex_normals(const Polyline& p, Side side,
                                   NormalWeighting weighting = NormalWeighting::length);

OffsetPolyline offset_polyline(const Polyline& p, double delta, Side side,
                               NormalWeighting weighting = NormalWeighting::length);

/// Crossings between non-adjacent segments of an open chain, found through a
/// uniform grid broad phase. Sorted by (seg_i, u_i). Segments are treated as
/// half-open [start, end) except the last, so a crossing through a shared
/// vertex is reported once.
std::vector<SelfIntersection> self_intersections(std::span<const Point2> chain);

inline std::vector<SelfIntersection> self_intersections(const OffsetPolyline& op) {
    return self_intersections(op.vertices);
}

/// Exact pairwise test used by the broad phase; exposed for reuse.
std::optional<SelfIntersection> intersect_segments(std::span<const Point2> chain, std::size_t i,
                                                   std::size_t j);

/// Maps an offset-line crossing to arc-length positions on the base polyline.
Interval back_project(const Polyline& base, const SelfIntersection& x);

std::vector<Interval> select_maximal(std::span<const Interval> intervals, const Polyline& p,
                                     const MaximalParams& params);

struct MaximalAnalysis {
    Side side = Side::left;
    OffsetPolyline offset;
    std::vector<SelfIntersection> intersections;
    std::vector<Interval> candidates;
    std::vector<Interval> intervals;
};

MaximalAnalysis analyze_maximal(const Polyline& p, const MaximalParams& params, Side side);

/// Full maximal-subset pass. SideMode::automatic runs the minimal pass with
/// `for_chirality` to decide the offset side.
std::vector<Interval> maximal_subsets(const Polyline& p, const MaximalParams& params,
                                      const MinimalParams& for_chirality = {});

}  // namespace foldex
