#include "foldex/maximal.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "foldex/error.hpp"

namespace foldex {

const char* to_string(Side s) noexcept { return s == Side::left ? "left" : "right"; }

const char* to_string(SideMode s) noexcept {
    switch (s) {
        case SideMode::left: return "left";
        case SideMode::right: return "right";
        case SideMode::automatic: return "auto";
    }
    return "auto";
}

const char* to_string(NormalWeighting w) noexcept { return w == NormalWeighting::length ? "length" : "equal"; }

Side offset_side_for(Chirality c) noexcept { return c == Chirality::left ? Side::right : Side::left; }

void MaximalParams::validate() const {
    if (!(delta > 0.0) || !std::isfinite(delta))
        throw Error(ErrorKind::BadParam, "delta must be positive, got " + std::to_string(delta));
    if (!(rho >= 1.0) || !std::isfinite(rho))
        throw Error(ErrorKind::BadParam, "rho must be >= 1, got " + std::to_string(rho));
    if (!(chord_slack >= 0.0) || !std::isfinite(chord_slack))
        throw Error(ErrorKind::BadParam, "chord_slack must be >= 0, got " + std::to_string(chord_slack));
}

namespace {

Point2 segment_normal(Point2 s, Side side) {
    const double len = norm(s);
    return side == Side::left ? Point2{-s.y / len, s.x / len} : Point2{s.y / len, -s.x / len};
}

}  // namespace

std::vector<Point2> vertex_normals(const Polyline& p, Side side, NormalWeighting weighting) {
    const auto& segs = p.segments();
    const std::size_t n = segs.size();
    std::vector<Point2> normals(n + 1);
    normals.front() = segment_normal(segs.front(), side);
    normals.back() = segment_normal(segs.back(), side);
    for (std::size_t k = 1; k < n; ++k) {
        const double w0 = weighting == NormalWeighting::length ? p.segment_length(k - 1) : 1.0;
        const double w1 = weighting == NormalWeighting::length ? p.segment_length(k) : 1.0;
        const Point2 sum = w0 * segment_normal(segs[k - 1], side) + w1 * segment_normal(segs[k], side);
        const double len = norm(sum);
        if (len <= 1e-9 * (w0 + w1)) {
            // Full reversal: the two normals cancel, push out through the spike tip.
            normals[k] = (1.0 / p.segment_length(k - 1)) * segs[k - 1];
        } else {
            normals[k] = (1.0 / len) * sum;
        }
    }
    return normals;
}

OffsetPolyline offset_polyline(const Polyline& p, double delta, Side side, NormalWeighting weighting) {
    if (!(delta > 0.0) || !std::isfinite(delta))
        throw Error(ErrorKind::BadParam, "delta must be positive, got " + std::to_string(delta));
    const auto normals = vertex_normals(p, side, weighting);
    OffsetPolyline op;
    op.delta = delta;
    op.side = side;
    op.vertices.reserve(normals.size());
    for (std::size_t k = 0; k < normals.size(); ++k) op.vertices.push_back(p.vertices()[k] + delta * normals[k]);
    return op;
}

Interval back_project(const Polyline& base, const SelfIntersection& x) {
    const auto& l = base.cum_lengths();
    auto at = [&](std::size_t seg, double u) {
        return std::clamp(l[seg] + u * base.segment_length(seg), 0.0, base.length());
    };
    const double a = at(x.seg_i, x.u_i);
    const double b = at(x.seg_j, x.u_j);
    return {std::min(a, b), std::max(a, b), IntervalKind::maximal};
}

std::vector<Interval> select_maximal(std::span<const Interval> intervals, const Polyline& p,
                                     const MaximalParams& params) {
    params.validate();
    std::vector<Interval> sorted(intervals.begin(), intervals.end());
    std::sort(sorted.begin(), sorted.end(), [](const Interval& a, const Interval& b) {
        return a.t_a != b.t_a ? a.t_a < b.t_a : a.t_b < b.t_b;
    });

    const double limit = params.chord_limit();
    std::vector<Interval> out;
    std::size_t start = 0;
    while (start < sorted.size()) {
        // Transitive overlap cluster [start, end).
        double reach = sorted[start].t_b;
        std::size_t end = start + 1;
        while (end < sorted.size() && sorted[end].t_a <= reach) {
            reach = std::max(reach, sorted[end].t_b);
            ++end;
        }

        const Interval* best = nullptr;
        for (std::size_t k = start; k < end; ++k) {
            const Interval& iv = sorted[k];
            if (p.chord_distance(iv) > limit) continue;
            if (best == nullptr || iv.length() > best->length()) best = &iv;
        }
        if (best != nullptr && best->length() >= params.rho * p.chord_distance(*best))
            out.push_back({best->t_a, best->t_b, IntervalKind::maximal});
        start = end;
    }
    return out;
}

MaximalAnalysis analyze_maximal(const Polyline& p, const MaximalParams& params, Side side) {
    params.validate();
    MaximalAnalysis a;
    a.side = side;
    a.offset = offset_polyline(p, params.delta, side, params.weighting);
    a.intersections = self_intersections(a.offset);
    a.candidates.reserve(a.intersections.size());
    for (const SelfIntersection& x : a.intersections) {
        const Interval iv = back_project(p, x);
        if (iv.t_b > iv.t_a) a.candidates.push_back(iv);
    }
    a.intervals = select_maximal(a.candidates, p, params);
    return a;
}

std::vector<Interval> maximal_subsets(const Polyline& p, const MaximalParams& params,
                                      const MinimalParams& for_chirality) {
    params.validate();
    Side side = Side::left;
    switch (params.side) {
        case SideMode::left: side = Side::left; break;
        case SideMode::right: side = Side::right; break;
        case SideMode::automatic:
            side = offset_side_for(analyze_minimal(p, for_chirality).chirality.direction);
            break;
    }
    return analyze_maximal(p, params, side).intervals;
}

}  // namespace foldex
