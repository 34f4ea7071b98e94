#include "foldex/folds.hpp"

#include <algorithm>
#include <cmath>

namespace foldex {

const char* to_string(ContainmentMode m) noexcept { return m == ContainmentMode::overlap ? "overlap" : "strict"; }

void DetectionParams::validate() const {
    minimal.validate();
    maximal.validate();
}

bool supports(const Interval& maximal, const Interval& minimal, ContainmentMode mode) {
    if (mode == ContainmentMode::strict) return minimal.t_a >= maximal.t_a && minimal.t_b <= maximal.t_b;
    return overlap_length(maximal, minimal) > 0.0;
}

FoldMetrics fold_metrics(const Polyline& p, const Interval& fold_interval) {
    const Polyline sub = p.subchain(fold_interval);
    const auto& v = sub.vertices();
    const Point2 a = v.front();
    const Point2 b = v.back();
    const Point2 chord = b - a;
    const double width = norm(chord);

    FoldMetrics m;
    m.width = width;
    if (width <= 1e-12 * sub.length()) {
        const Point2 mid = 0.5 * (a + b);
        for (const Point2& q : v) m.depth = std::max(m.depth, distance(mid, q));
        return m;
    }

    // Shoelace area of the loop closed by the chord picks the enclosed side.
    double area2 = 0.0;
    for (std::size_t k = 0; k < v.size(); ++k) area2 += cross(v[k], v[(k + 1) % v.size()]);
    const double side = area2 >= 0.0 ? -1.0 : 1.0;

    for (const Point2& q : v) {
        const double signed_dist = cross(chord, q - a) / width;
        m.depth = std::max(m.depth, side * signed_dist);
    }
    return m;
}

FoldReport detect_folds(const Polyline& p, const DetectionParams& params) {
    params.validate();
    MinimalAnalysis minimal = analyze_minimal(p, params.minimal);

    Side side = Side::left;
    switch (params.maximal.side) {
        case SideMode::left: side = Side::left; break;
        case SideMode::right: side = Side::right; break;
        case SideMode::automatic: side = offset_side_for(minimal.chirality.direction); break;
    }
    MaximalAnalysis maximal = analyze_maximal(p, params.maximal, side);

    FoldReport r(params, p);
    for (const Interval& mx : maximal.intervals) {
        std::vector<Interval> children;
        for (const Interval& mn : minimal.intervals)
            if (supports(mx, mn, params.mode)) children.push_back(mn);
        if (children.empty()) continue;

        Fold f;
        f.label = r.folds.size() + 1;
        f.interval = {mx.t_a, mx.t_b, IntervalKind::fold};
        f.minimal_children = std::move(children);
        const FoldMetrics fm = fold_metrics(p, f.interval);
        f.width = fm.width;
        f.depth = fm.depth;
        f.arc_length = f.interval.length();
        r.folds.push_back(std::move(f));
    }

    r.minimal_subsets = std::move(minimal.intervals);
    r.maximal_subsets = std::move(maximal.intervals);
    r.raw_orientation = std::move(minimal.raw);
    r.smoothed_orientation = std::move(minimal.smoothed);
    r.cutoff = minimal.cutoff;
    r.extrema = std::move(minimal.extrema);
    r.chirality = minimal.chirality;
    r.side = side;
    r.offset = std::move(maximal.offset);
    return r;
}

namespace {

double median(std::vector<double> v) {
    const auto mid = v.begin() + static_cast<std::ptrdiff_t>(v.size() / 2);
    std::nth_element(v.begin(), mid, v.end());
    if (v.size() % 2) return *mid;
    return 0.5 * (*mid + *std::max_element(v.begin(), mid));
}

}  // namespace

double estimate_delta(const Polyline& p, const DetectionParams& params) {
    params.minimal.validate();
    const MinimalAnalysis minimal = analyze_minimal(p, params.minimal);
    std::vector<double> chords;
    for (const Interval& iv : minimal.intervals) {
        const double c = p.chord_distance(iv);
        if (c > 0.0) chords.push_back(c);
    }
    if (chords.empty()) return p.length() / 20.0;
    const double seed = median(std::move(chords));

    MaximalParams pilot = params.maximal;
    pilot.delta = seed;
    Side side = params.maximal.side == SideMode::left    ? Side::left
                : params.maximal.side == SideMode::right ? Side::right
                                                         : offset_side_for(minimal.chirality.direction);
    const MaximalAnalysis maximal = analyze_maximal(p, pilot, side);
    chords.clear();
    for (const Interval& iv : maximal.intervals) {
        const double c = p.chord_distance(iv);
        if (c > 0.0) chords.push_back(c);
    }
    return chords.empty() ? seed : median(std::move(chords));
}

}  // namespace foldex
