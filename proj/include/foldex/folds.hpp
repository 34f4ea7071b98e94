#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "foldex/geometry.hpp"
#include "foldex/maximal.hpp"
#include "foldex/minimal.hpp"
#include "foldex/orientation.hpp"

namespace foldex {

enum class ContainmentMode { overlap, strict };

const char* to_string(ContainmentMode m) noexcept;

struct DetectionParams {
    MinimalParams minimal;
    MaximalParams maximal;
    ContainmentMode mode = ContainmentMode::overlap;

    void validate() const;

    friend bool operator==(const DetectionParams&, const DetectionParams&) = default;
};

struct Fold {
    std::size_t label = 0;  // 1-based, arc-length order
    Interval interval;      // kind == fold; same range as its maximal subset
    std::vector<Interval> minimal_children;
    double width = 0.0;
    double depth = 0.0;
    double arc_length = 0.0;

    friend bool operator==(const Fold&, const Fold&) = default;
};

struct FoldMetrics {
    double width = 0.0;
    double depth = 0.0;
};

/// Everything one detection pass computed, in the form the tuning views draw.
struct FoldReport {
    FoldReport(DetectionParams params_, Polyline polyline_)
        : params(std::move(params_)), polyline(std::move(polyline_)) {}

    DetectionParams params;
    Polyline polyline;
    std::vector<Fold> folds;
    std::vector<Interval> minimal_subsets;
    std::vector<Interval> maximal_subsets;
    SampledSignal raw_orientation;
    SampledSignal smoothed_orientation;
    std::size_t cutoff = 0;
    std::vector<Extremum> extrema;
    ChiralityEstimate chirality;
    Side side = Side::left;
    OffsetPolyline offset;

    friend bool operator==(const FoldReport&, const FoldReport&) = default;
};

/// width: chord between the fold's endpoints. depth: largest perpendicular
/// distance from that chord to a subchain vertex, on the side the subchain
/// encloses (signed shoelace area of the chord-closed loop). For a vanishing
/// chord, depth falls back to the largest distance from the chord midpoint.
FoldMetrics fold_metrics(const Polyline& p, const Interval& fold_interval);

/// True when `minimal` qualifies `maximal` as a fold under the given mode.
bool supports(const Interval& maximal, const Interval& minimal, ContainmentMode mode);

FoldReport detect_folds(const Polyline& p, const DetectionParams& params);

/// Data-driven delta from a pilot pass. The median chord of the minimal
/// subsets seeds a maximal pass; the median chord of the maximal subsets it
/// finds is the estimate (the seed itself if none survive). Without minimal
/// subsets no delta can yield a fold, and the estimate falls back to L / 20.
double estimate_delta(const Polyline& p, const DetectionParams& params);

}  // namespace foldex
