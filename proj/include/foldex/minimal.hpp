#pragma once

#include <cstddef>
#include <numbers>
#include <span>
#include <vector>

#include "foldex/geometry.hpp"
#include "foldex/orientation.hpp"

namespace foldex {

enum class ExtremumKind { max, min };

struct Extremum {
    double t = 0.0;
    double value = 0.0;
    ExtremumKind kind = ExtremumKind::max;

    friend bool operator==(const Extremum&, const Extremum&) = default;
};

enum class Chirality { left, right };

const char* to_string(ExtremumKind kind) noexcept;
const char* to_string(Chirality c) noexcept;

struct ChiralityEstimate {
    Chirality direction = Chirality::right;
    bool low_confidence = true;
    std::size_t left_pairs = 0;   // qualifying max -> min pairs
    std::size_t right_pairs = 0;  // qualifying min -> max pairs
    double left_amplitude = 0.0;  // summed |delta| of the qualifying pairs
    double right_amplitude = 0.0;

    friend bool operator==(const ChiralityEstimate&, const ChiralityEstimate&) = default;
};

struct MinimalParams {
    double tau = 2.0 * std::numbers::pi / 3.0;
    double smoothing = 0.05;      // factor in (0, 1]
    std::size_t samples = 0;      // 0 selects default_sample_count()
    double eps_flat = 1e-6;
    // Vote threshold for chirality. Kept apart from tau so that the chain's
    // chirality does not change while tau is tuned.
    double chirality_tau = 2.0 * std::numbers::pi / 3.0;

    void validate() const;
    std::size_t sample_count_for(const Polyline& p) const;

    friend bool operator==(const MinimalParams&, const MinimalParams&) = default;
};

/// Interior extrema of a sampled signal. Runs of samples whose neighbour
/// differences are within eps_flat count as one plateau located at its
/// arc-length midpoint. Endpoint runs are never extrema.
std::vector<Extremum> find_local_extrema(const SampledSignal& s, double eps_flat);

/// Majority vote over adjacent pairs whose value difference exceeds tau.
/// max->min votes left, min->max votes right. A tied count is flagged
/// low-confidence and decided by the larger summed amplitude, then right.
ChiralityEstimate detect_chirality(std::span<const Extremum> extrema, double tau);

/// Greedy left-to-right pairing of adjacent extrema in the chirality's order.
std::vector<Interval> pair_extrema(std::span<const Extremum> extrema, Chirality chirality, double tau);

// Every intermediate of the minimal-subset pass, kept for reporting.
struct MinimalAnalysis {
    SampledSignal raw;
    SampledSignal smoothed;
    std::size_t cutoff = 0;
    std::vector<Extremum> extrema;
    ChiralityEstimate chirality;
    std::vector<Interval> intervals;
};

MinimalAnalysis analyze_minimal(const Polyline& p, const MinimalParams& params);

std::vector<Interval> minimal_subsets(const Polyline& p, const MinimalParams& params);

}  // namespace foldex
