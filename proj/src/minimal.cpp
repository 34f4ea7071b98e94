#include "foldex/minimal.hpp"

#include <cmath>
#include <string>

#include "foldex/error.hpp"

namespace foldex {

const char* to_string(ExtremumKind kind) noexcept { return kind == ExtremumKind::max ? "max" : "min"; }
const char* to_string(Chirality c) noexcept { return c == Chirality::left ? "left" : "right"; }

void MinimalParams::validate() const {
    if (!(tau > 0.0 && tau < 2.0 * std::numbers::pi))
        throw Error(ErrorKind::BadParam, "tau must lie in (0, 2pi), got " + std::to_string(tau));
    if (!(smoothing > 0.0 && smoothing <= 1.0))
        throw Error(ErrorKind::BadParam, "smoothing factor must lie in (0, 1], got " + std::to_string(smoothing));
    if (samples != 0 && samples < 8)
        throw Error(ErrorKind::BadParam, "samples must be >= 8, got " + std::to_string(samples));
    if (!(eps_flat >= 0.0) || !std::isfinite(eps_flat))
        throw Error(ErrorKind::BadParam, "eps_flat must be finite and non-negative");
    if (!(chirality_tau > 0.0 && chirality_tau < 2.0 * std::numbers::pi))
        throw Error(ErrorKind::BadParam, "chirality_tau must lie in (0, 2pi), got " + std::to_string(chirality_tau));
}

std::size_t MinimalParams::sample_count_for(const Polyline& p) const {
    return samples != 0 ? samples : default_sample_count(p.segment_count());
}

std::vector<Extremum> find_local_extrema(const SampledSignal& s, double eps_flat) {
    struct Run {
        std::size_t first, last;
        double lo, hi;
    };
    std::vector<Run> runs;
    const auto& v = s.values;
    for (std::size_t k = 0; k < v.size(); ++k) {
        if (!runs.empty() && std::abs(v[k] - v[k - 1]) <= eps_flat) {
            Run& r = runs.back();
            r.last = k;
            r.lo = std::min(r.lo, v[k]);
            r.hi = std::max(r.hi, v[k]);
        } else {
            runs.push_back({k, k, v[k], v[k]});
        }
    }

    std::vector<Extremum> out;
    for (std::size_t r = 1; r + 1 < runs.size(); ++r) {
        const double prev = v[runs[r - 1].last];
        const double next = v[runs[r + 1].first];
        const double here_first = v[runs[r].first];
        const double here_last = v[runs[r].last];
        const double t = 0.5 * (s.t_at(runs[r].first) + s.t_at(runs[r].last));
        if (prev < here_first && next < here_last)
            out.push_back({t, runs[r].hi, ExtremumKind::max});
        else if (prev > here_first && next > here_last)
            out.push_back({t, runs[r].lo, ExtremumKind::min});
    }
    return out;
}

ChiralityEstimate detect_chirality(std::span<const Extremum> extrema, double tau) {
    ChiralityEstimate est;
    for (std::size_t i = 0; i + 1 < extrema.size(); ++i) {
        const Extremum& a = extrema[i];
        const Extremum& b = extrema[i + 1];
        if (std::abs(a.value - b.value) <= tau) continue;
        if (a.kind == ExtremumKind::max && b.kind == ExtremumKind::min) {
            ++est.left_pairs;
            est.left_amplitude += a.value - b.value;
        }
        if (a.kind == ExtremumKind::min && b.kind == ExtremumKind::max) {
            ++est.right_pairs;
            est.right_amplitude += b.value - a.value;
        }
    }
    est.low_confidence = est.left_pairs == est.right_pairs;
    if (est.left_pairs != est.right_pairs)
        est.direction = est.left_pairs > est.right_pairs ? Chirality::left : Chirality::right;
    else
        est.direction = est.left_amplitude > est.right_amplitude ? Chirality::left : Chirality::right;
    return est;
}

std::vector<Interval> pair_extrema(std::span<const Extremum> extrema, Chirality chirality, double tau) {
    const ExtremumKind opening = chirality == Chirality::left ? ExtremumKind::max : ExtremumKind::min;
    std::vector<Interval> out;
    std::size_t i = 0;
    while (i + 1 < extrema.size()) {
        const Extremum& a = extrema[i];
        const Extremum& b = extrema[i + 1];
        if (a.kind == opening && b.kind != opening && std::abs(a.value - b.value) > tau && a.t < b.t) {
            out.push_back({a.t, b.t, IntervalKind::minimal});
            i += 2;
        } else {
            ++i;
        }
    }
    return out;
}

MinimalAnalysis analyze_minimal(const Polyline& p, const MinimalParams& params) {
    params.validate();
    MinimalAnalysis a;
    const std::size_t m = params.sample_count_for(p);
    a.raw = sample_uniform(orientation_function(p), m);
    a.cutoff = cutoff_from_factor(params.smoothing, m);
    a.smoothed = smooth_lowpass(a.raw, a.cutoff);
    a.extrema = find_local_extrema(a.smoothed, params.eps_flat);
    a.chirality = detect_chirality(a.extrema, params.chirality_tau);
    a.intervals = pair_extrema(a.extrema, a.chirality.direction, params.tau);
    return a;
}

std::vector<Interval> minimal_subsets(const Polyline& p, const MinimalParams& params) {
    return analyze_minimal(p, params).intervals;
}

}  // namespace foldex
