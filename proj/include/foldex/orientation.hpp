#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "foldex/geometry.hpp"

namespace foldex {

// Piecewise-constant heading of each segment, principal value in (-pi, pi].
struct OrientationFunction {
    std::vector<double> breakpoints;  // l_0 .. l_n
    std::vector<double> values;       // one per segment

    double length() const { return breakpoints.back(); }
};

// Uniformly sampled signal over [0, L]; sample k sits at t = k * L / (m - 1).
struct SampledSignal {
    std::vector<double> values;
    double dt = 0.0;
    double domain_length = 0.0;

    std::size_t size() const { return values.size(); }
    double t_at(std::size_t k) const;

    friend bool operator==(const SampledSignal&, const SampledSignal&) = default;
};

OrientationFunction orientation_function(const Polyline& p);

/// Removes 2*pi jumps so that consecutive differences are at most pi in magnitude.
std::vector<double> unwrap(std::span<const double> angles);

/// Samples the unwrapped orientation. A sample landing on a breakpoint takes
/// the next segment's angle; the last sample takes the last segment's angle.
SampledSignal sample_uniform(const OrientationFunction& of, std::size_t m);

/// Fourier low-pass: detrend, mirror to even length 2m-2, drop harmonics
/// above `cutoff`, invert, re-add the trend. Requires 1 <= cutoff < m/2.
SampledSignal smooth_lowpass(const SampledSignal& s, std::size_t cutoff);

/// Maps a user-facing smoothing factor f in (0, 1] to a harmonic cutoff,
/// clamped into the range smooth_lowpass accepts.
std::size_t cutoff_from_factor(double factor, std::size_t m);

/// Smoothing factor whose cutoff keeps harmonics down to the given
/// wavelength (arc length) on a domain of length L sampled m times.
double smoothing_factor_for_wavelength(double domain_length, std::size_t m, double wavelength);

/// max(1024, 4 * segment count), rounded up to a power of two.
std::size_t default_sample_count(std::size_t segment_count);

}  // namespace foldex
