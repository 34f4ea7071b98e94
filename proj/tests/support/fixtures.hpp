#pragma once

// Fixtures shared by the unit tests and the acceptance binary.

#include <cstddef>
#include <cstdint>

#include "foldex/folds.hpp"
#include "foldex/orientation.hpp"
#include "foldex/synth.hpp"

namespace fixtures {

using namespace foldex;

// Smoothing that keeps heading features down to `wavelength` in arc length.
inline DetectionParams params_for(const Polyline& p, double delta, double wavelength) {
    DetectionParams dp;
    dp.maximal.delta = delta;
    dp.minimal.samples = default_sample_count(p.segment_count());
    dp.minimal.smoothing = smoothing_factor_for_wavelength(p.length(), dp.minimal.samples, wavelength);
    return dp;
}

// Recovery set: k in 1..8, jitter up to w/8, teeth three widths apart.
inline synth::CombSpec recovery_spec(std::size_t i, std::uint64_t seed_base = 1000) {
    synth::CombSpec s;
    s.tooth_count = 1 + i % 8;
    s.noise = 0.125 * static_cast<double>(i % 5) / 4.0;
    s.seed = seed_base + i;
    return s;
}

inline DetectionParams recovery_params(const synth::Fixture& fx, const synth::CombSpec& s) {
    return params_for(fx.polyline, s.tooth_width, 3.0 * s.tooth_width);
}

// Three teeth with a shallow narrow notch in every wide gap: six offset
// pinches, three heading swings.
inline synth::Fixture overcount() {
    const double gap = 7.0;
    const double notch_w = 0.2, notch_d = 0.5, notch_r = 0.05;
    const double half = ((gap - 2.0 * 0.25) - notch_w - 2.0 * notch_r) / 2.0;
    synth::MembraneBuilder b(0.25);
    b.straight(4.0);
    for (int i = 0; i < 3; ++i) {
        b.tooth(1.0, 3.0, 0.25);
        b.straight(half).decoy(notch_w, notch_d, notch_r).straight(half);
    }
    b.straight(4.0);
    return b.build();
}

inline DetectionParams overcount_params(const synth::Fixture& fx) { return params_for(fx.polyline, 1.0, 4.0); }

// Tooth, wide bulge of mouth 6 and depth 2, tooth; delta 1.
inline synth::Fixture tooth_bulge_tooth() {
    synth::MembraneBuilder b(0.25);
    b.straight(4.0).tooth(1.0, 3.0, 0.25).straight(4.0).bulge(6.0, 2.0).straight(4.0).tooth(1.0, 3.0, 0.25).straight(4.0);
    return b.build();
}

}  // namespace fixtures
