#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "fixtures.hpp"
#include "foldex/error.hpp"
#include "foldex/minimal.hpp"
#include "foldex/synth.hpp"

using namespace foldex;
using std::numbers::pi;

namespace {

SampledSignal signal(std::vector<double> v, double L = 1.0) {
    const double dt = L / static_cast<double>(v.size() - 1);
    return {std::move(v), dt, L};
}

Extremum mx(double t, double v) { return {t, v, ExtremumKind::max}; }
Extremum mn(double t, double v) { return {t, v, ExtremumKind::min}; }

}  // namespace

TEST(Extrema, MonotoneHasNone) {
    std::vector<double> v(100);
    for (std::size_t k = 0; k < v.size(); ++k) v[k] = std::sqrt(static_cast<double>(k));
    EXPECT_TRUE(find_local_extrema(signal(v), 1e-12).empty());
}

TEST(Extrema, SinePeriod) {
    const std::size_t m = 256;
    std::vector<double> v(m);
    const double L = 10.0, dt = L / (m - 1);
    for (std::size_t k = 0; k < m; ++k) v[k] = std::sin(2 * pi * k * dt / L);
    const auto e = find_local_extrema(signal(v, L), 1e-12);
    ASSERT_EQ(e.size(), 2u);
    EXPECT_EQ(e[0].kind, ExtremumKind::max);
    EXPECT_NEAR(e[0].t, L / 4, dt);
    EXPECT_EQ(e[1].kind, ExtremumKind::min);
    EXPECT_NEAR(e[1].t, 3 * L / 4, dt);
}

TEST(Extrema, PlateauCollapsesToMidpoint) {
    const auto e = find_local_extrema(signal({0, 1, 1, 0}, 3.0), 1e-6);
    ASSERT_EQ(e.size(), 1u);
    EXPECT_EQ(e[0].kind, ExtremumKind::max);
    EXPECT_DOUBLE_EQ(e[0].t, 1.5);
    EXPECT_EQ(e[0].value, 1.0);
}

TEST(Extrema, EndpointRunsAreNotExtrema) {
    EXPECT_TRUE(find_local_extrema(signal({1, 1, 1, 0, -1}), 1e-6).empty());
    EXPECT_TRUE(find_local_extrema(signal({0, 1, 2, 2, 2}), 1e-6).empty());
    EXPECT_TRUE(find_local_extrema(signal(std::vector<double>(10, 3.0)), 1e-6).empty());
}

TEST(Extrema, AlternateOnRandomSignals) {
    std::mt19937_64 rng(31);
    std::normal_distribution<double> g(0.0, 1.0);
    for (int trial = 0; trial < 50; ++trial) {
        std::vector<double> v(200);
        for (auto& x : v) x = g(rng);
        const auto e = find_local_extrema(signal(v), 1e-6);
        for (std::size_t k = 1; k < e.size(); ++k) {
            EXPECT_NE(e[k].kind, e[k - 1].kind);
            EXPECT_LT(e[k - 1].t, e[k].t);
        }
    }
}

TEST(Chirality, MajorityVote) {
    const std::vector<Extremum> left{mx(1, 3), mn(2, 0), mx(3, 0.5), mn(4, -2.5)};
    const auto l = detect_chirality(left, 2.0);
    EXPECT_EQ(l.direction, Chirality::left);
    EXPECT_FALSE(l.low_confidence);
    EXPECT_EQ(l.left_pairs, 2u);
    EXPECT_EQ(l.right_pairs, 0u);

    const std::vector<Extremum> right{mn(1, 0), mx(2, 3), mn(3, 2.5), mx(4, 5)};
    EXPECT_EQ(detect_chirality(right, 2.0).direction, Chirality::right);
}

TEST(Chirality, TiesAndEmptyAreLowConfidence) {
    const auto none = detect_chirality({}, 2.0);
    EXPECT_EQ(none.direction, Chirality::right);
    EXPECT_TRUE(none.low_confidence);

    const std::vector<Extremum> tie{mx(1, 3), mn(2, 0), mx(3, 2.5)};
    const auto t = detect_chirality(tie, 2.0);
    EXPECT_TRUE(t.low_confidence);
    EXPECT_EQ(t.direction, Chirality::left);  // larger summed swing
}

TEST(Chirality, MirroredCombsDisagree) {
    synth::CombSpec s;
    const auto left = synth::generate_comb(s);
    s.chirality = Chirality::right;
    const auto right = synth::generate_comb(s);
    const MinimalParams mp;
    EXPECT_EQ(analyze_minimal(left.polyline, mp).chirality.direction, Chirality::left);
    EXPECT_EQ(analyze_minimal(right.polyline, mp).chirality.direction, Chirality::right);
}

TEST(Pairing, GreedyAdjacentPairs) {
    const std::vector<Extremum> e{mx(1, 3), mn(2, 0), mx(3, 2.9), mn(4, -0.2), mx(5, 0)};
    const auto iv = pair_extrema(e, Chirality::left, 2.0);
    ASSERT_EQ(iv.size(), 2u);
    EXPECT_EQ(iv[0], (Interval{1, 2, IntervalKind::minimal}));
    EXPECT_EQ(iv[1], (Interval{3, 4, IntervalKind::minimal}));
    // min(4) -> max(5) only drops 0.2
    const auto r = pair_extrema(e, Chirality::right, 2.0);
    ASSERT_EQ(r.size(), 1u);
    EXPECT_EQ(r[0], (Interval{2, 3, IntervalKind::minimal}));
}

TEST(Pairing, ExtremumServesOnePair) {
    const std::vector<Extremum> e{mx(1, 3), mn(2, 0), mx(3, 3), mn(4, 0)};
    const auto iv = pair_extrema(e, Chirality::left, 1.0);
    ASSERT_EQ(iv.size(), 2u);
    EXPECT_EQ(iv[1], (Interval{3, 4, IntervalKind::minimal}));
}

TEST(MinimalSubsets, StraightLineIsEmpty) {
    const std::vector<Point2> v{{0, 0}, {10, 0}};
    EXPECT_TRUE(minimal_subsets(Polyline::build(v), {}).empty());
}

TEST(MinimalSubsets, SingleToothSpansShoulders) {
    synth::CombSpec s;
    s.tooth_count = 1;
    const auto fx = synth::generate_comb(s);
    const auto dp = fixtures::params_for(fx.polyline, 1.0, 3.0);
    const auto a = analyze_minimal(fx.polyline, dp.minimal);
    ASSERT_EQ(a.intervals.size(), 1u);
    const auto& truth = fx.truth.folds.at(0).shoulders;
    const double tol = std::max(2.0 * a.smoothed.dt, 0.25);
    EXPECT_NEAR(a.intervals[0].t_a, truth.t_a, tol);
    EXPECT_NEAR(a.intervals[0].t_b, truth.t_b, tol);
}

// The brick-wall cutoff rings: at wavelength 3 the smoothed drop of this
// tooth is ~1.17 pi, above its geometric turning. At wavelength 2 the drop
// stays below pi and tau = 1.1 pi must reject the tooth.
TEST(MinimalSubsets, TauAboveToothTurningFindsNothing) {
    synth::CombSpec s;
    s.tooth_count = 1;
    const auto fx = synth::generate_comb(s);
    auto mp = fixtures::params_for(fx.polyline, 1.0, 2.0).minimal;
    mp.tau = 2.0 * pi / 3.0;
    ASSERT_EQ(minimal_subsets(fx.polyline, mp).size(), 1u);
    mp.tau = 1.1 * pi;
    EXPECT_LT(fx.truth.folds[0].turning, mp.tau);
    EXPECT_TRUE(minimal_subsets(fx.polyline, mp).empty());
}

TEST(MinimalSubsets, ChiralityFixedWhileTauMoves) {
    synth::CombSpec s;
    s.tooth_count = 5;
    s.noise = 0.1;
    s.seed = 77;
    const auto fx = synth::generate_comb(s);
    auto mp = fixtures::params_for(fx.polyline, 1.0, 3.0).minimal;
    for (double tau : {0.5, 1.5, 2.5, 3.0}) {
        mp.tau = tau;
        EXPECT_EQ(analyze_minimal(fx.polyline, mp).chirality.direction, Chirality::left) << tau;
    }
}

TEST(MinimalSubsets, TauMonotone) {
    synth::CombSpec s;
    s.tooth_count = 5;
    s.noise = 0.1;
    s.seed = 77;
    const auto fx = synth::generate_comb(s);
    auto mp = fixtures::params_for(fx.polyline, 1.0, 3.0).minimal;
    std::vector<Interval> prev;
    for (int step = 0; step <= 10; ++step) {
        mp.tau = 0.5 + 0.25 * step;
        const auto cur = minimal_subsets(fx.polyline, mp);
        if (step > 0)
            for (const auto& iv : cur) EXPECT_NE(std::find(prev.begin(), prev.end(), iv), prev.end()) << mp.tau;
        prev = cur;
    }
}

TEST(MinimalSubsets, IntervalsDisjointSortedAndHitExtremeValues) {
    synth::CombSpec s;
    s.tooth_count = 6;
    s.noise = 0.08;
    const auto fx = synth::generate_comb(s);
    const auto a = analyze_minimal(fx.polyline, fixtures::params_for(fx.polyline, 1.0, 3.0).minimal);
    ASSERT_FALSE(a.intervals.empty());
    for (std::size_t k = 0; k < a.intervals.size(); ++k) {
        const auto& iv = a.intervals[k];
        EXPECT_LT(iv.t_a, iv.t_b);
        if (k) EXPECT_LE(a.intervals[k - 1].t_b, iv.t_a);
        // The pair's values are attained by samples inside the interval.
        double lo = INFINITY, hi = -INFINITY;
        for (std::size_t j = 0; j < a.smoothed.size(); ++j) {
            const double t = a.smoothed.t_at(j);
            if (t < iv.t_a - a.smoothed.dt || t > iv.t_b + a.smoothed.dt) continue;
            lo = std::min(lo, a.smoothed.values[j]);
            hi = std::max(hi, a.smoothed.values[j]);
        }
        EXPECT_GT(hi - lo, MinimalParams{}.tau);
    }
}

TEST(MinimalParams, Validation) {
    MinimalParams p;
    EXPECT_NO_THROW(p.validate());
    p.tau = 7.0;
    EXPECT_THROW(p.validate(), Error);
    p = {};
    p.smoothing = 0.0;
    EXPECT_THROW(p.validate(), Error);
    p = {};
    p.samples = 4;
    EXPECT_THROW(p.validate(), Error);
}
