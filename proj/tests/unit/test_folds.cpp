#include <gtest/gtest.h>

#include <cmath>
#include <numbers>

#include "fixtures.hpp"
#include "foldex/error.hpp"
#include "foldex/folds.hpp"
#include "foldex/synth.hpp"

using namespace foldex;
using std::numbers::pi;

TEST(Supports, Modes) {
    const Interval mx{2, 8, IntervalKind::maximal};
    EXPECT_TRUE(supports(mx, {1, 3}, ContainmentMode::overlap));
    EXPECT_FALSE(supports(mx, {1, 3}, ContainmentMode::strict));
    EXPECT_TRUE(supports(mx, {3, 5}, ContainmentMode::strict));
    EXPECT_FALSE(supports(mx, {8, 9}, ContainmentMode::overlap));
}

TEST(DetectFolds, StraightLine) {
    const std::vector<Point2> v{{0, 0}, {10, 0}};
    DetectionParams dp;
    const auto r = detect_folds(Polyline::build(v), dp);
    EXPECT_TRUE(r.folds.empty());
    EXPECT_TRUE(r.minimal_subsets.empty());
    EXPECT_TRUE(r.maximal_subsets.empty());
    EXPECT_TRUE(r.chirality.low_confidence);
}

TEST(DetectFolds, DefaultComb) {
    const auto fx = synth::generate_comb({});
    DetectionParams dp;
    const auto r = detect_folds(fx.polyline, dp);
    ASSERT_EQ(r.folds.size(), 3u);
    for (std::size_t k = 0; k < 3; ++k) {
        const auto& f = r.folds[k];
        EXPECT_EQ(f.label, k + 1);
        EXPECT_EQ(f.interval.kind, IntervalKind::fold);
        EXPECT_DOUBLE_EQ(f.arc_length, f.interval.length());
        EXPECT_FALSE(f.minimal_children.empty());
        for (const auto& c : f.minimal_children) EXPECT_GT(overlap_length(f.interval, c), 0.0);
        EXPECT_LE(f.width, 2.0 * dp.maximal.delta * (1 + dp.maximal.chord_slack));
        EXPECT_GE(f.arc_length, dp.maximal.rho * f.width);
    }
    EXPECT_EQ(r.chirality.direction, Chirality::left);
    EXPECT_EQ(r.side, Side::right);
}

TEST(DetectFolds, FoldsAreMaximalSubsets) {
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        synth::CombSpec s;
        s.tooth_count = 4;
        s.noise = 0.1;
        s.seed = seed;
        const auto fx = synth::generate_comb(s);
        const auto r = detect_folds(fx.polyline, fixtures::params_for(fx.polyline, 1.0, 3.0));
        for (const auto& f : r.folds) {
            const bool found = std::any_of(r.maximal_subsets.begin(), r.maximal_subsets.end(), [&](const Interval& m) {
                return m.t_a == f.interval.t_a && m.t_b == f.interval.t_b;
            });
            EXPECT_TRUE(found);
        }
        EXPECT_LE(r.folds.size(), std::min(r.maximal_subsets.size(), r.maximal_subsets.size()));
    }
}

TEST(DetectFolds, OvercountResolvedByCombination) {
    const auto fx = fixtures::overcount();
    const auto r = detect_folds(fx.polyline, fixtures::overcount_params(fx));
    EXPECT_EQ(r.maximal_subsets.size(), 6u);
    EXPECT_EQ(r.minimal_subsets.size(), 3u);
    EXPECT_EQ(r.folds.size(), 3u);
}

TEST(DetectFolds, HighTauRemovesAllFolds) {
    const auto fx = synth::generate_comb({});
    auto dp = fixtures::params_for(fx.polyline, 1.0, 3.0);
    const auto base = detect_folds(fx.polyline, dp);
    ASSERT_EQ(base.folds.size(), 3u);
    double amplitude = 0.0;
    for (std::size_t k = 1; k < base.extrema.size(); ++k)
        amplitude = std::max(amplitude, std::abs(base.extrema[k].value - base.extrema[k - 1].value));
    dp.minimal.tau = std::min(amplitude + 0.01, 2 * pi - 1e-6);
    dp.maximal.side = SideMode::right;
    const auto r = detect_folds(fx.polyline, dp);
    EXPECT_TRUE(r.folds.empty());
    EXPECT_FALSE(r.maximal_subsets.empty());
}

TEST(DetectFolds, StrictModeNeverFindsMore) {
    synth::CombSpec s;
    s.tooth_count = 6;
    s.noise = 0.1;
    const auto fx = synth::generate_comb(s);
    auto dp = fixtures::params_for(fx.polyline, 1.0, 3.0);
    const auto overlap = detect_folds(fx.polyline, dp);
    dp.mode = ContainmentMode::strict;
    EXPECT_LE(detect_folds(fx.polyline, dp).folds.size(), overlap.folds.size());
}

TEST(DetectFolds, RejectsBadParams) {
    const auto fx = synth::generate_comb({});
    DetectionParams dp;
    dp.minimal.tau = 7.0;
    EXPECT_THROW(detect_folds(fx.polyline, dp), Error);
}

TEST(FoldMetrics, RectangularTooth) {
    synth::CombSpec s;
    s.tooth_count = 1;
    s.corner_radius = 0.05;
    const auto fx = synth::generate_comb(s);
    const auto& t = fx.truth.folds[0];
    const auto m = fold_metrics(fx.polyline, t.mouth);
    EXPECT_NEAR(m.width, t.width, 0.05 * t.width);
    EXPECT_NEAR(m.depth, t.depth, 0.05 * t.depth);
}

TEST(FoldMetrics, Semicircle) {
    const double r = 3.0;
    std::vector<Point2> v;
    for (int k = 0; k <= 360; ++k) v.push_back({r * std::cos(pi * k / 360), -r * std::sin(pi * k / 360)});
    const auto p = Polyline::build(v);
    const auto m = fold_metrics(p, {0.0, p.length()});
    EXPECT_NEAR(m.width, 2 * r, 1e-9);
    EXPECT_NEAR(m.depth, r, 0.01 * r);
}

TEST(FoldMetrics, ClosedHairpin) {
    const std::vector<Point2> v{{0, 0}, {0.1, 0}, {0.1, 4}, {-0.1, 4}, {-0.1, 0}, {0, 0}};
    const auto p = Polyline::build(v);
    const auto m = fold_metrics(p, {0.0, p.length()});
    EXPECT_NEAR(m.width, 0.0, 1e-12);
    EXPECT_NEAR(m.depth, 4.0, 0.01);
}

TEST(FoldMetrics, DepthIsOnEnclosedSide) {
    // The same tooth traversed in both directions has the same depth.
    synth::CombSpec s;
    s.tooth_count = 1;
    const auto fx = synth::generate_comb(s);
    std::vector<Point2> rev(fx.polyline.vertices().rbegin(), fx.polyline.vertices().rend());
    const auto p2 = Polyline::build(rev, 0.0);
    const auto& mouth = fx.truth.folds[0].mouth;
    const Interval flipped{p2.length() - mouth.t_b, p2.length() - mouth.t_a};
    EXPECT_NEAR(fold_metrics(fx.polyline, mouth).depth, fold_metrics(p2, flipped).depth, 1e-9);
    EXPECT_GT(fold_metrics(fx.polyline, mouth).depth, 2.5);
}

TEST(EstimateDelta, NearToothWidth) {
    const auto fx = synth::generate_comb({});
    DetectionParams dp;
    const double d = estimate_delta(fx.polyline, dp);
    EXPECT_GT(d, 0.5);
    EXPECT_LT(d, 2.0);
    const std::vector<Point2> v{{0, 0}, {10, 0}};
    EXPECT_DOUBLE_EQ(estimate_delta(Polyline::build(v), dp), 0.5);
}
