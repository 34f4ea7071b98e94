#include <gtest/gtest.h>

#include <regex>

#include "fixtures.hpp"
#include "foldex/svg.hpp"

using namespace foldex;

namespace {

std::size_t count(const std::string& text, const std::string& needle) {
    std::size_t n = 0;
    for (auto pos = text.find(needle); pos != std::string::npos; pos = text.find(needle, pos + 1)) ++n;
    return n;
}

void expect_balanced(const std::string& svg) {
    EXPECT_EQ(svg.rfind("<svg", 0), 0u);
    EXPECT_NE(svg.find("</svg>"), std::string::npos);
    EXPECT_EQ(count(svg, "<g "), count(svg, "</g>"));
    EXPECT_EQ(svg.find("nan"), std::string::npos);
    EXPECT_EQ(svg.find("inf"), std::string::npos);
}

}  // namespace

TEST(Svg, OneBlockPerInterval) {
    const auto fx = fixtures::overcount();
    const auto r = detect_folds(fx.polyline, fixtures::overcount_params(fx));
    const auto svg = svg::render_report(r, {.title = "a & b"});
    expect_balanced(svg);
    EXPECT_EQ(count(svg, "class=\"block minimal\""), r.minimal_subsets.size());
    EXPECT_EQ(count(svg, "class=\"block maximal\""), r.maximal_subsets.size());
    EXPECT_EQ(count(svg, "class=\"block fold\""), 3u);
    EXPECT_EQ(count(svg, "fill=\"#8a2be2\""), 3u);
    EXPECT_EQ(count(svg, "class=\"highlight fold\""), 3u);
    EXPECT_EQ(count(svg, "class=\"extremum"), r.extrema.size());
    EXPECT_NE(svg.find("a &amp; b"), std::string::npos);
}

TEST(Svg, EmptyReportHasCurvesOnly) {
    const std::vector<Point2> v{{0, 0}, {5, 0}};
    DetectionParams dp;
    const auto r = detect_folds(Polyline::build(v), dp);
    const auto svg = svg::render_report(r);
    expect_balanced(svg);
    EXPECT_EQ(count(svg, "class=\"block"), 0u);
    EXPECT_EQ(count(svg, "class=\"polyline\""), 1u);
    EXPECT_EQ(count(svg, "class=\"raw\""), 1u);
    EXPECT_EQ(count(svg, "class=\"smoothed\""), 1u);
}
