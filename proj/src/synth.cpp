#include "foldex/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "foldex/error.hpp"
#include "foldex/maximal.hpp"

namespace foldex::synth {

namespace {

void require(bool ok, const std::string& what) {
    if (!ok) throw Error(ErrorKind::BadParam, what);
}

}  // namespace

void CombSpec::validate() const {
    require(tooth_width > 0.0 && tooth_depth > 0.0 && spacing > 0.0, "comb: width, depth and spacing must be > 0");
    require(corner_radius >= 0.0 && corner_radius < tooth_width / 2.0, "comb: corner radius must lie in [0, w/2)");
    require(2.0 * corner_radius <= tooth_depth && 2.0 * corner_radius <= spacing,
            "comb: corner radius must fit the tooth depth and spacing");
    require(vertex_spacing > 0.0, "comb: vertex spacing must be > 0");
    require(noise >= 0.0 && noise < tooth_width / 4.0, "comb: noise must lie in [0, w/4)");
    require(lead > 0.0, "comb: lead must be > 0");
}

MembraneBuilder::MembraneBuilder(double vertex_spacing, Chirality chirality)
    : spacing_(vertex_spacing), chirality_(chirality) {
    require(vertex_spacing > 0.0 && std::isfinite(vertex_spacing), "vertex spacing must be > 0");
}

void MembraneBuilder::emit(Point2 p) {
    const double step = distance(points_.back(), p);
    if (step <= 1e-12 * spacing_) return;
    points_.push_back(p);
    clean_s_.push_back(clean_s_.back() + step);
}

MembraneBuilder& MembraneBuilder::straight(double length) {
    if (!(length > 0.0)) return *this;
    const auto n = static_cast<std::size_t>(std::max(1.0, std::ceil(length / spacing_)));
    const Point2 start = points_.back();
    const Point2 dir{std::cos(heading_), std::sin(heading_)};
    for (std::size_t i = 1; i <= n; ++i) emit(start + (length * static_cast<double>(i) / static_cast<double>(n)) * dir);
    return *this;
}

MembraneBuilder& MembraneBuilder::arc(double radius, double angle) {
    const double turn = angle * side_sign();
    if (turn == 0.0) return *this;
    if (!(radius > 0.0)) {
        heading_ += turn;
        return *this;
    }
    const double sgn = turn > 0.0 ? 1.0 : -1.0;
    const auto n = static_cast<std::size_t>(std::max(1.0, std::ceil(radius * std::abs(turn) / spacing_)));
    const Point2 start = points_.back();
    const Point2 left{-std::sin(heading_), std::cos(heading_)};
    const Point2 center = start + (sgn * radius) * left;
    for (std::size_t i = 1; i <= n; ++i) {
        const double phi = heading_ + turn * static_cast<double>(i) / static_cast<double>(n);
        emit(center - (sgn * radius) * Point2{-std::sin(phi), std::cos(phi)});
    }
    heading_ += turn;
    return *this;
}

MembraneBuilder& MembraneBuilder::add_tooth(double width, double depth, double r, bool is_fold) {
    require(width > 0.0 && depth > 0.0, "tooth: width and depth must be > 0");
    require(r >= 0.0 && 2.0 * r < width && 2.0 * r <= depth, "tooth: corner radius too large");
    constexpr double quarter = std::numbers::pi / 2.0;
    const double s0 = clean_s_.back();
    arc(r, quarter);
    const double s1 = clean_s_.back();
    straight(depth - 2.0 * r);
    const double s2 = clean_s_.back();
    arc(r, -quarter);
    const double s3 = clean_s_.back();
    straight(width - 2.0 * r);
    const double s4 = clean_s_.back();
    arc(r, -quarter);
    const double s5 = clean_s_.back();
    straight(depth - 2.0 * r);
    const double s6 = clean_s_.back();
    arc(r, quarter);
    const double s7 = clean_s_.back();

    teeth_.push_back({{0.5 * (s0 + s1)}, {0.5 * (s6 + s7)}, {0.5 * (s1 + s2)}, {0.5 * (s5 + s6)},
                      {0.5 * (s3 + s4)}, width, depth, std::numbers::pi, is_fold});
    return *this;
}

MembraneBuilder& MembraneBuilder::tooth(double width, double depth, double r) {
    return add_tooth(width, depth, r, true);
}

MembraneBuilder& MembraneBuilder::decoy(double width, double depth, double r) {
    return add_tooth(width, depth, r, false);
}

MembraneBuilder& MembraneBuilder::bulge(double mouth_width, double depth) {
    require(mouth_width > 0.0 && depth >= 0.0, "bulge: mouth width must be > 0 and depth >= 0");
    const auto n = static_cast<std::size_t>(std::max(2.0, std::ceil(mouth_width / spacing_)));
    const Point2 start = points_.back();
    const Point2 dir{std::cos(heading_), std::sin(heading_)};
    const Point2 up = side_sign() * Point2{-dir.y, dir.x};
    for (std::size_t i = 1; i <= n; ++i) {
        const double x = mouth_width * static_cast<double>(i) / static_cast<double>(n);
        const double y = 0.5 * depth * (1.0 - std::cos(2.0 * std::numbers::pi * x / mouth_width));
        emit(start + x * dir + y * up);
    }
    ++bulges_;
    return *this;
}

Fixture MembraneBuilder::build(double noise, std::uint64_t seed) const {
    require(noise >= 0.0 && std::isfinite(noise), "noise must be >= 0");
    std::vector<Point2> pts = points_;
    if (noise > 0.0 && pts.size() >= 2) {
        const Polyline clean = Polyline::build(points_, 0.0);
        const auto normals = vertex_normals(clean, Side::left, NormalWeighting::length);
        std::mt19937_64 rng(seed);
        std::normal_distribution<double> jitter(0.0, noise);
        for (std::size_t k = 0; k < pts.size(); ++k) pts[k] = pts[k] + jitter(rng) * normals[k];
    }

    Polyline out = Polyline::build(pts, 0.0);
    if (out.vertex_count() != points_.size())
        throw Error(ErrorKind::DegenerateInput, "jitter collapsed construction vertices");

    const auto& l = out.cum_lengths();
    auto map = [&](Mark m) {
        auto it = std::upper_bound(clean_s_.begin(), clean_s_.end(), m.s);
        std::size_t k = std::min<std::size_t>(static_cast<std::size_t>(it - clean_s_.begin()),
                                              clean_s_.size() - 1);
        k = k == 0 ? 0 : k - 1;
        if (k + 1 >= clean_s_.size()) return out.length();
        const double u = (m.s - clean_s_[k]) / (clean_s_[k + 1] - clean_s_[k]);
        return std::clamp(l[k] + u * out.segment_length(k), 0.0, out.length());
    };

    GroundTruth truth;
    truth.bulges = bulges_;
    for (const PendingTooth& t : teeth_) {
        ToothTruth tt;
        tt.mouth = {map(t.mouth_a), map(t.mouth_b), IntervalKind::fold};
        tt.shoulders = {map(t.shoulder_a), map(t.shoulder_b), IntervalKind::minimal};
        tt.tip = map(t.tip);
        tt.width = t.width;
        tt.depth = t.depth;
        tt.turning = t.turning;
        if (!(tt.turning > 2.0 * std::numbers::pi / 3.0))
            throw Error(ErrorKind::BadParam, "tooth turning does not exceed the default threshold");
        (t.is_fold ? truth.folds : truth.decoys).push_back(tt);
    }
    return {std::move(out), std::move(truth)};
}

Fixture generate_comb(const CombSpec& spec) {
    spec.validate();
    MembraneBuilder b(spec.vertex_spacing, spec.chirality);
    b.straight(spec.lead);
    for (std::size_t i = 0; i < spec.tooth_count; ++i) {
        b.tooth(spec.tooth_width, spec.tooth_depth, spec.corner_radius);
        if (i + 1 < spec.tooth_count) b.straight(spec.spacing - 2.0 * spec.corner_radius);
    }
    b.straight(spec.lead);
    return b.build(spec.noise, spec.seed);
}

Fixture generate_bulge(double mouth_width, double depth, double vertex_spacing, Chirality chirality) {
    require(mouth_width > 0.0 && depth >= 0.0 && vertex_spacing > 0.0,
            "bulge: mouth width and spacing must be > 0, depth >= 0");
    MembraneBuilder b(vertex_spacing, chirality);
    b.straight(mouth_width).bulge(mouth_width, depth).straight(mouth_width);
    return b.build();
}

}  // namespace foldex::synth
