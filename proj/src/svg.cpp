#include "foldex/svg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <span>

#include <fmt/format.h>

namespace foldex::svg {
namespace {

struct Box {
    double x0, y0, w, h;
};

struct Frame {
    double min_x, max_x, min_y, max_y;
    Box box;
    bool equal_aspect;

    double sx() const { return box.w / std::max(max_x - min_x, 1e-300); }
    double sy() const { return box.h / std::max(max_y - min_y, 1e-300); }

    Point2 map(Point2 p) const {
        double kx = sx(), ky = sy();
        double ox = 0.0, oy = 0.0;
        if (equal_aspect) {
            const double k = std::min(kx, ky);
            ox = 0.5 * (box.w - k * (max_x - min_x));
            oy = 0.5 * (box.h - k * (max_y - min_y));
            kx = ky = k;
        }
        return {box.x0 + ox + (p.x - min_x) * kx, box.y0 + box.h - oy - (p.y - min_y) * ky};
    }
};

void extend(Frame& f, Point2 p) {
    f.min_x = std::min(f.min_x, p.x);
    f.max_x = std::max(f.max_x, p.x);
    f.min_y = std::min(f.min_y, p.y);
    f.max_y = std::max(f.max_y, p.y);
}

Frame empty_frame(Box box, bool equal_aspect) {
    constexpr double inf = std::numeric_limits<double>::infinity();
    return {inf, -inf, inf, -inf, box, equal_aspect};
}

void pad(Frame& f) {
    const double px = std::max(0.05 * (f.max_x - f.min_x), 1e-9);
    const double py = std::max(0.05 * (f.max_y - f.min_y), 1e-9);
    f.min_x -= px;
    f.max_x += px;
    f.min_y -= py;
    f.max_y += py;
}

void path(std::string& out, std::span<const Point2> pts, const Frame& f, std::string_view attrs) {
    if (pts.empty()) return;
    out += "<polyline";
    out += attrs;
    out += " points=\"";
    for (std::size_t i = 0; i < pts.size(); ++i) {
        const auto q = f.map(pts[i]);
        out += fmt::format("{}{:.3f},{:.3f}", i ? " " : "", q.x, q.y);
    }
    out += "\"/>\n";
}

std::string escape(std::string_view s) {
    std::string out;
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

std::vector<Point2> signal_points(const SampledSignal& s) {
    std::vector<Point2> pts(s.size());
    for (std::size_t k = 0; k < s.size(); ++k) pts[k] = {s.t_at(k), s.values[k]};
    return pts;
}

const char* color_of(IntervalKind k) {
    switch (k) {
    case IntervalKind::minimal: return minimal_color;
    case IntervalKind::maximal: return maximal_color;
    case IntervalKind::fold: return fold_color;
    }
    return "#000";
}

std::vector<Interval> fold_intervals(const FoldReport& r) {
    std::vector<Interval> out;
    for (const auto& f : r.folds) out.push_back(f.interval);
    return out;
}

}  // namespace

std::string render_report(const FoldReport& r, const RenderOptions& opt) {
    const double margin = 24.0;
    const double W = 2.0 * opt.panel_width + 3.0 * margin;
    const double H = opt.panel_height + 2.0 * margin + (opt.title.empty() ? 0.0 : 16.0);
    const double top = margin + (opt.title.empty() ? 0.0 : 16.0);

    std::string out;
    out += fmt::format(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{:.0f}\" height=\"{:.0f}\" "
        "viewBox=\"0 0 {:.0f} {:.0f}\">\n",
        W, H, W, H);
    out += "<rect width=\"100%\" height=\"100%\" fill=\"#ffffff\"/>\n";
    if (!opt.title.empty())
        out += fmt::format("<text x=\"{:.1f}\" y=\"{:.1f}\" font-family=\"sans-serif\" font-size=\"14\">{}</text>\n",
                           margin, margin, escape(opt.title));

    const std::vector<Interval> folds = fold_intervals(r);
    const std::span<const Interval> families[] = {r.minimal_subsets, r.maximal_subsets, folds};

    // Geometry panel.
    Frame g = empty_frame({margin, top, opt.panel_width, opt.panel_height}, true);
    for (const auto& p : r.polyline.vertices()) extend(g, p);
    for (const auto& p : r.offset.vertices) extend(g, p);
    pad(g);
    out += "<g class=\"panel geometry\">\n";
    out += fmt::format("<rect class=\"frame\" x=\"{:.1f}\" y=\"{:.1f}\" width=\"{:.1f}\" height=\"{:.1f}\" "
                       "fill=\"none\" stroke=\"#cccccc\"/>\n",
                       margin, top, opt.panel_width, opt.panel_height);
    path(out, r.offset.vertices, g, " class=\"offset\" fill=\"none\" stroke=\"#f08c00\" stroke-width=\"0.8\"");
    path(out, r.polyline.vertices(), g, " class=\"polyline\" fill=\"none\" stroke=\"#d6336c\" stroke-width=\"1.2\"");
    const double widths[] = {5.0, 3.5, 2.0};
    for (std::size_t fam = 0; fam < 3; ++fam) {
        for (const auto& iv : families[fam]) {
            const auto sub = r.polyline.subchain(iv);
            path(out, sub.vertices(), g,
                 fmt::format(" class=\"highlight {}\" fill=\"none\" stroke=\"{}\" stroke-opacity=\"0.7\" "
                             "stroke-width=\"{}\"",
                             to_string(iv.kind), color_of(iv.kind), widths[fam]));
        }
    }
    out += "</g>\n";

    // Orientation panel: three block rows above the curves.
    const double x0 = 2.0 * margin + opt.panel_width;
    const double row = 12.0;
    const double rows_h = 3.0 * (row + 4.0);
    Frame o = empty_frame({x0, top + rows_h, opt.panel_width, opt.panel_height - rows_h}, false);
    const auto raw = signal_points(r.raw_orientation);
    const auto smooth = signal_points(r.smoothed_orientation);
    for (const auto& p : raw) extend(o, p);
    for (const auto& p : smooth) extend(o, p);
    if (raw.empty() && smooth.empty()) o.min_x = o.min_y = 0.0, o.max_x = o.max_y = 1.0;
    o.min_x = 0.0;
    o.max_x = std::max(r.polyline.length(), 1e-300);
    const double py = std::max(0.05 * (o.max_y - o.min_y), 1e-9);
    o.min_y -= py;
    o.max_y += py;

    out += "<g class=\"panel orientation\">\n";
    out += fmt::format("<rect class=\"frame\" x=\"{:.1f}\" y=\"{:.1f}\" width=\"{:.1f}\" height=\"{:.1f}\" "
                       "fill=\"none\" stroke=\"#cccccc\"/>\n",
                       x0, top, opt.panel_width, opt.panel_height);
    for (std::size_t fam = 0; fam < 3; ++fam) {
        const double y = top + static_cast<double>(fam) * (row + 4.0) + 2.0;
        for (const auto& iv : families[fam]) {
            const double xa = o.map({iv.t_a, 0.0}).x;
            const double xb = o.map({iv.t_b, 0.0}).x;
            out += fmt::format(
                "<rect class=\"block {}\" x=\"{:.3f}\" y=\"{:.1f}\" width=\"{:.3f}\" height=\"{:.1f}\" "
                "fill=\"{}\" data-t-a=\"{}\" data-t-b=\"{}\"/>\n",
                to_string(iv.kind), xa, y, std::max(xb - xa, 0.5), row, color_of(iv.kind), iv.t_a, iv.t_b);
        }
    }
    path(out, raw, o, " class=\"raw\" fill=\"none\" stroke=\"#868e96\" stroke-width=\"0.8\"");
    path(out, smooth, o, " class=\"smoothed\" fill=\"none\" stroke=\"#212529\" stroke-width=\"1.2\"");
    for (const auto& e : r.extrema) {
        const auto q = o.map({e.t, e.value});
        out += fmt::format("<circle class=\"extremum {}\" cx=\"{:.3f}\" cy=\"{:.3f}\" r=\"2.5\" fill=\"{}\"/>\n",
                           to_string(e.kind), q.x, q.y, e.kind == ExtremumKind::max ? "#e03131" : "#1971c2");
    }
    out += "</g>\n</svg>\n";
    return out;
}

}  // namespace foldex::svg
