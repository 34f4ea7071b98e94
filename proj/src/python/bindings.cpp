#include <pybind11/operators.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "foldex/error.hpp"
#include "foldex/folds.hpp"
#include "foldex/maximal.hpp"
#include "foldex/minimal.hpp"
#include "foldex/orientation.hpp"
#include "foldex/report_io.hpp"
#include "foldex/svg.hpp"
#include "foldex/synth.hpp"

namespace py = pybind11;
using namespace foldex;

#define STRINGIFY(x) #x
#define MACRO_STRINGIFY(x) STRINGIFY(x)

namespace {

using XY = std::pair<double, double>;

std::vector<Point2> to_points(const std::vector<XY>& xy) {
    std::vector<Point2> pts;
    pts.reserve(xy.size());
    for (const auto& [x, y] : xy) pts.push_back({x, y});
    return pts;
}

std::vector<XY> to_xy(const std::vector<Point2>& pts) {
    std::vector<XY> out;
    out.reserve(pts.size());
    for (const auto& p : pts) out.emplace_back(p.x, p.y);
    return out;
}

DetectionParams make_params(double delta, double tau, double smoothing, std::size_t samples,
                            const std::string& side, double rho, const std::string& mode) {
    DetectionParams p;
    p.minimal.tau = tau;
    p.minimal.smoothing = smoothing;
    p.minimal.samples = samples;
    p.maximal.delta = delta;
    if (side == "left") p.maximal.side = SideMode::left;
    else if (side == "right") p.maximal.side = SideMode::right;
    else if (side == "auto") p.maximal.side = SideMode::automatic;
    else throw Error(ErrorKind::BadParam, "side must be left, right or auto");
    p.maximal.rho = rho;
    if (mode == "overlap") p.mode = ContainmentMode::overlap;
    else if (mode == "strict") p.mode = ContainmentMode::strict;
    else throw Error(ErrorKind::BadParam, "mode must be overlap or strict");
    return p;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Fold detection on membrane polylines";

    py::register_exception<Error>(m, "FoldexError", PyExc_ValueError);

    py::enum_<IntervalKind>(m, "IntervalKind")
        .value("minimal", IntervalKind::minimal)
        .value("maximal", IntervalKind::maximal)
        .value("fold", IntervalKind::fold);

    py::class_<Interval>(m, "Interval")
        .def(py::init<double, double, IntervalKind>(), py::arg("t_a"), py::arg("t_b"),
             py::arg("kind") = IntervalKind::minimal)
        .def_readwrite("t_a", &Interval::t_a)
        .def_readwrite("t_b", &Interval::t_b)
        .def_readwrite("kind", &Interval::kind)
        .def_property_readonly("length", &Interval::length)
        .def(py::self == py::self)
        .def("__repr__", [](const Interval& iv) {
            return "Interval(" + std::to_string(iv.t_a) + ", " + std::to_string(iv.t_b) + ", " +
                   to_string(iv.kind) + ")";
        });

    py::class_<Polyline>(m, "Polyline")
        .def(py::init([](const std::vector<XY>& xy, std::optional<double> eps) {
                 const auto pts = to_points(xy);
                 return eps ? Polyline::build(pts, *eps) : Polyline::build(pts);
             }),
             py::arg("vertices"), py::arg("eps_geom") = py::none())
        .def_property_readonly("vertices", [](const Polyline& p) { return to_xy(p.vertices()); })
        .def_property_readonly("cum_lengths", &Polyline::cum_lengths)
        .def_property_readonly("length", &Polyline::length)
        .def_property_readonly("segment_count", &Polyline::segment_count)
        .def("__len__", &Polyline::vertex_count)
        .def("point_at", [](const Polyline& p, double t) {
            const auto q = p.point_at(t);
            return XY{q.x, q.y};
        })
        .def("chord_distance", &Polyline::chord_distance)
        .def("subchain", &Polyline::subchain);

    py::class_<SampledSignal>(m, "SampledSignal")
        .def_readonly("values", &SampledSignal::values)
        .def_readonly("dt", &SampledSignal::dt)
        .def_readonly("domain_length", &SampledSignal::domain_length);

    py::class_<Fold>(m, "Fold")
        .def_readonly("label", &Fold::label)
        .def_readonly("interval", &Fold::interval)
        .def_readonly("minimal_children", &Fold::minimal_children)
        .def_readonly("width", &Fold::width)
        .def_readonly("depth", &Fold::depth)
        .def_readonly("arc_length", &Fold::arc_length);

    py::class_<FoldReport>(m, "FoldReport")
        .def_readonly("folds", &FoldReport::folds)
        .def_readonly("minimal_subsets", &FoldReport::minimal_subsets)
        .def_readonly("maximal_subsets", &FoldReport::maximal_subsets)
        .def_readonly("raw_orientation", &FoldReport::raw_orientation)
        .def_readonly("smoothed_orientation", &FoldReport::smoothed_orientation)
        .def_readonly("cutoff", &FoldReport::cutoff)
        .def_property_readonly("chirality",
                               [](const FoldReport& r) { return std::string(to_string(r.chirality.direction)); })
        .def_property_readonly("low_confidence", [](const FoldReport& r) { return r.chirality.low_confidence; })
        .def_property_readonly("side", [](const FoldReport& r) { return std::string(to_string(r.side)); })
        .def_property_readonly("offset", [](const FoldReport& r) { return to_xy(r.offset.vertices); })
        .def("to_json", [](const FoldReport& r) { return io::report_to_json(r).dump(); })
        .def("to_svg", [](const FoldReport& r) { return svg::render_report(r); });

    m.def(
        "detect_folds",
        [](const Polyline& p, double delta, double tau, double smoothing, std::size_t samples,
           const std::string& side, double rho, const std::string& mode) {
            py::gil_scoped_release release;
            return detect_folds(p, make_params(delta, tau, smoothing, samples, side, rho, mode));
        },
        py::arg("polyline"), py::arg("delta"), py::arg("tau") = MinimalParams{}.tau,
        py::arg("smoothing") = MinimalParams{}.smoothing, py::arg("samples") = 0, py::arg("side") = "auto",
        py::arg("rho") = MaximalParams{}.rho, py::arg("mode") = "overlap");

    m.def(
        "estimate_delta",
        [](const Polyline& p, double tau, double smoothing, std::size_t samples) {
            return estimate_delta(p, make_params(1.0, tau, smoothing, samples, "auto", 3.0, "overlap"));
        },
        py::arg("polyline"), py::arg("tau") = MinimalParams{}.tau,
        py::arg("smoothing") = MinimalParams{}.smoothing, py::arg("samples") = 0);

    m.def(
        "minimal_subsets",
        [](const Polyline& p, double tau, double smoothing, std::size_t samples) {
            return minimal_subsets(p, MinimalParams{tau, smoothing, samples});
        },
        py::arg("polyline"), py::arg("tau") = MinimalParams{}.tau,
        py::arg("smoothing") = MinimalParams{}.smoothing, py::arg("samples") = 0);

    m.def("smoothing_factor_for_wavelength", &smoothing_factor_for_wavelength, py::arg("length"),
          py::arg("samples"), py::arg("wavelength"));
    m.def("default_sample_count", &default_sample_count, py::arg("segment_count"));

    m.def(
        "maximal_subsets",
        [](const Polyline& p, double delta, const std::string& side, double rho) {
            const auto params = make_params(delta, MinimalParams{}.tau, MinimalParams{}.smoothing, 0, side, rho,
                                            "overlap");
            return maximal_subsets(p, params.maximal);
        },
        py::arg("polyline"), py::arg("delta"), py::arg("side") = "auto", py::arg("rho") = MaximalParams{}.rho);

    m.def(
        "self_intersections",
        [](const std::vector<XY>& chain) {
            std::vector<std::tuple<std::size_t, std::size_t, double, double, XY>> out;
            for (const auto& x : self_intersections(to_points(chain)))
                out.emplace_back(x.seg_i, x.seg_j, x.u_i, x.u_j, XY{x.point.x, x.point.y});
            return out;
        },
        py::arg("chain"));

    m.def(
        "orientation_samples",
        [](const Polyline& p, std::size_t m_samples) {
            return sample_uniform(orientation_function(p), m_samples ? m_samples
                                                                     : default_sample_count(p.segment_count()));
        },
        py::arg("polyline"), py::arg("samples") = 0);

    m.def(
        "smooth_lowpass",
        [](const std::vector<double>& values, double domain_length, std::size_t cutoff) {
            if (values.size() < 2) throw Error(ErrorKind::BadParam, "need at least two samples");
            SampledSignal s{values, domain_length / static_cast<double>(values.size() - 1), domain_length};
            return smooth_lowpass(s, cutoff).values;
        },
        py::arg("values"), py::arg("domain_length"), py::arg("cutoff"));

    m.def(
        "generate_comb",
        [](std::size_t teeth, double width, double depth, double spacing, double corner_radius,
           double vertex_spacing, double noise, std::uint64_t seed, const std::string& chirality) {
            synth::CombSpec s;
            s.tooth_count = teeth;
            s.tooth_width = width;
            s.tooth_depth = depth;
            s.spacing = spacing;
            s.corner_radius = corner_radius;
            s.vertex_spacing = vertex_spacing;
            s.noise = noise;
            s.seed = seed;
            s.chirality = chirality == "right" ? Chirality::right : Chirality::left;
            const auto fx = synth::generate_comb(s);
            std::vector<Interval> mouths;
            for (const auto& t : fx.truth.folds) mouths.push_back(t.mouth);
            return std::make_pair(fx.polyline, mouths);
        },
        py::arg("teeth") = 3, py::arg("width") = 1.0, py::arg("depth") = 3.0, py::arg("spacing") = 3.0,
        py::arg("corner_radius") = 0.25, py::arg("vertex_spacing") = 0.25, py::arg("noise") = 0.0,
        py::arg("seed") = 1, py::arg("chirality") = "left",
        "Returns (polyline, ground-truth mouth intervals).");

    m.def(
        "generate_bulge",
        [](double mouth, double depth, double vertex_spacing) {
            return synth::generate_bulge(mouth, depth, vertex_spacing).polyline;
        },
        py::arg("mouth_width"), py::arg("depth"), py::arg("vertex_spacing") = 0.25);

    m.attr("__version__") = MACRO_STRINGIFY(VERSION_INFO);
}
