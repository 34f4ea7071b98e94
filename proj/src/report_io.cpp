#include "foldex/report_io.hpp"

#include <charconv>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <fstream>
#include <sstream>
#include <system_error>

#include "foldex/error.hpp"

namespace foldex {

using nlohmann::json;

// Enum names double as the wire format.
NLOHMANN_JSON_SERIALIZE_ENUM(IntervalKind, {{IntervalKind::minimal, "minimal"},
                                            {IntervalKind::maximal, "maximal"},
                                            {IntervalKind::fold, "fold"}})
NLOHMANN_JSON_SERIALIZE_ENUM(ExtremumKind, {{ExtremumKind::max, "max"}, {ExtremumKind::min, "min"}})
NLOHMANN_JSON_SERIALIZE_ENUM(Chirality, {{Chirality::left, "left"}, {Chirality::right, "right"}})
NLOHMANN_JSON_SERIALIZE_ENUM(Side, {{Side::left, "left"}, {Side::right, "right"}})
NLOHMANN_JSON_SERIALIZE_ENUM(SideMode, {{SideMode::left, "left"},
                                        {SideMode::right, "right"},
                                        {SideMode::automatic, "auto"}})
NLOHMANN_JSON_SERIALIZE_ENUM(NormalWeighting, {{NormalWeighting::length, "length"},
                                               {NormalWeighting::equal, "equal"}})
NLOHMANN_JSON_SERIALIZE_ENUM(ContainmentMode, {{ContainmentMode::overlap, "overlap"},
                                               {ContainmentMode::strict, "strict"}})

static void to_json(json& j, const Point2& p) { j = json::array({p.x, p.y}); }
static void from_json(const json& j, Point2& p) {
    if (!j.is_array() || j.size() != 2) throw Error(ErrorKind::Parse, "vertex must be an [x, y] pair");
    p.x = j.at(0).get<double>();
    p.y = j.at(1).get<double>();
}

static void to_json(json& j, const Interval& iv) {
    j = json{{"t_a", iv.t_a}, {"t_b", iv.t_b}, {"kind", iv.kind}};
}
static void from_json(const json& j, Interval& iv) {
    j.at("t_a").get_to(iv.t_a);
    j.at("t_b").get_to(iv.t_b);
    j.at("kind").get_to(iv.kind);
}

static void to_json(json& j, const Extremum& e) {
    j = json{{"t", e.t}, {"value", e.value}, {"kind", e.kind}};
}
static void from_json(const json& j, Extremum& e) {
    j.at("t").get_to(e.t);
    j.at("value").get_to(e.value);
    j.at("kind").get_to(e.kind);
}

static void to_json(json& j, const SampledSignal& s) {
    j = json{{"dt", s.dt}, {"domain_length", s.domain_length}, {"values", s.values}};
}
static void from_json(const json& j, SampledSignal& s) {
    j.at("dt").get_to(s.dt);
    j.at("domain_length").get_to(s.domain_length);
    j.at("values").get_to(s.values);
}

static void to_json(json& j, const ChiralityEstimate& c) {
    j = json{{"direction", c.direction},         {"low_confidence", c.low_confidence},
             {"left_pairs", c.left_pairs},       {"right_pairs", c.right_pairs},
             {"left_amplitude", c.left_amplitude}, {"right_amplitude", c.right_amplitude}};
}
static void from_json(const json& j, ChiralityEstimate& c) {
    j.at("direction").get_to(c.direction);
    j.at("low_confidence").get_to(c.low_confidence);
    j.at("left_pairs").get_to(c.left_pairs);
    j.at("right_pairs").get_to(c.right_pairs);
    j.at("left_amplitude").get_to(c.left_amplitude);
    j.at("right_amplitude").get_to(c.right_amplitude);
}

static void to_json(json& j, const DetectionParams& p) {
    j = json{{"tau", p.minimal.tau},
             {"smoothing", p.minimal.smoothing},
             {"samples", p.minimal.samples},
             {"eps_flat", p.minimal.eps_flat},
             {"chirality_tau", p.minimal.chirality_tau},
             {"delta", p.maximal.delta},
             {"side", p.maximal.side},
             {"rho", p.maximal.rho},
             {"chord_slack", p.maximal.chord_slack},
             {"weighting", p.maximal.weighting},
             {"mode", p.mode}};
}
static void from_json(const json& j, DetectionParams& p) {
    j.at("tau").get_to(p.minimal.tau);
    j.at("smoothing").get_to(p.minimal.smoothing);
    j.at("samples").get_to(p.minimal.samples);
    j.at("eps_flat").get_to(p.minimal.eps_flat);
    if (j.contains("chirality_tau")) j.at("chirality_tau").get_to(p.minimal.chirality_tau);
    j.at("delta").get_to(p.maximal.delta);
    j.at("side").get_to(p.maximal.side);
    j.at("rho").get_to(p.maximal.rho);
    j.at("chord_slack").get_to(p.maximal.chord_slack);
    j.at("weighting").get_to(p.maximal.weighting);
    j.at("mode").get_to(p.mode);
}

static void to_json(json& j, const Fold& f) {
    j = json{{"label", f.label},   {"interval", f.interval}, {"minimal_children", f.minimal_children},
             {"width", f.width},   {"depth", f.depth},       {"arc_length", f.arc_length}};
}
static void from_json(const json& j, Fold& f) {
    j.at("label").get_to(f.label);
    j.at("interval").get_to(f.interval);
    j.at("minimal_children").get_to(f.minimal_children);
    j.at("width").get_to(f.width);
    j.at("depth").get_to(f.depth);
    j.at("arc_length").get_to(f.arc_length);
}

namespace io {

const char* to_string(InputFormat f) noexcept { return f == InputFormat::csv ? "csv" : "json"; }

InputFormat input_format_from_string(std::string_view s) {
    if (s == "json") return InputFormat::json;
    if (s == "csv") return InputFormat::csv;
    throw Error(ErrorKind::BadParam, "unknown input format '" + std::string(s) + "'");
}

Polyline PolylineDocument::to_polyline() const { return Polyline::build(vertices); }

PolylineDocument PolylineDocument::from_polyline(const Polyline& p, std::string name, std::string unit) {
    PolylineDocument doc;
    doc.name = std::move(name);
    doc.unit = std::move(unit);
    doc.vertices = p.vertices();
    return doc;
}

PolylineDocument parse_polyline_json(std::string_view text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw Error(ErrorKind::Parse, std::string("polyline JSON: ") + e.what());
    }
    if (!j.is_object()) throw Error(ErrorKind::Parse, "polyline JSON must be an object");
    PolylineDocument doc;
    try {
        doc.version = j.value("version", 1);
        if (doc.version != 1)
            throw Error(ErrorKind::Parse, "unsupported polyline document version " + std::to_string(doc.version));
        doc.name = j.value("name", std::string{});
        doc.unit = j.value("unit", std::string{});
        if (!j.contains("vertices") || !j["vertices"].is_array())
            throw Error(ErrorKind::Parse, "polyline JSON needs a \"vertices\" array");
        for (const auto& v : j["vertices"]) {
            Point2 p;
            from_json(v, p);
            doc.vertices.push_back(p);
        }
    } catch (const json::exception& e) {
        throw Error(ErrorKind::Parse, std::string("polyline JSON: ") + e.what());
    }
    return doc;
}

namespace {

std::string_view trim(std::string_view s) {
    const auto b = s.find_first_not_of(" \t\r");
    if (b == std::string_view::npos) return {};
    const auto e = s.find_last_not_of(" \t\r");
    return s.substr(b, e - b + 1);
}

double parse_number(std::string_view s, std::size_t line) {
    s = trim(s);
    if (!s.empty() && s.front() == '+') s.remove_prefix(1);
    double v = 0.0;
    const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (s.empty() || ec != std::errc{} || ptr != s.data() + s.size())
        throw Error(ErrorKind::Parse,
                    "CSV line " + std::to_string(line) + ": '" + std::string(s) + "' is not a number");
    return v;
}

}  // namespace

PolylineDocument parse_polyline_csv(std::string_view text) {
    PolylineDocument doc;
    std::size_t line_no = 0;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++line_no;
        if (const auto hash = line.find('#'); hash != std::string_view::npos) line = line.substr(0, hash);
        line = trim(line);
        if (line.empty()) continue;
        const auto comma = line.find(',');
        if (comma == std::string_view::npos || line.find(',', comma + 1) != std::string_view::npos)
            throw Error(ErrorKind::Parse, "CSV line " + std::to_string(line_no) + ": expected 'x,y'");
        doc.vertices.push_back({parse_number(line.substr(0, comma), line_no),
                                parse_number(line.substr(comma + 1), line_no)});
    }
    return doc;
}

std::string serialize_polyline_json(const PolylineDocument& doc) {
    json j{{"version", doc.version}, {"name", doc.name}, {"unit", doc.unit}};
    j["vertices"] = json::array();
    for (const auto& p : doc.vertices) j["vertices"].push_back(json::array({p.x, p.y}));
    return j.dump() + "\n";
}

std::string serialize_polyline_csv(const PolylineDocument& doc) {
    std::string out;
    if (!doc.name.empty()) out += "# " + doc.name + "\n";
    char buf[64];
    for (const auto& p : doc.vertices) {
        auto r = std::to_chars(buf, buf + sizeof buf, p.x);
        *r.ptr++ = ',';
        r = std::to_chars(r.ptr, buf + sizeof buf, p.y);
        out.append(buf, r.ptr);
        out += '\n';
    }
    return out;
}

std::string read_text_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(ErrorKind::Parse, "cannot open " + path.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw Error(ErrorKind::Parse, "cannot write " + tmp.string());
        out.write(text.data(), static_cast<std::streamsize>(text.size()));
        if (!out) throw Error(ErrorKind::Parse, "write failed for " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp, ec);
        throw Error(ErrorKind::Parse, "cannot move output into place at " + path.string());
    }
}

PolylineDocument read_polyline_file(const std::filesystem::path& path, std::optional<InputFormat> format) {
    if (!format) {
        const auto ext = path.extension().string();
        format = (ext == ".csv" || ext == ".txt") ? InputFormat::csv : InputFormat::json;
    }
    const auto text = read_text_file(path);
    auto doc = *format == InputFormat::csv ? parse_polyline_csv(text) : parse_polyline_json(text);
    if (doc.name.empty()) doc.name = path.stem().string();
    return doc;
}

std::string utc_timestamp() {
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

ReportDocument make_report_document(FoldReport report, std::string name) {
    return ReportDocument{"foldex", FOLDEX_VERSION, utc_timestamp(), std::move(name), std::move(report)};
}

json params_to_json(const DetectionParams& p) { return p; }

json report_to_json(const FoldReport& r) {
    json j;
    j["params"] = r.params;
    j["polyline"] = {{"length", r.polyline.length()}, {"vertices", r.polyline.vertices()}};
    j["chirality"] = r.chirality;
    j["side"] = r.side;
    j["orientation"] = {{"cutoff", r.cutoff},
                        {"raw", r.raw_orientation},
                        {"smoothed", r.smoothed_orientation},
                        {"extrema", r.extrema}};
    j["offset"] = {{"delta", r.offset.delta}, {"side", r.offset.side}, {"vertices", r.offset.vertices}};
    j["minimal_subsets"] = r.minimal_subsets;
    j["maximal_subsets"] = r.maximal_subsets;
    j["folds"] = r.folds;
    return j;
}

FoldReport report_from_json(const json& j) {
    try {
        const auto vertices = j.at("polyline").at("vertices").get<std::vector<Point2>>();
        // Stored vertices are already cleaned; rebuilding must not drop any.
        FoldReport r(j.at("params").get<DetectionParams>(), Polyline::build(vertices, 0.0));
        r.params.validate();
        j.at("chirality").get_to(r.chirality);
        j.at("side").get_to(r.side);
        const auto& o = j.at("orientation");
        o.at("cutoff").get_to(r.cutoff);
        o.at("raw").get_to(r.raw_orientation);
        o.at("smoothed").get_to(r.smoothed_orientation);
        o.at("extrema").get_to(r.extrema);
        const auto& off = j.at("offset");
        off.at("delta").get_to(r.offset.delta);
        off.at("side").get_to(r.offset.side);
        off.at("vertices").get_to(r.offset.vertices);
        j.at("minimal_subsets").get_to(r.minimal_subsets);
        j.at("maximal_subsets").get_to(r.maximal_subsets);
        j.at("folds").get_to(r.folds);
        return r;
    } catch (const json::exception& e) {
        throw Error(ErrorKind::Parse, std::string("report JSON: ") + e.what());
    }
}

std::string serialize_report(const ReportDocument& doc, int indent) {
    json j{{"tool", doc.tool},
           {"version", doc.version},
           {"timestamp", doc.timestamp},
           {"name", doc.name},
           {"report", report_to_json(doc.report)}};
    return j.dump(indent) + "\n";
}

ReportDocument parse_report(std::string_view text) {
    json j;
    try {
        j = json::parse(text);
        return ReportDocument{j.at("tool").get<std::string>(), j.at("version").get<std::string>(),
                              j.at("timestamp").get<std::string>(), j.value("name", std::string{}),
                              report_from_json(j.at("report"))};
    } catch (const json::exception& e) {
        throw Error(ErrorKind::Parse, std::string("report JSON: ") + e.what());
    }
}

json truth_to_json(const synth::GroundTruth& t) {
    auto tooth = [](const synth::ToothTruth& x) {
        return json{{"mouth", x.mouth},   {"shoulders", x.shoulders}, {"tip", x.tip},
                    {"width", x.width},   {"depth", x.depth},         {"turning", x.turning}};
    };
    json j{{"folds", json::array()}, {"decoys", json::array()}, {"bulges", t.bulges}};
    for (const auto& f : t.folds) j["folds"].push_back(tooth(f));
    for (const auto& d : t.decoys) j["decoys"].push_back(tooth(d));
    return j;
}

}  // namespace io
}  // namespace foldex
