#include "foldex/cli.hpp"

#include <algorithm>
#include <atomic>
#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <mutex>
#include <numbers>
#include <optional>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <spdlog/sinks/stdout_color_sinks.h>
#include <spdlog/spdlog.h>

#include "foldex/error.hpp"
#include "foldex/folds.hpp"
#include "foldex/report_io.hpp"
#include "foldex/service.hpp"
#include "foldex/svg.hpp"
#include "foldex/synth.hpp"

namespace fs = std::filesystem;

namespace foldex::cli {
namespace {

constexpr int exit_ok = 0;
constexpr int exit_error = 1;
constexpr int exit_no_folds = 2;

struct DetectOptions {
    std::string input;
    std::string out;
    std::string svg;
    double tau = 2.0 * std::numbers::pi / 3.0;
    std::optional<double> delta;
    bool delta_auto = false;
    double smooth = 0.05;
    std::size_t samples = 0;
    std::string side = "auto";
    double rho = 3.0;
    std::string mode = "overlap";
    std::string format;
    unsigned jobs = 0;
};

DetectionParams params_from(const DetectOptions& o) {
    DetectionParams p;
    p.minimal.tau = o.tau;
    p.minimal.smoothing = o.smooth;
    p.minimal.samples = o.samples;
    p.maximal.delta = o.delta.value_or(1.0);
    p.maximal.side = o.side == "left" ? SideMode::left : o.side == "right" ? SideMode::right : SideMode::automatic;
    p.maximal.rho = o.rho;
    p.mode = o.mode == "strict" ? ContainmentMode::strict : ContainmentMode::overlap;
    return p;
}

bool is_polyline_input(const fs::path& p) {
    const auto name = p.filename().string();
    auto ends_with = [&](std::string_view s) {
        return name.size() >= s.size() && name.compare(name.size() - s.size(), s.size(), s) == 0;
    };
    if (ends_with(".report.json") || ends_with(".truth.json")) return false;
    return ends_with(".json") || ends_with(".csv");
}

fs::path default_report_path(const fs::path& input, const fs::path& dir) {
    return dir / (input.stem().string() + ".report.json");
}

// Runs detection for one file and writes its outputs. Nothing is written
// unless detection succeeded.
int detect_one(const fs::path& input, const fs::path& out, const fs::path& svg, const DetectOptions& o) {
    try {
        std::optional<io::InputFormat> fmt;
        if (!o.format.empty()) fmt = io::input_format_from_string(o.format);
        const auto doc = io::read_polyline_file(input, fmt);
        const Polyline p = doc.to_polyline();
        DetectionParams params = params_from(o);
        if (o.delta_auto) {
            params.maximal.delta = estimate_delta(p, params);
            spdlog::info("{}: estimated delta {}", input.string(), params.maximal.delta);
        }
        FoldReport report = detect_folds(p, params);
        const std::size_t folds = report.folds.size();
        if (report.chirality.low_confidence)
            spdlog::warn("{}: chirality is low-confidence ({} left / {} right pairs)", input.string(),
                         report.chirality.left_pairs, report.chirality.right_pairs);

        const std::string svg_text =
            svg.empty() ? std::string{} : svg::render_report(report, {.title = doc.name});
        const auto text = io::serialize_report(io::make_report_document(std::move(report), doc.name));
        if (out == "-") {
            std::cout << text << std::flush;
        } else {
            io::write_text_file(out, text);
        }
        if (!svg.empty()) io::write_text_file(svg, svg_text);
        spdlog::info("{}: {} folds", input.string(), folds);
        return folds > 0 ? exit_ok : exit_no_folds;
    } catch (const std::exception& e) {
        spdlog::error("{}: {}", input.string(), e.what());
        return exit_error;
    }
}

int cmd_detect(const DetectOptions& o) {
    if (!o.delta && !o.delta_auto) {
        spdlog::error("--delta is required unless --delta-auto is given");
        return exit_error;
    }
    const fs::path input(o.input);
    if (!fs::is_directory(input)) {
        const fs::path out = o.out.empty() ? default_report_path(input, input.parent_path()) : fs::path(o.out);
        return detect_one(input, out, o.svg, o);
    }

    std::vector<fs::path> files;
    for (const auto& entry : fs::directory_iterator(input))
        if (entry.is_regular_file() && is_polyline_input(entry.path())) files.push_back(entry.path());
    std::sort(files.begin(), files.end());
    if (files.empty()) {
        spdlog::error("no .json or .csv polylines in {}", input.string());
        return exit_error;
    }
    const fs::path out_dir = o.out.empty() ? input : fs::path(o.out);
    fs::create_directories(out_dir);
    if (!o.svg.empty()) fs::create_directories(o.svg);

    std::vector<int> codes(files.size(), exit_error);
    std::atomic<std::size_t> next{0};
    const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
    const auto workers = std::min<std::size_t>(o.jobs ? o.jobs : hw, files.size());
    {
        std::vector<std::jthread> pool;
        for (std::size_t w = 0; w < workers; ++w) {
            pool.emplace_back([&] {
                for (std::size_t i; (i = next.fetch_add(1)) < files.size();) {
                    const auto svg = o.svg.empty() ? fs::path{}
                                                   : fs::path(o.svg) / (files[i].stem().string() + ".svg");
                    codes[i] = detect_one(files[i], default_report_path(files[i], out_dir), svg, o);
                }
            });
        }
    }
    if (std::count(codes.begin(), codes.end(), exit_error)) return exit_error;
    return std::count(codes.begin(), codes.end(), exit_ok) ? exit_ok : exit_no_folds;
}

int cmd_render(const std::string& report_path, const std::string& out) {
    try {
        const auto doc = io::parse_report(io::read_text_file(report_path));
        io::write_text_file(out, svg::render_report(doc.report, {.title = doc.name}));
        return exit_ok;
    } catch (const std::exception& e) {
        spdlog::error("{}: {}", report_path, e.what());
        return exit_error;
    }
}

struct SynthOutput {
    std::string out;
    std::string truth;
    std::string format;
    std::string name;
};

int write_fixture(const synth::Fixture& fx, const SynthOutput& so) {
    const fs::path out(so.out);
    const auto format = so.format.empty()
                            ? (out.extension() == ".csv" ? io::InputFormat::csv : io::InputFormat::json)
                            : io::input_format_from_string(so.format);
    const auto doc = io::PolylineDocument::from_polyline(fx.polyline, so.name.empty() ? out.stem().string() : so.name);
    io::write_text_file(out, format == io::InputFormat::csv ? io::serialize_polyline_csv(doc)
                                                            : io::serialize_polyline_json(doc));
    const fs::path truth = so.truth.empty() ? out.parent_path() / (out.stem().string() + ".truth.json")
                                            : fs::path(so.truth);
    io::write_text_file(truth, io::truth_to_json(fx.truth).dump(1) + "\n");
    spdlog::info("wrote {} ({} vertices) and {}", out.string(), fx.polyline.vertex_count(), truth.string());
    return exit_ok;
}

std::once_flag logging_once;

}  // namespace

void configure_logging() {
    std::call_once(logging_once, [] {
        auto logger = spdlog::stderr_color_mt("foldex");
        logger->set_pattern("foldex: %^%l%$: %v");
        spdlog::set_default_logger(logger);
    });
    const char* env = std::getenv("FOLDEX_LOG");
    const auto level = env && *env ? spdlog::level::from_str(env) : spdlog::level::warn;
    spdlog::set_level(level);
}

int run(int argc, const char* const* argv) {
    configure_logging();

    CLI::App app{"Detect fold-like features in membrane polylines"};
    app.set_version_flag("--version", std::string(FOLDEX_VERSION));
    app.require_subcommand(1);

    DetectOptions d;
    auto* detect = app.add_subcommand("detect", "Run fold detection on a polyline file or a directory of them");
    detect->add_option("input", d.input, "Polyline file (.json/.csv) or directory")->required();
    detect->add_option("-o,--out", d.out, "Report path ('-' for stdout), or output directory for directory input");
    detect->add_option("--tau", d.tau, "Turning threshold in radians")->capture_default_str();
    auto* delta_opt = detect->add_option("--delta", d.delta, "Offset distance, about the width of an average fold");
    detect->add_flag("--delta-auto", d.delta_auto, "Estimate delta from a pilot pass")->excludes(delta_opt);
    detect->add_option("--smooth", d.smooth, "Smoothing factor in (0, 1]")->capture_default_str();
    detect->add_option("--samples", d.samples, "Orientation samples (0 picks a default)");
    detect->add_option("--side", d.side, "Offset side")->check(CLI::IsMember({"left", "right", "auto"}))
        ->capture_default_str();
    detect->add_option("--rho", d.rho, "Significance ratio of arc length to chord")->capture_default_str();
    detect->add_option("--mode", d.mode, "How a minimal subset must support a maximal one")
        ->check(CLI::IsMember({"overlap", "strict"}))
        ->capture_default_str();
    detect->add_option("--format", d.format, "Input format (default from the file extension)")
        ->check(CLI::IsMember({"json", "csv"}));
    detect->add_option("--svg", d.svg, "Also render an SVG (a directory for directory input)");
    detect->add_option("-j,--jobs", d.jobs, "Parallel workers for directory input (0 = all cores)");

    std::string report_path, svg_out;
    auto* render = app.add_subcommand("render", "Render a report as a two-panel SVG");
    render->add_option("report", report_path, "Report JSON")->required();
    render->add_option("out", svg_out, "Output SVG path")->required();

    auto* synth_cmd = app.add_subcommand("synth", "Write a synthetic fixture and its ground truth");
    synth_cmd->require_subcommand(1);
    SynthOutput so;
    auto add_output = [&so](CLI::App* c) {
        c->add_option("-o,--out", so.out, "Polyline output path")->required();
        c->add_option("--truth", so.truth, "Ground-truth path (default <out>.truth.json)");
        c->add_option("--format", so.format, "Polyline format (default from the extension)")
            ->check(CLI::IsMember({"json", "csv"}));
        c->add_option("--name", so.name, "Dataset name stored in the document");
    };
    synth::CombSpec comb;
    std::string comb_chirality = "left";
    auto* comb_cmd = synth_cmd->add_subcommand("comb", "Baseline with U-shaped teeth");
    comb_cmd->add_option("--teeth", comb.tooth_count)->capture_default_str();
    comb_cmd->add_option("--width", comb.tooth_width)->capture_default_str();
    comb_cmd->add_option("--depth", comb.tooth_depth)->capture_default_str();
    comb_cmd->add_option("--spacing", comb.spacing)->capture_default_str();
    comb_cmd->add_option("--radius", comb.corner_radius)->capture_default_str();
    comb_cmd->add_option("--vertex-spacing", comb.vertex_spacing)->capture_default_str();
    comb_cmd->add_option("--noise", comb.noise, "Std-dev of the vertex jitter")->capture_default_str();
    comb_cmd->add_option("--lead", comb.lead)->capture_default_str();
    comb_cmd->add_option("--seed", comb.seed)->capture_default_str();
    comb_cmd->add_option("--chirality", comb_chirality)->check(CLI::IsMember({"left", "right"}))
        ->capture_default_str();
    add_output(comb_cmd);

    double mouth = 6.0, bulge_depth = 2.0, bulge_spacing = 0.25;
    std::string bulge_chirality = "left";
    auto* bulge_cmd = synth_cmd->add_subcommand("bulge", "Wide bump that is not a fold");
    bulge_cmd->add_option("--mouth", mouth)->capture_default_str();
    bulge_cmd->add_option("--depth", bulge_depth)->capture_default_str();
    bulge_cmd->add_option("--vertex-spacing", bulge_spacing)->capture_default_str();
    bulge_cmd->add_option("--chirality", bulge_chirality)->check(CLI::IsMember({"left", "right"}))
        ->capture_default_str();
    add_output(bulge_cmd);

    std::string listen = "127.0.0.1:8787";
    service::Options sopt;
    std::string static_dir, data_dir;
    auto* serve_cmd = app.add_subcommand("serve", "Serve the analysis API and the tuning UI");
    serve_cmd->add_option("--listen", listen, "host:port")->capture_default_str();
    serve_cmd->add_option("--static", static_dir, "Directory of the built UI bundle");
    serve_cmd->add_option("--data-dir", data_dir, "Persist uploaded datasets here");
    serve_cmd->add_option("--cache", sopt.cache_capacity, "Cached analyses (LRU)")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? exit_ok : exit_error;
    }

    try {
        if (*detect) return cmd_detect(d);
        if (*render) return cmd_render(report_path, svg_out);
        if (*comb_cmd) {
            comb.chirality = comb_chirality == "right" ? Chirality::right : Chirality::left;
            return write_fixture(synth::generate_comb(comb), so);
        }
        if (*bulge_cmd) {
            const auto c = bulge_chirality == "right" ? Chirality::right : Chirality::left;
            return write_fixture(synth::generate_bulge(mouth, bulge_depth, bulge_spacing, c), so);
        }
        if (*serve_cmd) {
            sopt.static_dir = static_dir;
            sopt.data_dir = data_dir;
            const auto [host, port] = service::parse_listen(listen);
            return service::serve(sopt, host, port);
        }
    } catch (const std::exception& e) {
        spdlog::error("{}", e.what());
        return exit_error;
    }
    return exit_error;
}

}  // namespace foldex::cli
