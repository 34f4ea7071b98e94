#include "foldex/service.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <set>

#include <httplib.h>
#include <spdlog/spdlog.h>

#include "foldex/error.hpp"
#include "foldex/report_io.hpp"

namespace foldex::service {
namespace {

using nlohmann::json;

constexpr std::size_t max_samples = std::size_t{1} << 20;

constexpr const char* placeholder_page = R"(<!doctype html>
<html lang="en">
<head><meta charset="utf-8"><title>foldex</title></head>
<body>
<h1>foldex</h1>
<p>The tuning UI bundle is not installed. Start the server with <code>--static DIR</code>
pointing at a built bundle, or use the JSON API:</p>
<ul>
<li><code>POST /api/datasets</code> with a polyline document</li>
<li><code>GET /api/datasets/{id}/analysis?tau=&amp;delta=&amp;smooth=&amp;samples=&amp;side=&amp;rho=&amp;mode=</code></li>
</ul>
</body>
</html>
)";

double parse_double(const std::string& key, const std::string& v) {
    double out = 0.0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (v.empty() || ec != std::errc{} || ptr != v.data() + v.size() || !std::isfinite(out))
        throw Error(ErrorKind::BadParam, key + ": '" + v + "' is not a finite number");
    return out;
}

std::size_t parse_count(const std::string& key, const std::string& v) {
    std::size_t out = 0;
    const auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), out);
    if (v.empty() || ec != std::errc{} || ptr != v.data() + v.size())
        throw Error(ErrorKind::BadParam, key + ": '" + v + "' is not a non-negative integer");
    return out;
}

Response error_response(int status, const std::string& kind, const std::string& message) {
    return {status, json{{"error", kind}, {"message", message}}.dump(), "application/json"};
}

bool localhost_origin(const std::string& origin) {
    for (const char* prefix : {"http://localhost", "http://127.0.0.1", "http://[::1]"}) {
        const std::string_view p(prefix);
        if (origin.rfind(p, 0) == 0 && (origin.size() == p.size() || origin[p.size()] == ':')) return true;
    }
    return false;
}

void apply(httplib::Response& res, const Response& r) {
    res.status = r.status;
    res.set_content(r.body, r.content_type);
}

}  // namespace

AnalysisRequest parse_analysis_query(const Query& query) {
    static const std::set<std::string> known{"tau", "delta", "smooth", "samples", "side", "rho", "mode"};
    AnalysisRequest req;
    for (const auto& [key, value] : query) {
        if (!known.count(key)) throw Error(ErrorKind::BadParam, "unknown parameter '" + key + "'");
        if (query.count(key) > 1) throw Error(ErrorKind::BadParam, "parameter '" + key + "' given twice");
        if (key == "tau") {
            req.params.minimal.tau = parse_double(key, value);
        } else if (key == "delta") {
            req.delta_auto = value == "auto";
            if (!req.delta_auto) req.params.maximal.delta = parse_double(key, value);
        } else if (key == "smooth") {
            req.params.minimal.smoothing = parse_double(key, value);
        } else if (key == "samples") {
            req.params.minimal.samples = parse_count(key, value);
            if (req.params.minimal.samples > max_samples)
                throw Error(ErrorKind::BadParam, "samples must not exceed " + std::to_string(max_samples));
        } else if (key == "side") {
            if (value == "left") req.params.maximal.side = SideMode::left;
            else if (value == "right") req.params.maximal.side = SideMode::right;
            else if (value == "auto") req.params.maximal.side = SideMode::automatic;
            else throw Error(ErrorKind::BadParam, "side must be left, right or auto");
        } else if (key == "rho") {
            req.params.maximal.rho = parse_double(key, value);
        } else if (key == "mode") {
            if (value == "overlap") req.params.mode = ContainmentMode::overlap;
            else if (value == "strict") req.params.mode = ContainmentMode::strict;
            else throw Error(ErrorKind::BadParam, "mode must be overlap or strict");
        }
    }
    req.params.validate();
    return req;
}

std::pair<std::string, int> parse_listen(std::string_view listen) {
    const auto colon = listen.rfind(':');
    if (colon == std::string_view::npos || colon == 0)
        throw Error(ErrorKind::BadParam, "listen address must look like host:port");
    std::string host(listen.substr(0, colon));
    if (host.size() > 2 && host.front() == '[' && host.back() == ']') host = host.substr(1, host.size() - 2);
    const auto port_str = listen.substr(colon + 1);
    int port = 0;
    const auto [ptr, ec] = std::from_chars(port_str.data(), port_str.data() + port_str.size(), port);
    if (ec != std::errc{} || ptr != port_str.data() + port_str.size() || port < 0 || port > 65535)
        throw Error(ErrorKind::BadParam, "bad port in listen address '" + std::string(listen) + "'");
    return {host, port};
}

std::optional<std::shared_ptr<const std::string>> ReportCache::get(const std::string& key) {
    std::lock_guard lock(mutex_);
    const auto it = index_.find(key);
    if (it == index_.end()) return std::nullopt;
    order_.splice(order_.begin(), order_, it->second);
    return it->second->second;
}

void ReportCache::put(const std::string& key, std::shared_ptr<const std::string> value) {
    if (capacity_ == 0) return;
    std::lock_guard lock(mutex_);
    if (const auto it = index_.find(key); it != index_.end()) {
        order_.splice(order_.begin(), order_, it->second);
        return;
    }
    order_.emplace_front(key, std::move(value));
    index_[key] = order_.begin();
    while (order_.size() > capacity_) {
        index_.erase(order_.back().first);
        order_.pop_back();
    }
}

std::size_t ReportCache::size() const {
    std::lock_guard lock(mutex_);
    return order_.size();
}

Service::Service(Options options)
    : options_(std::move(options)), cache_(options_.cache_capacity), id_rng_(std::random_device{}()) {
    if (!options_.data_dir.empty()) load_persisted();
}

std::string Service::new_id() {
    std::lock_guard lock(id_mutex_);
    for (;;) {
        char buf[33];
        std::snprintf(buf, sizeof buf, "%016llx%016llx", static_cast<unsigned long long>(id_rng_()),
                      static_cast<unsigned long long>(id_rng_()));
        std::string id(buf);
        std::shared_lock read(store_mutex_);
        if (!store_.count(id)) return id;
    }
}

void Service::load_persisted() {
    std::error_code ec;
    std::filesystem::create_directories(options_.data_dir, ec);
    for (const auto& entry : std::filesystem::directory_iterator(options_.data_dir, ec)) {
        if (entry.path().extension() != ".json") continue;
        try {
            const auto j = json::parse(io::read_text_file(entry.path()));
            auto doc = io::parse_polyline_json(j.at("document").dump());
            auto d = std::make_shared<const Dataset>(Dataset{entry.path().stem().string(), doc.name, doc.unit,
                                                              doc.to_polyline(),
                                                              j.value("uploaded_at", std::string{})});
            store_.emplace(d->id, std::move(d));
        } catch (const std::exception& e) {
            spdlog::warn("skipping persisted dataset {}: {}", entry.path().string(), e.what());
        }
    }
    spdlog::info("loaded {} persisted datasets from {}", store_.size(), options_.data_dir.string());
}

void Service::persist(const Dataset& d) const {
    io::PolylineDocument doc = io::PolylineDocument::from_polyline(d.polyline, d.name, d.unit);
    const json j{{"uploaded_at", d.uploaded_at}, {"document", json::parse(io::serialize_polyline_json(doc))}};
    io::write_text_file(options_.data_dir / (d.id + ".json"), j.dump() + "\n");
}

Response Service::create_dataset(std::string_view body) {
    try {
        const auto doc = io::parse_polyline_json(body);
        auto d = std::make_shared<const Dataset>(
            Dataset{new_id(), doc.name, doc.unit, doc.to_polyline(), io::utc_timestamp()});
        if (!options_.data_dir.empty()) persist(*d);
        const json out{{"id", d->id},
                       {"name", d->name},
                       {"vertices", d->polyline.vertex_count()},
                       {"length", d->polyline.length()}};
        {
            std::unique_lock lock(store_mutex_);
            store_.emplace(d->id, d);
        }
        spdlog::info("stored dataset {} ({} vertices)", d->id, d->polyline.vertex_count());
        return {201, out.dump(), "application/json"};
    } catch (const Error& e) {
        return error_response(400, to_string(e.kind()), e.what());
    }
}

std::shared_ptr<const Dataset> Service::find(const std::string& id) const {
    std::shared_lock lock(store_mutex_);
    const auto it = store_.find(id);
    return it == store_.end() ? nullptr : it->second;
}

std::size_t Service::dataset_count() const {
    std::shared_lock lock(store_mutex_);
    return store_.size();
}

Response Service::analysis(const std::string& id, const Query& query) {
    const auto dataset = find(id);
    if (!dataset) return error_response(404, "NotFound", "unknown dataset '" + id + "'");

    AnalysisRequest req;
    try {
        req = parse_analysis_query(query);
    } catch (const Error& e) {
        return error_response(400, to_string(e.kind()), e.what());
    }

    json key_params = io::params_to_json(req.params);
    if (req.delta_auto) key_params["delta"] = "auto";
    const std::string key = id + "|" + key_params.dump();
    if (auto hit = cache_.get(key)) return {200, **hit, "application/json"};

    try {
        if (req.delta_auto) req.params.maximal.delta = estimate_delta(dataset->polyline, req.params);
        const FoldReport report = detect_folds(dataset->polyline, req.params);
        json j = io::report_to_json(report);
        j["dataset"] = id;
        j["name"] = dataset->name;
        auto body = std::make_shared<const std::string>(j.dump());
        cache_.put(key, body);
        return {200, *body, "application/json"};
    } catch (const Error& e) {
        return error_response(400, to_string(e.kind()), e.what());
    }
}

void Service::mount(httplib::Server& server) {
    server.Post("/api/datasets", [this](const httplib::Request& req, httplib::Response& res) {
        apply(res, create_dataset(req.body));
    });
    server.Get(R"(/api/datasets/([^/]+))", [this](const httplib::Request& req, httplib::Response& res) {
        const auto d = find(req.matches[1]);
        if (!d) return apply(res, error_response(404, "NotFound", "unknown dataset"));
        const json out{{"id", d->id},
                       {"name", d->name},
                       {"unit", d->unit},
                       {"uploaded_at", d->uploaded_at},
                       {"vertices", d->polyline.vertex_count()},
                       {"length", d->polyline.length()}};
        apply(res, {200, out.dump(), "application/json"});
    });
    server.Get(R"(/api/datasets/([^/]+)/analysis)", [this](const httplib::Request& req, httplib::Response& res) {
        Query q(req.params.begin(), req.params.end());
        apply(res, analysis(req.matches[1], q));
    });
    server.Options(R"(/api/.*)", [](const httplib::Request&, httplib::Response& res) { res.status = 204; });

    server.set_post_routing_handler([](const httplib::Request& req, httplib::Response& res) {
        const auto origin = req.get_header_value("Origin");
        if (!origin.empty() && localhost_origin(origin)) {
            res.set_header("Access-Control-Allow-Origin", origin);
            res.set_header("Vary", "Origin");
            res.set_header("Access-Control-Allow-Methods", "GET, POST, OPTIONS");
            res.set_header("Access-Control-Allow-Headers", "Content-Type");
        }
    });

    const bool bundle = !options_.static_dir.empty() && std::filesystem::is_directory(options_.static_dir);
    if (bundle && server.set_mount_point("/", options_.static_dir.string())) {
        spdlog::info("serving UI bundle from {}", options_.static_dir.string());
    } else {
        if (!options_.static_dir.empty())
            spdlog::warn("static directory {} not found; serving placeholder page", options_.static_dir.string());
        server.Get("/", [](const httplib::Request&, httplib::Response& res) {
            res.set_content(placeholder_page, "text/html; charset=utf-8");
        });
    }
}

int serve(const Options& options, const std::string& host, int port) {
    Service service(options);
    httplib::Server server;
    service.mount(server);
    server.set_logger([](const httplib::Request& req, const httplib::Response& res) {
        spdlog::debug("{} {} -> {}", req.method, req.path, res.status);
    });
    if (!server.bind_to_port(host, port)) {
        spdlog::error("cannot listen on {}:{}", host, port);
        return 1;
    }
    spdlog::info("listening on http://{}:{}", host, port);
    return server.listen_after_bind() ? 0 : 1;
}

}  // namespace foldex::service
