#pragma once

#include <cstddef>
#include <filesystem>
#include <list>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <random>
#include <shared_mutex>
#include <string>
#include <string_view>
#include <unordered_map>

#include "foldex/folds.hpp"
#include "foldex/geometry.hpp"

namespace httplib {
class Server;
}

namespace foldex::service {

struct Options {
    std::filesystem::path static_dir;  // built UI bundle; empty serves a placeholder page
    std::filesystem::path data_dir;    // empty keeps datasets in memory only
    std::size_t cache_capacity = 64;
};

struct Dataset {
    std::string id;
    std::string name;
    std::string unit;
    Polyline polyline;
    std::string uploaded_at;
};

struct Response {
    int status = 200;
    std::string body;
    std::string content_type = "application/json";
};

// Detection parameters as requested; delta stays unset for the data-driven
// estimate.
struct AnalysisRequest {
    DetectionParams params;
    bool delta_auto = true;
};

using Query = std::multimap<std::string, std::string>;

/// Throws Error(BadParam) on unknown keys, malformed numbers or values the
/// detection rejects.
AnalysisRequest parse_analysis_query(const Query& query);

/// "host:port" with a numeric port.
std::pair<std::string, int> parse_listen(std::string_view listen);

// Thread-safe LRU keyed by string.
class ReportCache {
public:
    explicit ReportCache(std::size_t capacity) : capacity_(capacity) {}

    std::optional<std::shared_ptr<const std::string>> get(const std::string& key);
    void put(const std::string& key, std::shared_ptr<const std::string> value);
    std::size_t size() const;

private:
    using Entry = std::pair<std::string, std::shared_ptr<const std::string>>;
    std::size_t capacity_;
    mutable std::mutex mutex_;
    std::list<Entry> order_;  // most recent first
    std::unordered_map<std::string, std::list<Entry>::iterator> index_;
};

class Service {
public:
    explicit Service(Options options = {});

    Response create_dataset(std::string_view body);
    Response analysis(const std::string& id, const Query& query);
    std::shared_ptr<const Dataset> find(const std::string& id) const;
    std::size_t dataset_count() const;
    const ReportCache& cache() const { return cache_; }

    /// Registers API routes, CORS handling and static files.
    void mount(httplib::Server& server);

private:
    std::string new_id();
    void load_persisted();
    void persist(const Dataset& d) const;

    Options options_;
    mutable std::shared_mutex store_mutex_;
    std::map<std::string, std::shared_ptr<const Dataset>> store_;
    ReportCache cache_;
    std::mutex id_mutex_;
    std::mt19937_64 id_rng_;
};

/// Blocks until the server stops. Returns non-zero when binding fails.
int serve(const Options& options, const std::string& host, int port);

}  // namespace foldex::service
