#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "json.hpp"

#include "foldex/folds.hpp"
#include "foldex/geometry.hpp"
#include "foldex/synth.hpp"

namespace foldex::io {

enum class InputFormat { json, csv };

const char* to_string(InputFormat f) noexcept;
InputFormat input_format_from_string(std::string_view s);

struct PolylineDocument {
    int version = 1;
    std::string name;
    std::string unit;
    std::vector<Point2> vertices;

    /// Builds the Polyline with the default cleaning epsilon.
    Polyline to_polyline() const;
    static PolylineDocument from_polyline(const Polyline& p, std::string name = {},
                                          std::string unit = {});
};

/// Both parsers throw Error(Parse) on malformed text. They do not build the
/// Polyline, so degenerate vertex lists are reported later.
PolylineDocument parse_polyline_json(std::string_view text);
PolylineDocument parse_polyline_csv(std::string_view text);

std::string serialize_polyline_json(const PolylineDocument& doc);
std::string serialize_polyline_csv(const PolylineDocument& doc);

/// Format picked from the extension when not given (.csv/.txt -> csv).
PolylineDocument read_polyline_file(const std::filesystem::path& path,
                                    std::optional<InputFormat> format = std::nullopt);

struct ReportDocument {
    std::string tool = "foldex";
    std::string version;
    std::string timestamp;  // ISO 8601 UTC
    std::string name;
    FoldReport report;
};

ReportDocument make_report_document(FoldReport report, std::string name);

nlohmann::json params_to_json(const DetectionParams& p);
nlohmann::json report_to_json(const FoldReport& r);
FoldReport report_from_json(const nlohmann::json& j);

std::string serialize_report(const ReportDocument& doc, int indent = 1);
ReportDocument parse_report(std::string_view text);

nlohmann::json truth_to_json(const synth::GroundTruth& t);

std::string utc_timestamp();
std::string read_text_file(const std::filesystem::path& path);

/// Writes through a sibling temporary and renames, so readers never see a
/// partial file.
void write_text_file(const std::filesystem::path& path, std::string_view text);

}  // namespace foldex::io
