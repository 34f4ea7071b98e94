#pragma once

#include <string>

#include "foldex/folds.hpp"

namespace foldex::svg {

inline constexpr const char* minimal_color = "#4aa3ff";
inline constexpr const char* maximal_color = "#3dbb3d";
inline constexpr const char* fold_color = "#8a2be2";

struct RenderOptions {
    double panel_width = 640.0;
    double panel_height = 480.0;
    std::string title;
};

/// Two panels side by side. Left: the polyline, its offset and one
/// highlighted subchain per interval. Right: raw and smoothed orientation
/// with extrema markers and one block per interval, stacked above the plot
/// on the shared arc-length axis.
std::string render_report(const FoldReport& report, const RenderOptions& options = {});

}  // namespace foldex::svg
