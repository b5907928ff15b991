#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace fountain {

struct PlotSeries {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
    bool markers = true;  ///< points with a connecting line; false draws a dashed reference line
};

struct PlotSpec {
    std::string title;
    std::string xlabel;
    std::string ylabel;
    bool log_x = true;
    bool log_y = true;
    std::vector<PlotSeries> series;
};

/// Standalone SVG document. Non-positive values are skipped on log axes.
std::string render_svg(const PlotSpec& spec);

void write_svg(const PlotSpec& spec, const std::filesystem::path& path);

}  // namespace fountain
