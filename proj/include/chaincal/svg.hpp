#pragma once

#include <string>
#include <utility>
#include <vector>

namespace chaincal {

struct Series {
    std::string label;
    std::vector<std::pair<double, double>> points;
};

struct LinePlot {
    std::string title;
    std::string x_label;
    std::string y_label;
    std::vector<Series> series;
};

/// Renders a static line plot. Pure function of its input: the same plot
/// data always yields byte-identical SVG.
std::string render_line_plot(const LinePlot& plot);

void write_svg(const std::string& path, const LinePlot& plot);

}  // namespace chaincal
