#include "chaincal/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

#include "chaincal/io.hpp"

namespace chaincal {

namespace {

constexpr double kWidth = 640.0, kHeight = 480.0;
constexpr double kLeft = 70.0, kRight = 20.0, kTop = 40.0, kBottom = 55.0;

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                          "#ff7f0e", "#8c564b", "#17becf"};

std::string num(double v) {
    char buffer[32];
    std::snprintf(buffer, sizeof(buffer), "%.6g", v);
    return buffer;
}

std::string escape_text(const std::string& text) {
    std::string out;
    for (char c : text) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            default: out += c;
        }
    }
    return out;
}

/// Round tick spacing to 1/2/5 times a power of ten.
double nice_step(double span, int target_ticks) {
    if (span <= 0.0) return 1.0;
    const double raw = span / target_ticks;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    for (double m : {1.0, 2.0, 5.0, 10.0})
        if (raw <= m * mag) return m * mag;
    return 10.0 * mag;
}

}  // namespace

std::string render_line_plot(const LinePlot& plot) {
    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
    double ymin = xmin, ymax = -xmin;
    for (const Series& s : plot.series)
        for (const auto& [x, y] : s.points) {
            xmin = std::min(xmin, x);
            xmax = std::max(xmax, x);
            ymin = std::min(ymin, y);
            ymax = std::max(ymax, y);
        }
    if (!(xmin <= xmax)) {
        xmin = 0.0;
        xmax = 1.0;
    }
    if (!(ymin <= ymax)) {
        ymin = 0.0;
        ymax = 1.0;
    }
    if (xmax == xmin) xmax = xmin + 1.0;
    if (ymax == ymin) ymax = ymin + 1.0;
    const double ypad = 0.05 * (ymax - ymin);
    ymin -= ypad;
    ymax += ypad;

    const double plot_w = kWidth - kLeft - kRight;
    const double plot_h = kHeight - kTop - kBottom;
    auto px = [&](double x) { return kLeft + (x - xmin) / (xmax - xmin) * plot_w; };
    auto py = [&](double y) { return kTop + (1.0 - (y - ymin) / (ymax - ymin)) * plot_h; };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << num(kWidth)
        << "\" height=\"" << num(kHeight) << "\" viewBox=\"0 0 " << num(kWidth) << ' '
        << num(kHeight) << "\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg << "<text x=\"" << num(kWidth / 2) << "\" y=\"22\" text-anchor=\"middle\" "
           "font-family=\"sans-serif\" font-size=\"15\">"
        << escape_text(plot.title) << "</text>\n";

    // axes box
    svg << "<rect x=\"" << num(kLeft) << "\" y=\"" << num(kTop) << "\" width=\"" << num(plot_w)
        << "\" height=\"" << num(plot_h)
        << "\" fill=\"none\" stroke=\"black\" stroke-width=\"1\"/>\n";

    const double xstep = nice_step(xmax - xmin, 8);
    for (double x = std::ceil(xmin / xstep) * xstep; x <= xmax + 1e-12; x += xstep) {
        svg << "<line x1=\"" << num(px(x)) << "\" y1=\"" << num(kTop + plot_h) << "\" x2=\""
            << num(px(x)) << "\" y2=\"" << num(kTop + plot_h + 5)
            << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
        svg << "<text x=\"" << num(px(x)) << "\" y=\"" << num(kTop + plot_h + 18)
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">" << num(x)
            << "</text>\n";
    }
    const double ystep = nice_step(ymax - ymin, 6);
    for (double y = std::ceil(ymin / ystep) * ystep; y <= ymax + 1e-12; y += ystep) {
        svg << "<line x1=\"" << num(kLeft - 5) << "\" y1=\"" << num(py(y)) << "\" x2=\""
            << num(kLeft) << "\" y2=\"" << num(py(y))
            << "\" stroke=\"black\" stroke-width=\"1\"/>\n";
        svg << "<text x=\"" << num(kLeft - 8) << "\" y=\"" << num(py(y) + 4)
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">" << num(y)
            << "</text>\n";
    }

    svg << "<text x=\"" << num(kLeft + plot_w / 2) << "\" y=\"" << num(kHeight - 12)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">"
        << escape_text(plot.x_label) << "</text>\n";
    svg << "<text x=\"18\" y=\"" << num(kTop + plot_h / 2)
        << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
           "transform=\"rotate(-90 18 "
        << num(kTop + plot_h / 2) << ")\">" << escape_text(plot.y_label) << "</text>\n";

    for (std::size_t s = 0; s < plot.series.size(); ++s) {
        const char* color = kPalette[s % (sizeof(kPalette) / sizeof(kPalette[0]))];
        const Series& series = plot.series[s];
        if (!series.points.empty()) {
            svg << "<polyline fill=\"none\" stroke=\"" << color
                << "\" stroke-width=\"1.5\" points=\"";
            for (const auto& [x, y] : series.points)
                svg << num(px(x)) << ',' << num(py(y)) << ' ';
            svg << "\"/>\n";
            for (const auto& [x, y] : series.points)
                svg << "<circle cx=\"" << num(px(x)) << "\" cy=\"" << num(py(y))
                    << "\" r=\"2.2\" fill=\"" << color << "\"/>\n";
        }
        // legend
        const double ly = kTop + 14.0 + 16.0 * static_cast<double>(s);
        svg << "<line x1=\"" << num(kLeft + plot_w - 150) << "\" y1=\"" << num(ly) << "\" x2=\""
            << num(kLeft + plot_w - 130) << "\" y2=\"" << num(ly) << "\" stroke=\"" << color
            << "\" stroke-width=\"2\"/>\n";
        svg << "<text x=\"" << num(kLeft + plot_w - 124) << "\" y=\"" << num(ly + 4)
            << "\" font-family=\"sans-serif\" font-size=\"11\">" << escape_text(series.label)
            << "</text>\n";
    }

    svg << "</svg>\n";
    return svg.str();
}

void write_svg(const std::string& path, const LinePlot& plot) {
    write_text_file(path, render_line_plot(plot));
}

}  // namespace chaincal
