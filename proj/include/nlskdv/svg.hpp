#pragma once

#include <string>
#include <vector>

namespace nlskdv {

/// One line series for a static chart.
struct SvgSeries {
    std::vector<double> x;
    std::vector<double> y;
    std::string x_label;
    std::string y_label;
    std::string title;
    bool log_x = false;
    bool log_y = false;
};

/// Self-contained single-root SVG line chart with axes and tick labels.
std::string svg_chart(const SvgSeries& series);
void emit_svg(const SvgSeries& series, const std::string& path);

}  // namespace nlskdv
