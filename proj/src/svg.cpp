#include "nlskdv/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace nlskdv {

namespace {

constexpr double kWidth = 640.0;
constexpr double kHeight = 440.0;
constexpr double kMarginL = 70.0;
constexpr double kMarginR = 20.0;
constexpr double kMarginT = 40.0;
constexpr double kMarginB = 55.0;

std::string num(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

}  // namespace

std::string svg_chart(const SvgSeries& series) {
    if (series.x.size() != series.y.size() || series.x.empty()) {
        throw std::invalid_argument("svg_chart: x/y must be nonempty and equal length");
    }
    std::vector<double> xs = series.x, ys = series.y;
    auto maybe_log = [](std::vector<double>& v, bool log_axis) {
        if (!log_axis) return;
        for (auto& t : v) {
            if (!(t > 0.0)) throw std::invalid_argument("svg_chart: log axis needs positive data");
            t = std::log10(t);
        }
    };
    maybe_log(xs, series.log_x);
    maybe_log(ys, series.log_y);

    auto range = [](const std::vector<double>& v) {
        auto [lo, hi] = std::minmax_element(v.begin(), v.end());
        double a = *lo, b = *hi;
        if (a == b) { a -= 1.0; b += 1.0; }
        const double pad = 0.05 * (b - a);
        return std::make_pair(a - pad, b + pad);
    };
    const auto [x0, x1] = range(xs);
    const auto [y0, y1] = range(ys);

    auto px = [&](double x) { return kMarginL + (x - x0) / (x1 - x0) * (kWidth - kMarginL - kMarginR); };
    auto py = [&](double y) { return kHeight - kMarginB - (y - y0) / (y1 - y0) * (kHeight - kMarginT - kMarginB); };

    std::string svg;
    svg += "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"0 0 " + num(kWidth) + " " +
           num(kHeight) + "\">\n";
    svg += "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    svg += "<text x=\"" + num(kWidth / 2) + "\" y=\"22\" text-anchor=\"middle\" font-size=\"15\">" +
           series.title + "</text>\n";

    // axes
    svg += "<line x1=\"" + num(kMarginL) + "\" y1=\"" + num(kHeight - kMarginB) + "\" x2=\"" +
           num(kWidth - kMarginR) + "\" y2=\"" + num(kHeight - kMarginB) +
           "\" stroke=\"black\"/>\n";
    svg += "<line x1=\"" + num(kMarginL) + "\" y1=\"" + num(kMarginT) + "\" x2=\"" + num(kMarginL) +
           "\" y2=\"" + num(kHeight - kMarginB) + "\" stroke=\"black\"/>\n";

    const int nticks = 5;
    for (int i = 0; i <= nticks; ++i) {
        const double fx = x0 + (x1 - x0) * i / nticks;
        const double fy = y0 + (y1 - y0) * i / nticks;
        const double tx = px(fx);
        const double ty = py(fy);
        const std::string xl = series.log_x ? "1e" + num(fx) : num(fx);
        const std::string yl = series.log_y ? "1e" + num(fy) : num(fy);
        svg += "<line x1=\"" + num(tx) + "\" y1=\"" + num(kHeight - kMarginB) + "\" x2=\"" +
               num(tx) + "\" y2=\"" + num(kHeight - kMarginB + 5) + "\" stroke=\"black\"/>\n";
        svg += "<text x=\"" + num(tx) + "\" y=\"" + num(kHeight - kMarginB + 18) +
               "\" text-anchor=\"middle\" font-size=\"11\">" + xl + "</text>\n";
        svg += "<line x1=\"" + num(kMarginL - 5) + "\" y1=\"" + num(ty) + "\" x2=\"" +
               num(kMarginL) + "\" y2=\"" + num(ty) + "\" stroke=\"black\"/>\n";
        svg += "<text x=\"" + num(kMarginL - 8) + "\" y=\"" + num(ty + 4) +
               "\" text-anchor=\"end\" font-size=\"11\">" + yl + "</text>\n";
    }
    svg += "<text x=\"" + num((kMarginL + kWidth - kMarginR) / 2) + "\" y=\"" +
           num(kHeight - 12) + "\" text-anchor=\"middle\" font-size=\"13\">" + series.x_label +
           "</text>\n";
    svg += "<text x=\"16\" y=\"" + num((kMarginT + kHeight - kMarginB) / 2) +
           "\" text-anchor=\"middle\" font-size=\"13\" transform=\"rotate(-90 16 " +
           num((kMarginT + kHeight - kMarginB) / 2) + ")\">" + series.y_label + "</text>\n";

    std::string points;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        if (i) points += ' ';
        points += num(px(xs[i])) + "," + num(py(ys[i]));
    }
    svg += "<polyline fill=\"none\" stroke=\"#1f5fa8\" stroke-width=\"1.5\" points=\"" + points +
           "\"/>\n";
    for (std::size_t i = 0; i < xs.size(); ++i) {
        svg += "<circle cx=\"" + num(px(xs[i])) + "\" cy=\"" + num(py(ys[i])) +
               "\" r=\"2.5\" fill=\"#1f5fa8\"/>\n";
    }
    svg += "</svg>\n";
    return svg;
}

void emit_svg(const SvgSeries& series, const std::string& path) {
    const std::string text = svg_chart(series);
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("emit_svg: cannot write " + path);
    f << text;
    if (!f) throw std::runtime_error("emit_svg: write failed for " + path);
}

}  // namespace nlskdv
