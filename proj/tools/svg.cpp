#include "svg.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <limits>

namespace hexlat::app {

namespace {

constexpr double kPanelW = 420.0;
constexpr double kPanelH = 320.0;
constexpr double kLeft = 64.0, kRight = 16.0, kTop = 36.0, kBottom = 48.0;

constexpr const char* kColours[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};

std::string escape(const std::string& s) {
    std::string out;
    for (char c : s) {
        switch (c) {
            case '&': out += "&amp;"; break;
            case '<': out += "&lt;"; break;
            case '>': out += "&gt;"; break;
            default: out += c;
        }
    }
    return out;
}

// Tick step of the form {1, 2, 5} x 10^k giving about five ticks.
double nice_step(double span) {
    const double raw = span / 5.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    const double f = raw / mag;
    return (f < 1.5 ? 1.0 : f < 3.5 ? 2.0 : f < 7.5 ? 5.0 : 10.0) * mag;
}

std::string panel(const Panel& p, double ox) {
    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
    double ymin = xmin, ymax = -xmin;
    for (const auto& s : p.series) {
        for (double v : s.x) xmin = std::min(xmin, v), xmax = std::max(xmax, v);
        for (double v : s.y) ymin = std::min(ymin, v), ymax = std::max(ymax, v);
    }
    if (!(xmax > xmin)) xmin -= 0.5, xmax += 0.5;
    if (!(ymax > ymin)) ymin -= 0.5, ymax += 0.5;
    const double pad = 0.05 * (ymax - ymin);
    ymin -= pad;
    ymax += pad;

    const double w = kPanelW - kLeft - kRight;
    const double h = kPanelH - kTop - kBottom;
    auto X = [&](double v) { return ox + kLeft + (v - xmin) / (xmax - xmin) * w; };
    auto Y = [&](double v) { return kTop + (ymax - v) / (ymax - ymin) * h; };

    std::string out;
    out += fmt::format("<text x=\"{:.2f}\" y=\"20\" text-anchor=\"middle\" font-size=\"13\">{}</text>\n",
                       ox + kLeft + w / 2, escape(p.title));
    out += fmt::format("<rect x=\"{:.2f}\" y=\"{:.2f}\" width=\"{:.2f}\" height=\"{:.2f}\" fill=\"none\" stroke=\"#000\"/>\n",
                       ox + kLeft, kTop, w, h);

    const double xs = nice_step(xmax - xmin);
    for (double t = std::ceil(xmin / xs) * xs; t <= xmax + 1e-9 * xs; t += xs) {
        out += fmt::format("<line x1=\"{0:.2f}\" y1=\"{1:.2f}\" x2=\"{0:.2f}\" y2=\"{2:.2f}\" stroke=\"#000\"/>\n", X(t),
                           kTop + h, kTop + h + 4);
        out += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"middle\" font-size=\"10\">{:.4g}</text>\n", X(t),
                           kTop + h + 16, std::abs(t) < 1e-12 * xs ? 0.0 : t);
    }
    const double ys = nice_step(ymax - ymin);
    for (double t = std::ceil(ymin / ys) * ys; t <= ymax + 1e-9 * ys; t += ys) {
        out += fmt::format("<line x1=\"{0:.2f}\" y1=\"{1:.2f}\" x2=\"{2:.2f}\" y2=\"{1:.2f}\" stroke=\"#000\"/>\n",
                           ox + kLeft - 4, Y(t), ox + kLeft);
        out += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"end\" font-size=\"10\">{:.4g}</text>\n",
                           ox + kLeft - 6, Y(t) + 3, std::abs(t) < 1e-12 * ys ? 0.0 : t);
    }
    if (ymin < 0.0 && ymax > 0.0) {
        out += fmt::format("<line x1=\"{:.2f}\" y1=\"{:.2f}\" x2=\"{:.2f}\" y2=\"{:.2f}\" stroke=\"#999\" stroke-width=\"0.5\"/>\n",
                           ox + kLeft, Y(0.0), ox + kLeft + w, Y(0.0));
    }
    out += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" text-anchor=\"middle\" font-size=\"12\">{}</text>\n",
                       ox + kLeft + w / 2, kPanelH - 10, escape(p.xlabel));
    out += fmt::format(
        "<text x=\"{0:.2f}\" y=\"{1:.2f}\" text-anchor=\"middle\" font-size=\"12\" transform=\"rotate(-90 {0:.2f} {1:.2f})\">{2}</text>\n",
        ox + 14, kTop + h / 2, escape(p.ylabel));

    for (std::size_t i = 0; i < p.series.size(); ++i) {
        const Series& s = p.series[i];
        const char* colour = kColours[i % std::size(kColours)];
        std::string d;
        for (std::size_t k = 0; k < s.x.size() && k < s.y.size(); ++k)
            d += fmt::format("{}{:.2f},{:.2f}", k == 0 ? "M" : " L", X(s.x[k]), Y(s.y[k]));
        out += fmt::format("<path d=\"{}\" fill=\"none\" stroke=\"{}\" stroke-width=\"1.5\"{}/>\n", d, colour,
                           s.dashed ? " stroke-dasharray=\"5,3\"" : "");
        const double ly = kTop + 14 + 14 * double(i);
        out += fmt::format("<line x1=\"{0:.2f}\" y1=\"{1:.2f}\" x2=\"{2:.2f}\" y2=\"{1:.2f}\" stroke=\"{3}\" stroke-width=\"1.5\"{4}/>\n",
                           ox + kLeft + w - 110, ly - 4, ox + kLeft + w - 90, colour,
                           s.dashed ? " stroke-dasharray=\"5,3\"" : "");
        out += fmt::format("<text x=\"{:.2f}\" y=\"{:.2f}\" font-size=\"10\">{}</text>\n", ox + kLeft + w - 86, ly,
                           escape(s.label));
    }
    return out;
}

}  // namespace

std::string render_svg(const std::vector<Panel>& panels, const std::string& banner) {
    const double width = kPanelW * double(std::max<std::size_t>(1, panels.size()));
    std::string out = fmt::format(
        "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n<!-- {} -->\n"
        "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{:.0f}\" height=\"{:.0f}\" font-family=\"sans-serif\">\n"
        "<rect width=\"100%\" height=\"100%\" fill=\"#fff\"/>\n",
        escape(banner), width, kPanelH);
    for (std::size_t i = 0; i < panels.size(); ++i) out += panel(panels[i], kPanelW * double(i));
    out += "</svg>\n";
    return out;
}

}  // namespace hexlat::app
