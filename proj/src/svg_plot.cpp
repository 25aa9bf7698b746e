// Copyright 2026 The vaxsim Authors
// SPDX-License-Identifier: Apache-2.0
#include "svg_plot.hpp"

#include "text_util.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <sstream>

namespace vaxsim::detail {
namespace {

constexpr double kWidth = 720;
constexpr double kHeight = 480;
constexpr double kLeft = 80;
constexpr double kRight = 160;
constexpr double kTop = 50;
constexpr double kBottom = 60;

constexpr std::array<const char*, 8> kPalette{"#1f77b4", "#d62728", "#2ca02c", "#9467bd",
                                              "#ff7f0e", "#8c564b", "#e377c2", "#17becf"};

std::string escape(const std::string& s)
{
    std::string out;
    for (char c : s) {
        switch (c) {
        case '&':
            out += "&amp;";
            break;
        case '<':
            out += "&lt;";
            break;
        case '>':
            out += "&gt;";
            break;
        case '"':
            out += "&quot;";
            break;
        default:
            out += c;
        }
    }
    return out;
}

std::string num(double v)
{
    return fixed(v, 2);
}

std::string tick_label(double v)
{
    if (v != 0.0 && (std::abs(v) >= 1e5 || std::abs(v) < 1e-2)) {
        std::ostringstream s;
        s << v;
        return s.str();
    }
    auto text = fixed(v, 2);
    if (text.find('.') != std::string::npos) {
        while (text.back() == '0') {
            text.pop_back();
        }
        if (text.back() == '.') {
            text.pop_back();
        }
    }
    return text;
}

std::vector<double> linear_ticks(double lo, double hi)
{
    const double span = hi - lo;
    const double raw = span / 5.0;
    const double mag = std::pow(10.0, std::floor(std::log10(raw)));
    double step = mag;
    for (double m : {1.0, 2.0, 5.0, 10.0}) {
        step = m * mag;
        if (span / step <= 6.0) {
            break;
        }
    }
    std::vector<double> ticks;
    for (double t = std::ceil(lo / step) * step; t <= hi + 1e-9 * span; t += step) {
        ticks.push_back(std::abs(t) < 1e-12 * span ? 0.0 : t);
    }
    return ticks;
}

void header(std::ostringstream& out, const PlotLabels& labels)
{
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
        << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
        << "\" viewBox=\"0 0 " << kWidth << ' ' << kHeight << "\" font-family=\"sans-serif\" font-size=\"12\">\n"
        << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
        << "<text x=\"" << num((kLeft + kWidth - kRight) / 2) << "\" y=\"28\" text-anchor=\"middle\" font-size=\"15\">"
        << escape(labels.title) << "</text>\n"
        << "<text x=\"" << num((kLeft + kWidth - kRight) / 2) << "\" y=\"" << num(kHeight - 15)
        << "\" text-anchor=\"middle\">" << escape(labels.x_label) << "</text>\n"
        << "<text transform=\"translate(20," << num((kTop + kHeight - kBottom) / 2)
        << ") rotate(-90)\" text-anchor=\"middle\">" << escape(labels.y_label) << "</text>\n"
        << "<rect x=\"" << kLeft << "\" y=\"" << kTop << "\" width=\"" << kWidth - kLeft - kRight << "\" height=\""
        << kHeight - kTop - kBottom << "\" fill=\"none\" stroke=\"black\"/>\n";
}

} // namespace

std::string line_plot_svg(const PlotLabels& labels, const std::vector<PlotSeries>& series)
{
    double x_lo = INFINITY, x_hi = -INFINITY, y_lo = INFINITY, y_hi = -INFINITY;
    for (const auto& s : series) {
        for (const auto& [x, y] : s.points) {
            x_lo = std::min(x_lo, x);
            x_hi = std::max(x_hi, x);
            const double yy = labels.log_y ? std::log10(std::max(y, 1e-300)) : y;
            y_lo = std::min(y_lo, yy);
            y_hi = std::max(y_hi, yy);
        }
    }
    if (!std::isfinite(x_lo)) {
        x_lo = 0;
        x_hi = 1;
        y_lo = 0;
        y_hi = 1;
    }
    if (labels.log_y) {
        y_lo = std::floor(y_lo);
        y_hi = std::max(std::ceil(y_hi), y_lo + 1);
    } else {
        y_lo = std::min(y_lo, 0.0);
        if (y_hi <= y_lo) {
            y_hi = y_lo + 1;
        }
        y_hi += 0.05 * (y_hi - y_lo);
    }
    if (x_hi <= x_lo) {
        x_hi = x_lo + 1;
    }
    const double plot_w = kWidth - kLeft - kRight;
    const double plot_h = kHeight - kTop - kBottom;
    auto px = [&](double x) { return kLeft + (x - x_lo) / (x_hi - x_lo) * plot_w; };
    auto py = [&](double y) {
        const double yy = labels.log_y ? std::log10(std::max(y, 1e-300)) : y;
        return kTop + plot_h - (yy - y_lo) / (y_hi - y_lo) * plot_h;
    };

    std::ostringstream out;
    header(out, labels);
    for (double t : linear_ticks(x_lo, x_hi)) {
        out << "<line x1=\"" << num(px(t)) << "\" y1=\"" << num(kTop + plot_h) << "\" x2=\"" << num(px(t))
            << "\" y2=\"" << num(kTop + plot_h + 5) << "\" stroke=\"black\"/>"
            << "<text x=\"" << num(px(t)) << "\" y=\"" << num(kTop + plot_h + 18) << "\" text-anchor=\"middle\">"
            << tick_label(t) << "</text>\n";
    }
    std::vector<double> y_ticks;
    if (labels.log_y) {
        for (double e = y_lo; e <= y_hi + 1e-9; e += 1.0) {
            y_ticks.push_back(std::pow(10.0, e));
        }
    } else {
        y_ticks = linear_ticks(y_lo, y_hi);
    }
    for (double t : y_ticks) {
        out << "<line x1=\"" << num(kLeft - 5) << "\" y1=\"" << num(py(t)) << "\" x2=\"" << num(kLeft)
            << "\" y2=\"" << num(py(t)) << "\" stroke=\"black\"/>"
            << "<line x1=\"" << num(kLeft) << "\" y1=\"" << num(py(t)) << "\" x2=\"" << num(kLeft + plot_w)
            << "\" y2=\"" << num(py(t)) << "\" stroke=\"#dddddd\"/>"
            << "<text x=\"" << num(kLeft - 8) << "\" y=\"" << num(py(t) + 4) << "\" text-anchor=\"end\">"
            << tick_label(t) << "</text>\n";
    }
    for (std::size_t i = 0; i < series.size(); ++i) {
        const auto* colour = kPalette[i % kPalette.size()];
        const auto& s = series[i];
        out << "<polyline fill=\"none\" stroke=\"" << colour << "\" stroke-width=\"2\" points=\"";
        for (const auto& [x, y] : s.points) {
            out << num(px(x)) << ',' << num(py(y)) << ' ';
        }
        out << "\"/>\n";
        for (const auto& [x, y] : s.points) {
            out << "<circle cx=\"" << num(px(x)) << "\" cy=\"" << num(py(y)) << "\" r=\"3\" fill=\"" << colour
                << "\"/>\n";
        }
        const double ly = kTop + 15 + 20 * static_cast<double>(i);
        out << "<line x1=\"" << num(kWidth - kRight + 15) << "\" y1=\"" << num(ly) << "\" x2=\""
            << num(kWidth - kRight + 40) << "\" y2=\"" << num(ly) << "\" stroke=\"" << colour
            << "\" stroke-width=\"2\"/><text x=\"" << num(kWidth - kRight + 46) << "\" y=\"" << num(ly + 4) << "\">"
            << escape(s.label) << "</text>\n";
    }
    out << "</svg>\n";
    return out.str();
}

std::string bar_chart_svg(const PlotLabels& labels,
                          const std::vector<std::pair<std::string, std::optional<double>>>& bars)
{
    double y_hi = 0.0;
    for (const auto& [name, value] : bars) {
        if (value) {
            y_hi = std::max(y_hi, *value);
        }
    }
    y_hi = y_hi > 0 ? y_hi * 1.1 : 1.0;
    const double plot_w = kWidth - kLeft - kRight;
    const double plot_h = kHeight - kTop - kBottom;
    auto py = [&](double y) { return kTop + plot_h - y / y_hi * plot_h; };

    std::ostringstream out;
    header(out, labels);
    for (double t : linear_ticks(0.0, y_hi)) {
        out << "<line x1=\"" << num(kLeft) << "\" y1=\"" << num(py(t)) << "\" x2=\"" << num(kLeft + plot_w)
            << "\" y2=\"" << num(py(t)) << "\" stroke=\"#dddddd\"/>"
            << "<text x=\"" << num(kLeft - 8) << "\" y=\"" << num(py(t) + 4) << "\" text-anchor=\"end\">"
            << tick_label(t) << "</text>\n";
    }
    const double slot = plot_w / static_cast<double>(std::max<std::size_t>(bars.size(), 1));
    for (std::size_t i = 0; i < bars.size(); ++i) {
        const auto& [name, value] = bars[i];
        const double cx = kLeft + slot * (static_cast<double>(i) + 0.5);
        if (value) {
            out << "<rect x=\"" << num(cx - slot * 0.3) << "\" y=\"" << num(py(*value)) << "\" width=\""
                << num(slot * 0.6) << "\" height=\"" << num(kTop + plot_h - py(*value)) << "\" fill=\""
                << kPalette[i % kPalette.size()] << "\"/>"
                << "<text x=\"" << num(cx) << "\" y=\"" << num(py(*value) - 5) << "\" text-anchor=\"middle\">"
                << tick_label(*value) << "</text>\n";
        } else {
            out << "<text x=\"" << num(cx) << "\" y=\"" << num(kTop + plot_h - 10)
                << "\" text-anchor=\"middle\">not reached</text>\n";
        }
        out << "<text x=\"" << num(cx) << "\" y=\"" << num(kTop + plot_h + 18) << "\" text-anchor=\"middle\">"
            << escape(name) << "</text>\n";
    }
    out << "</svg>\n";
    return out.str();
}

} // namespace vaxsim::detail
