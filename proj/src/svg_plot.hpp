// Copyright 2026 The vaxsim Authors
// SPDX-License-Identifier: Apache-2.0
//
// Minimal SVG charts for sweep outputs.
#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace vaxsim::detail {

struct PlotSeries
{
    std::string label;
    std::vector<std::pair<double, double>> points;
};

struct PlotLabels
{
    std::string title;
    std::string x_label;
    std::string y_label;
    bool log_y = false;
};

std::string line_plot_svg(const PlotLabels& labels, const std::vector<PlotSeries>& series);

/// Bars with an optional value; missing values are drawn as a labelled gap.
std::string bar_chart_svg(const PlotLabels& labels,
                          const std::vector<std::pair<std::string, std::optional<double>>>& bars);

} // namespace vaxsim::detail
