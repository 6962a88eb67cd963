#pragma once

#include <string>
#include <vector>

namespace lossgap {

struct PlotSeries {
    std::string name;
    std::vector<double> x;
    std::vector<double> y;
};

struct PlotOptions {
    std::string title;
    std::string x_label;
    std::string y_label;
    bool log_x = false;
    int width = 860;
    int height = 520;
};

// Self-contained SVG line chart (no external assets). Output is a pure
// function of the inputs; identical inputs give byte-identical SVG.
std::string render_line_plot(const std::vector<PlotSeries>& series,
                             const PlotOptions& options);

}  // namespace lossgap
