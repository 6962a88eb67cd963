#include "lossgap/svg.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "lossgap/csv.hpp"

namespace lossgap {
namespace {

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e",
                                    "#9467bd", "#8c564b", "#17becf", "#7f7f7f"};
constexpr int kPaletteSize = 8;

// fixed two-decimal pixel coordinates keep the output byte-stable
std::string px(double v) {
    const double r = std::round(v * 100.0) / 100.0;
    std::ostringstream os;
    os.setf(std::ios::fixed);
    os.precision(2);
    os << r;
    return os.str();
}

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

}  // namespace

std::string render_line_plot(const std::vector<PlotSeries>& series,
                             const PlotOptions& options) {
    if (series.empty()) throw std::invalid_argument("plot: no series");

    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
    double ymin = xmin, ymax = -xmin;
    std::size_t points = 0;
    for (const auto& s : series) {
        if (s.x.size() != s.y.size())
            throw std::invalid_argument("plot: series '" + s.name + "' has mismatched x/y");
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
            if (options.log_x && !(s.x[i] > 0.0))
                throw std::invalid_argument("plot: log x-axis requires positive x values");
            ++points;
            xmin = std::min(xmin, s.x[i]);
            xmax = std::max(xmax, s.x[i]);
            ymin = std::min(ymin, s.y[i]);
            ymax = std::max(ymax, s.y[i]);
        }
    }
    if (points == 0) throw std::invalid_argument("plot: no finite data points");
    if (xmin == xmax) { xmin -= 0.5; xmax += 0.5; }
    if (ymin == ymax) { ymin -= 0.5; ymax += 0.5; }

    const double margin_l = 70, margin_r = 150, margin_t = 40, margin_b = 50;
    const double w = options.width, h = options.height;
    const double plot_w = w - margin_l - margin_r;
    const double plot_h = h - margin_t - margin_b;

    auto xpos = [&](double x) {
        double t;
        if (options.log_x)
            t = (std::log10(x) - std::log10(xmin)) / (std::log10(xmax) - std::log10(xmin));
        else
            t = (x - xmin) / (xmax - xmin);
        return margin_l + t * plot_w;
    };
    auto ypos = [&](double y) {
        const double t = (y - ymin) / (ymax - ymin);
        return margin_t + (1.0 - t) * plot_h;
    };

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << options.width
        << "\" height=\"" << options.height << "\" viewBox=\"0 0 " << options.width << ' '
        << options.height << "\">\n";
    svg << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    if (!options.title.empty()) {
        svg << "<text x=\"" << px(w / 2) << "\" y=\"24\" text-anchor=\"middle\" "
               "font-family=\"sans-serif\" font-size=\"16\">"
            << escape(options.title) << "</text>\n";
    }

    // frame
    svg << "<rect x=\"" << px(margin_l) << "\" y=\"" << px(margin_t) << "\" width=\""
        << px(plot_w) << "\" height=\"" << px(plot_h)
        << "\" fill=\"none\" stroke=\"#444444\" stroke-width=\"1\"/>\n";

    // x ticks: decades when log, else 6 evenly spaced
    std::vector<double> xticks;
    if (options.log_x) {
        const int lo = static_cast<int>(std::ceil(std::log10(xmin) - 1e-9));
        const int hi = static_cast<int>(std::floor(std::log10(xmax) + 1e-9));
        for (int e = lo; e <= hi; ++e) xticks.push_back(std::pow(10.0, e));
        if (xticks.empty()) xticks = {xmin, xmax};
    } else {
        for (int i = 0; i <= 5; ++i) xticks.push_back(xmin + (xmax - xmin) * i / 5.0);
    }
    for (double t : xticks) {
        const double xp = xpos(t);
        svg << "<line x1=\"" << px(xp) << "\" y1=\"" << px(margin_t + plot_h) << "\" x2=\""
            << px(xp) << "\" y2=\"" << px(margin_t + plot_h + 5)
            << "\" stroke=\"#444444\" stroke-width=\"1\"/>\n";
        svg << "<text x=\"" << px(xp) << "\" y=\"" << px(margin_t + plot_h + 18)
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"11\">"
            << format_double(t) << "</text>\n";
    }
    for (int i = 0; i <= 5; ++i) {
        const double t = ymin + (ymax - ymin) * i / 5.0;
        const double yp = ypos(t);
        svg << "<line x1=\"" << px(margin_l - 5) << "\" y1=\"" << px(yp) << "\" x2=\""
            << px(margin_l) << "\" y2=\"" << px(yp)
            << "\" stroke=\"#444444\" stroke-width=\"1\"/>\n";
        svg << "<text x=\"" << px(margin_l - 8) << "\" y=\"" << px(yp + 4)
            << "\" text-anchor=\"end\" font-family=\"sans-serif\" font-size=\"11\">"
            << format_double(t) << "</text>\n";
    }
    if (!options.x_label.empty()) {
        svg << "<text x=\"" << px(margin_l + plot_w / 2) << "\" y=\"" << px(h - 10)
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\">"
            << escape(options.x_label) << "</text>\n";
    }
    if (!options.y_label.empty()) {
        svg << "<text x=\"16\" y=\"" << px(margin_t + plot_h / 2)
            << "\" text-anchor=\"middle\" font-family=\"sans-serif\" font-size=\"13\" "
               "transform=\"rotate(-90 16 "
            << px(margin_t + plot_h / 2) << ")\">" << escape(options.y_label) << "</text>\n";
    }

    // series + legend
    for (std::size_t si = 0; si < series.size(); ++si) {
        const auto& s = series[si];
        const char* color = kPalette[si % kPaletteSize];
        svg << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.5\" points=\"";
        bool first = true;
        for (std::size_t i = 0; i < s.x.size(); ++i) {
            if (!std::isfinite(s.x[i]) || !std::isfinite(s.y[i])) continue;
            if (!first) svg << ' ';
            svg << px(xpos(s.x[i])) << ',' << px(ypos(s.y[i]));
            first = false;
        }
        svg << "\"/>\n";
        const double ly = margin_t + 16.0 + 18.0 * static_cast<double>(si);
        svg << "<line x1=\"" << px(w - margin_r + 10) << "\" y1=\"" << px(ly) << "\" x2=\""
            << px(w - margin_r + 34) << "\" y2=\"" << px(ly) << "\" stroke=\"" << color
            << "\" stroke-width=\"1.5\"/>\n";
        svg << "<text x=\"" << px(w - margin_r + 40) << "\" y=\"" << px(ly + 4)
            << "\" font-family=\"sans-serif\" font-size=\"12\">" << escape(s.name)
            << "</text>\n";
    }
    svg << "</svg>\n";
    return svg.str();
}

}  // namespace lossgap
