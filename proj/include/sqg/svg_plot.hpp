#pragma once

#include <string>
#include <vector>

namespace sqg {

/// Minimal dependency-free SVG line plots for run diagnostics.
struct PlotSeries {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

struct PlotMarker {
    double x = 0.0, y = 0.0;
    std::string id;
    std::string data;  // free-form attribute payload (e.g. the crossing time)
};

struct LinePlot {
    std::string title;
    std::string xlabel, ylabel;
    bool log_y = false;
    std::vector<PlotSeries> series;
    std::vector<std::pair<double, std::string>> hlines;
    std::vector<PlotMarker> markers;

    std::string render(int width = 760, int height = 480) const;
};

}  // namespace sqg
