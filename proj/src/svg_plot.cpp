#include "sqg/svg_plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>
#include <sstream>

namespace sqg {

namespace {

const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e",
                          "#8c564b", "#17becf", "#7f7f7f", "#bcbd22", "#e377c2"};

std::string num(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.6g", v);
    return buf;
}

}  // namespace

std::string LinePlot::render(int width, int height) const {
    const double ml = 70, mr = 20, mt = 36, mb = 48;
    const double pw = width - ml - mr, ph = height - mt - mb;

    double xmin = std::numeric_limits<double>::infinity(), xmax = -xmin;
    double ymin = xmin, ymax = -xmin;
    auto fold_y = [&](double y) {
        if (log_y && !(y > 0.0)) return;
        const double v = log_y ? std::log10(y) : y;
        ymin = std::min(ymin, v);
        ymax = std::max(ymax, v);
    };
    for (const auto& s : series)
        for (size_t i = 0; i < s.x.size(); ++i) {
            xmin = std::min(xmin, s.x[i]);
            xmax = std::max(xmax, s.x[i]);
            fold_y(s.y[i]);
        }
    for (const auto& [y, label] : hlines) fold_y(y);
    if (!(xmin <= xmax)) { xmin = 0; xmax = 1; }
    if (!(ymin <= ymax)) { ymin = 0; ymax = 1; }
    if (xmin == xmax) { xmin -= 0.5; xmax += 0.5; }
    if (ymin == ymax) { ymin -= 0.5; ymax += 0.5; }

    auto X = [&](double x) { return ml + (x - xmin) / (xmax - xmin) * pw; };
    auto Y = [&](double y) {
        const double v = log_y ? std::log10(std::max(y, 1e-300)) : y;
        return mt + (ymax - v) / (ymax - ymin) * ph;
    };

    std::ostringstream out;
    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width
        << "\" height=\"" << height << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << width / 2 << "\" y=\"20\" text-anchor=\"middle\" "
           "font-size=\"14\">" << title << "</text>\n";
    out << "<rect x=\"" << ml << "\" y=\"" << mt << "\" width=\"" << pw
        << "\" height=\"" << ph << "\" fill=\"none\" stroke=\"black\"/>\n";

    // axis ticks
    for (int k = 0; k <= 4; ++k) {
        const double fx = xmin + k * (xmax - xmin) / 4;
        out << "<text x=\"" << X(fx) << "\" y=\"" << height - mb + 16
            << "\" text-anchor=\"middle\" font-size=\"10\">" << num(fx) << "</text>\n";
        const double fy = ymin + k * (ymax - ymin) / 4;
        const double yy = mt + ph - k * ph / 4;
        out << "<text x=\"" << ml - 6 << "\" y=\"" << yy + 3
            << "\" text-anchor=\"end\" font-size=\"10\">"
            << num(log_y ? std::pow(10.0, fy) : fy) << "</text>\n";
    }
    out << "<text x=\"" << ml + pw / 2 << "\" y=\"" << height - 10
        << "\" text-anchor=\"middle\" font-size=\"11\">" << xlabel << "</text>\n";
    out << "<text x=\"16\" y=\"" << mt + ph / 2
        << "\" text-anchor=\"middle\" font-size=\"11\" transform=\"rotate(-90 16 "
        << mt + ph / 2 << ")\">" << ylabel << "</text>\n";

    for (const auto& [y, label] : hlines) {
        out << "<line x1=\"" << ml << "\" y1=\"" << Y(y) << "\" x2=\"" << ml + pw
            << "\" y2=\"" << Y(y)
            << "\" stroke=\"#aa0000\" stroke-dasharray=\"6 3\"/>\n";
        out << "<text x=\"" << ml + pw - 4 << "\" y=\"" << Y(y) - 4
            << "\" text-anchor=\"end\" font-size=\"10\" fill=\"#aa0000\">" << label
            << "</text>\n";
    }

    int ci = 0;
    for (const auto& s : series) {
        const char* color = kPalette[ci % 10];
        out << "<polyline fill=\"none\" stroke=\"" << color
            << "\" stroke-width=\"1.3\" points=\"";
        for (size_t i = 0; i < s.x.size(); ++i) {
            if (log_y && !(s.y[i] > 0.0)) continue;
            out << num(X(s.x[i])) << "," << num(Y(s.y[i])) << " ";
        }
        out << "\"/>\n";
        if (s.x.size() == 1)
            out << "<circle cx=\"" << X(s.x[0]) << "\" cy=\"" << Y(s.y[0])
                << "\" r=\"3\" fill=\"" << color << "\"/>\n";
        out << "<text x=\"" << ml + 8 << "\" y=\"" << mt + 14 + 13 * ci
            << "\" font-size=\"10\" fill=\"" << color << "\">" << s.label
            << "</text>\n";
        ++ci;
    }

    for (const auto& m : markers)
        out << "<circle id=\"" << m.id << "\" data-value=\"" << m.data << "\" cx=\""
            << num(X(m.x)) << "\" cy=\"" << num(Y(m.y))
            << "\" r=\"4\" fill=\"none\" stroke=\"#aa0000\" stroke-width=\"1.5\"/>\n";

    out << "</svg>\n";
    return out.str();
}

}  // namespace sqg
