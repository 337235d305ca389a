#include "sqg/series.hpp"

#include <cstdio>
#include <stdexcept>

namespace sqg {

int SeriesTable::col(const std::string& name) const {
    for (size_t i = 0; i < columns.size(); ++i)
        if (columns[i] == name) return static_cast<int>(i);
    return -1;
}

int SeriesTable::col_required(const std::string& name) const {
    const int c = col(name);
    if (c < 0) throw std::out_of_range("SeriesTable: missing column '" + name + "'");
    return c;
}

std::vector<double> SeriesTable::column(const std::string& name) const {
    const int c = col_required(name);
    std::vector<double> out(rows.size());
    for (size_t r = 0; r < rows.size(); ++r) out[r] = rows[r][c];
    return out;
}

std::string fmt_param(double v) {
    char buf[64];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

std::string col_hs(double s) { return "hs_" + fmt_param(s); }
std::string col_lp(double p) { return "lp_" + fmt_param(p); }
std::string col_besov(double s, double p) {
    return "besov_" + fmt_param(s) + "_" + fmt_param(p);
}
std::string col_shell(int j) { return "shell_" + std::to_string(j); }

}  // namespace sqg
