#pragma once

#include <string>
#include <vector>

namespace sqg {

/// Rectangular table of named double columns; the exchange format between
/// the run drivers, the CSV files, and the criteria evaluators.
struct SeriesTable {
    std::vector<std::string> columns;
    std::vector<std::vector<double>> rows;

    int col(const std::string& name) const;       // -1 when absent
    int col_required(const std::string& name) const;  // throws when absent
    bool has(const std::string& name) const { return col(name) >= 0; }
    size_t nrows() const { return rows.size(); }
    double at(size_t row, const std::string& name) const {
        return rows[row][col_required(name)];
    }
    std::vector<double> column(const std::string& name) const;
};

/// Canonical formatting of a numeric column-name parameter ("hs_1.6" etc.);
/// writers and readers must agree on it byte for byte.
std::string fmt_param(double v);

std::string col_hs(double s);
std::string col_lp(double p);
std::string col_besov(double s, double p);
std::string col_shell(int j);

}  // namespace sqg
