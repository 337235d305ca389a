#include <cmath>
#include <iostream>

#include "sqg/io.hpp"
#include "sqg/runner.hpp"
#include "sqg/svg_plot.hpp"

namespace sqg {

namespace {

std::vector<size_t> subsample(size_t n, size_t want) {
    std::vector<size_t> idx;
    if (n == 0) return idx;
    if (n <= want) {
        for (size_t i = 0; i < n; ++i) idx.push_back(i);
        return idx;
    }
    for (size_t k = 0; k < want; ++k) idx.push_back(k * (n - 1) / (want - 1));
    return idx;
}

}  // namespace

int emit_plots(const std::string& run_dir) {
    const std::string dir = resolve_output_dir(run_dir);
    SeriesTable tb;
    RunConfig cfg;
    try {
        tb = read_csv(dir + "/trajectory.csv");
        cfg = config_from_json(read_json(dir + "/config.json"));
    } catch (const std::exception& e) {
        std::cerr << "plot: " << e.what() << "\n";
        return exit_config_error;
    }
    if (tb.rows.empty()) {
        std::cout << "plot: trajectory is empty, nothing to draw\n";
        return exit_ok;
    }
    std::vector<std::string> missing;
    for (const char* need : {"t", "l2"})
        if (!tb.has(need)) missing.push_back(need);
    if (!missing.empty()) {
        std::cerr << "plot: trajectory.csv lacks required column(s):";
        for (const auto& m : missing) std::cerr << " " << m;
        std::cerr << "\n";
        return exit_config_error;
    }

    const auto t = tb.column("t");

    {
        LinePlot plot;
        plot.title = "norms vs time";
        plot.xlabel = "t";
        plot.ylabel = "norm";
        plot.log_y = true;
        plot.series.push_back({"L2", t, tb.column("l2")});
        if (tb.has("linf")) plot.series.push_back({"Linf", t, tb.column("linf")});
        for (const auto& name : tb.columns)
            if (name.rfind("hs_", 0) == 0) plot.series.push_back({name, t, tb.column(name)});
        atomic_write(dir + "/plots/norms_vs_time.svg", plot.render());
    }

    bool have_shells = false;
    for (const auto& name : tb.columns) have_shells |= name.rfind("shell_", 0) == 0;
    if (have_shells) {
        LinePlot plot;
        plot.title = "shell spectrum waterfall";
        plot.xlabel = "shell j";
        plot.ylabel = "||Delta_j theta||_2";
        plot.log_y = true;
        for (size_t r : subsample(tb.nrows(), 12)) {
            PlotSeries s;
            char lab[32];
            std::snprintf(lab, sizeof(lab), "t=%.4g", t[r]);
            s.label = lab;
            for (size_t c = 0; c < tb.columns.size(); ++c) {
                if (tb.columns[c].rfind("shell_", 0) != 0) continue;
                s.x.push_back(std::stoi(tb.columns[c].substr(6)));
                s.y.push_back(tb.rows[r][c]);
            }
            plot.series.push_back(std::move(s));
        }
        atomic_write(dir + "/plots/shell_waterfall.svg", plot.render());
    }

    if (tb.has("w_lo4") && tb.has("w_hi4")) {
        LinePlot plot;
        plot.title = "fixed-cutoff error ratio";
        plot.xlabel = "t";
        plot.ylabel = "||w_hi||_p / ||w_lo||_p";
        PlotSeries s;
        s.label = "high/low";
        for (size_t r = 0; r < tb.nrows(); ++r) {
            const double lo = tb.at(r, "w_lo4"), hi = tb.at(r, "w_hi4");
            if (lo == 0.0) continue;
            s.x.push_back(t[r]);
            s.y.push_back(hi / lo);
        }
        plot.series.push_back(std::move(s));
        atomic_write(dir + "/plots/thm4_ratio.svg", plot.render());
    }

    if (tb.has("w_lo5") && tb.has("w_hi5")) {
        LinePlot plot;
        plot.title = "dynamic-cutoff error ratio";
        plot.xlabel = "t";
        plot.ylabel = "||w_low||_p / ||w_high||_p";
        plot.hlines.push_back({cfg.constants.cstar, "c*"});
        PlotSeries s;
        s.label = "low/high";
        double cross_t = -1.0, cross_y = 0.0;
        for (size_t r = 0; r < tb.nrows(); ++r) {
            if (t[r] <= 0.0) continue;
            const double lo = tb.at(r, "w_lo5"), hi = tb.at(r, "w_hi5");
            if (lo == 0.0 && hi == 0.0) continue;
            const double ratio =
                hi == 0.0 ? std::numeric_limits<double>::infinity() : lo / hi;
            if (std::isinf(ratio)) continue;
            s.x.push_back(t[r]);
            s.y.push_back(ratio);
            if (cross_t < 0.0 && !(ratio <= cfg.constants.cstar)) {
                cross_t = t[r];
                cross_y = ratio;
            }
        }
        plot.series.push_back(std::move(s));
        if (cross_t >= 0.0) {
            char data[40];
            std::snprintf(data, sizeof(data), "%.17g", cross_t);
            plot.markers.push_back({cross_t, cross_y, "cstar-crossing", data});
        }
        atomic_write(dir + "/plots/thm5_ratio.svg", plot.render());
    }
    return exit_ok;
}

}  // namespace sqg
