#include "sqg/calibration.hpp"

#include <cmath>

#include "sqg/random_field.hpp"

namespace sqg {

double measure_cb(const FilterBank& bank, double s) {
    const auto& xi = bank.xi_abs();
    double worst = 0.0;
    for (int J = bank.j_min(); J <= bank.j_max() + 2; ++J) {
        for (size_t i = 0; i < xi.size(); ++i) {
            const double r = xi[i];
            if (r == 0.0) continue;
            const double chiJ = FilterBank::chi(r / std::exp2(J));
            if (chiJ == 0.0) continue;
            double num2 = 0.0;
            for (int j = bank.j_min(); j < J && j <= bank.j_max(); ++j) {
                const double v = bank.phi(j)[i] * std::exp2(j * s);
                num2 += v * v;
            }
            if (num2 == 0.0) continue;
            worst = std::max(worst, std::sqrt(num2) / (chiJ * std::pow(r, s)));
        }
    }
    return worst;
}

C0Calibration calibrate_c0(const std::vector<SpectralField>& family, double s,
                           const StepperConfig& cfg, const ProbeSchedule& probes,
                           const FilterBank& bank, double cap) {
    C0Calibration out;
    if (family.empty()) {
        out.failed = true;
        out.reason = "empty calibration family";
        return out;
    }
    bool any_constraint = false;
    double c0 = cap;
    for (const SpectralField& theta0 : family) {
        TrajectoryRecord rec = evolve(theta0, cfg, probes, bank);
        const SeriesTable tb = rec.to_table();
        const int ct = tb.col_required("t");
        const int ch = tb.col_required(col_hs(s));
        C0Member m;
        m.h = tb.rows.front()[ch];
        m.censored = true;
        m.tau = rec.t_final;
        for (size_t r = 1; r < tb.nrows(); ++r) {
            if (tb.rows[r][ch] > 2.0 * m.h) {
                m.tau = tb.rows[r][ct];
                m.censored = false;
                break;
            }
        }
        const double e = 2.0 * cfg.alpha / (s - 2.0 + 2.0 * cfg.alpha);
        m.c0 = m.tau * std::pow(m.h, e);
        out.members.push_back(m);
        if (!m.censored) {
            if (tb.nrows() > 1 && m.tau <= tb.rows[1][ct] + 1e-12) {
                out.failed = true;
                out.reason = "a family member doubled before its first probe";
                return out;
            }
            any_constraint = true;
            c0 = std::min(c0, m.c0);
        }
    }
    out.C0 = any_constraint ? std::min(cap, c0) : cap;
    return out;
}

CpropCalibration calibrate_cprop(const GridSpec& grid, const FilterBank& bank,
                                 double s, double alpha, double gamma, double h_target,
                                 int j_data_cap, const StepperConfig& cfg,
                                 const ProbeSchedule& probes, double c0, double c_lo,
                                 double c_hi, int scan_points, uint64_t seed) {
    CpropCalibration out;
    const double margin = 0.95;
    const std::vector<double> scales = {1.0, 0.95, 0.9};

    // Desk-scale feasibility window, exact by monotonicity in C:
    //   t_check <= 1 and t_check <= 0.9 T_min bound C from below
    //   (the Ju-window bound is amplitude-free: t_check/T_min depends on C only);
    //   the resolvable cutoff J <= j_data_cap bounds C from above.
    const double expo = 2.0 * alpha / (s - 2.0 + 2.0 * alpha);
    const double h_min = scales.back() * h_target;
    double lo = std::max(c_lo, gamma / (2.0 * h_min));                          // t <= 1
    lo = std::max(lo, 0.5 * gamma * std::pow(0.9 * c0, -1.0 / expo));           // Ju window
    double hi = c_hi;
    {
        double a = lo, b = c_hi;
        auto jmin_of = [&](double c) {
            return prop_quantities(h_target, s, alpha, gamma, c).j_min;
        };
        if (jmin_of(a) > j_data_cap) {
            out.failed = true;
            out.reason = "feasibility window is empty: the cutoff is unresolvable "
                         "even at the smallest admissible constant";
            return out;
        }
        if (jmin_of(b) > j_data_cap) {
            for (int it = 0; it < 60; ++it) {
                const double mid = 0.5 * (a + b);
                (jmin_of(mid) > j_data_cap ? b : a) = mid;
            }
            hi = a;
        }
    }
    if (!(lo < hi)) {
        out.failed = true;
        out.reason = "feasibility window is empty on this grid";
        return out;
    }

    for (int k = 0; k < scan_points; ++k) {
        // geometric scan from the top of the window down
        const double c =
            hi * std::pow(lo / hi, static_cast<double>(k) / (scan_points - 1));
        CpropTrial trial;
        trial.c = c;
        trial.feasible = true;
        trial.conclusion = true;
        for (double sc : scales) {
            const double h = sc * h_target;
            const PropQuantities q = prop_quantities(h, s, alpha, gamma, c);
            const int J = static_cast<int>(std::ceil(q.j_min - 1e-9));
            if (sc == 1.0) {
                trial.t_check = q.t_check;
                trial.j_min = q.j_min;
            }
            const double t_min = ju_tmin(h, s, alpha, c0);
            if (J > j_data_cap || q.t_check > std::min(1.0, 0.9 * t_min) ||
                q.t_check > cfg.t_end) {
                trial.feasible = false;
                break;
            }
            const double xi_hi =
                std::min(std::exp2(j_data_cap), bank.grid().dealias_xi());
            SpectralField theta0 = random_band_field(
                grid, std::exp2(J), xi_hi, 0.0, seed, static_cast<uint64_t>(k) + 1);
            const double h_now = sobolev_norm(theta0, s);
            if (!(h_now > 0.0)) {
                trial.feasible = false;
                break;
            }
            theta0 *= h / h_now;

            StepperConfig run = cfg;
            run.t_end = q.t_check;
            run.checkpoint_every = 0.0;
            run.record_steps = false;
            ProbeSchedule quiet;
            quiet.probe_dt = q.t_check;  // endpoints only
            quiet.sobolev_s = {s};
            quiet.shells = false;
            TrajectoryRecord rec = evolve(theta0, run, quiet, bank);
            if (rec.integrator_failed) {
                trial.conclusion = false;
                break;
            }
            const double contraction = sobolev_norm(rec.final_state, s) / h;
            trial.worst_contraction = std::max(trial.worst_contraction, contraction);
            if (!(contraction <= margin * gamma)) {
                trial.conclusion = false;
                break;
            }
        }
        out.trials.push_back(trial);
        if (trial.feasible && trial.conclusion) {
            out.C = trial.c;
            return out;
        }
    }
    out.failed = true;
    out.reason = "no scanned constant met both feasibility and the contraction target";
    return out;
}

}  // namespace sqg
