#pragma once

#include "sqg/criteria.hpp"
#include "sqg/evolution.hpp"

namespace sqg {

/// Exact lattice operator bound of the low-frequency partial-sum map in the
/// shell-aggregated Sobolev metric: the largest per-mode ratio
/// sqrt(sum_{j<J} phi_j^2 4^{js}) / (chi_J |xi|^s) over lattice modes and
/// cutoffs.  No sampling involved.
double measure_cb(const FilterBank& bank, double s);

struct C0Member {
    double h = 0.0;        // initial Sobolev norm
    double tau = 0.0;      // first probe time with h(t) > 2 h(0)
    bool censored = false; // never doubled within the budget
    double c0 = 0.0;       // tau * h^{2a/(s-2+2a)}
};

struct C0Calibration {
    double C0 = 0.0;
    bool failed = false;
    std::string reason;
    std::vector<C0Member> members;
};

/// Largest C0 such that h(t) <= 2 h(0) held on [0, T_min(C0)] across the
/// family, capped (censored members only bound C0 from below).  Fails when
/// a member doubles before its first probe.
C0Calibration calibrate_c0(const std::vector<SpectralField>& family, double s,
                           const StepperConfig& cfg, const ProbeSchedule& probes,
                           const FilterBank& bank, double cap);

struct CpropTrial {
    double c = 0.0;
    double t_check = 0.0;
    double j_min = 0.0;
    bool feasible = false;   // t_check and J within the desk-scale window
    bool conclusion = false; // contraction achieved across the family
    double worst_contraction = 0.0;
};

struct CpropCalibration {
    double C = 0.0;
    bool failed = false;
    std::string reason;
    std::vector<CpropTrial> trials;
};

/// Empirical stand-in for the smallness proposition's constant: the largest
/// C in [c_lo, c_hi] (geometric scan) for which high-frequency data built at
/// the induced cutoff contracts by gamma at the induced t_check, subject to
/// desk-scale feasibility (resolvable J, t_check <= min(1, margin * T_min)).
CpropCalibration calibrate_cprop(const GridSpec& grid, const FilterBank& bank,
                                 double s, double alpha, double gamma, double h_target,
                                 int j_data_cap, const StepperConfig& cfg,
                                 const ProbeSchedule& probes, double c0,
                                 double c_lo = 0.05, double c_hi = 0.6,
                                 int scan_points = 12, uint64_t seed = 7);

}  // namespace sqg
