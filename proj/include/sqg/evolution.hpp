#pragma once

#include <functional>
#include <optional>

#include "sqg/norms.hpp"
#include "sqg/series.hpp"
#include "sqg/stepper.hpp"

namespace sqg {

struct DtPolicy {
    enum class Kind { fixed, cfl } kind = Kind::fixed;
    double dt = 1e-3;        // fixed step
    double safety = 0.4;     // cfl: dt = safety * dx / max|u|
    double dt_max = 1e-2;    // cfl ceiling (also used while u == 0)
    double dt_min = 0.0;     // cfl floor; 0 disables

    std::vector<std::string> validate() const;
};

struct StepperConfig {
    double alpha = 0.25;
    EquationMode mode = EquationMode::full;
    DtPolicy dt_policy;
    double t_end = 1.0;
    double checkpoint_every = 0.0;  // 0: keep no snapshots
    bool record_steps = true;       // per-step energy/dissipation series

    std::vector<std::string> validate() const;
};

/// What to measure at probe times.
struct ProbeSchedule {
    double probe_dt = 0.1;
    std::vector<double> sobolev_s;
    std::vector<double> lp_p;
    std::vector<std::pair<double, double>> besov_sp;
    bool shells = true;
};

struct BlowupPolicy {
    double norm_multiple = 10.0;  // flag when Hdot^s exceeds this multiple of t=0
    double monitor_s = 0.0;       // 0: first entry of sobolev_s
    double tail_fraction = 0.01;  // flag when tail energy fraction exceeds this
    double tail_band = 0.75;      // tail = modes with |k|_inf > band * dealias_kmax
};

struct ProbeRow {
    double t = 0.0;
    double l2 = 0.0;
    double linf = 0.0;
    NormReport norms;
    double max_u = 0.0;
    double dissipation = 0.0;
};

struct StepRow {
    double t = 0.0;
    double l2sq = 0.0;
    double dissipation = 0.0;
    double dt = 0.0;
};

struct TrajectoryRecord {
    ProbeSchedule schedule;
    std::vector<ProbeRow> rows;
    std::vector<StepRow> steps;
    std::vector<std::pair<double, SpectralField>> snapshots;
    SpectralField final_state;
    double t_final = 0.0;
    bool integrator_failed = false;
    double t_fail = 0.0;
    bool blowup_flag = false;
    double t_flag = 0.0;
    std::string flag_reason;

    /// Probe rows as named columns (same naming as the CSV on disk).
    SeriesTable to_table() const;
};

TrajectoryRecord evolve(const SpectralField& theta0, const StepperConfig& cfg,
                        const ProbeSchedule& probes, const FilterBank& bank,
                        const BlowupPolicy& blowup = {}, double t0 = 0.0);

/// Twin-run diagnostics recorded at each probe for w = theta1 - theta2.
struct TwinDiagnostics {
    int thm4_J = 3;       // fixed integer cutoff of Theorem "high modes dominate"
    double thm4_p = 4.0;  // p = 2q/(q-1) chosen by the caller
    double thm5_p = 4.0;
    double thm5_q = 2.0;
    /// J(t) from the recorded ||grad theta1||_q (the caller binds the
    /// constants); must be set.
    std::function<double(double)> cutoff_of_grad;
};

struct TwinRow {
    double t = 0.0;
    double w_l2 = 0.0, w_linf = 0.0;
    double w_p4 = 0.0, w_lo4 = 0.0, w_hi4 = 0.0;
    double w_p5 = 0.0, w_lo5 = 0.0, w_hi5 = 0.0;
    double grad1_q = 0.0;
    double j5 = 0.0;
};

struct TwinRecord {
    TrajectoryRecord first;  // probe rows of theta1
    std::vector<TwinRow> wrows;
    SpectralField final_second;
    bool diverged = false;  // one trajectory failed

    SeriesTable to_table() const;  // first's columns + w diagnostics
};

TwinRecord twin_evolve(const SpectralField& theta1_0, const SpectralField& theta2_0,
                       const StepperConfig& cfg, const ProbeSchedule& probes,
                       const FilterBank& bank, const TwinDiagnostics& diag,
                       const BlowupPolicy& blowup = {});

/// Residual of the per-shell energy identity
///   d/dt ||theta_j||_2^2 + 2 ||Lambda^alpha theta_j||_2^2
///     = 2 <[u, Delta_j] grad theta, theta_j>
/// evaluated from snapshots by centered time differences, with the
/// commutator formed with the same dealiased products as the solver.
struct AuditReport {
    int j = 0;
    std::vector<double> t;         // interior snapshot times
    std::vector<double> residual;
    double max_residual = 0.0;     // max |r_j|
    double normalized_max = 0.0;   // relative to the largest balance term
    // measured per-shell dissipation constant ||Lambda^a theta_j||^2 /
    // (2^{2aj} ||theta_j||^2): a range, not a single number, because it
    // depends on the shell's spectral profile
    double lambda_min = 0.0;
    double lambda_max = 0.0;
};

AuditReport per_mode_energy_audit(
    const std::vector<std::pair<double, SpectralField>>& snapshots, int j,
    double alpha, const FilterBank& bank, EquationMode mode = EquationMode::full);

}  // namespace sqg
