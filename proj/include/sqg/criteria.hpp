#pragma once

#include <optional>
#include <string>
#include <vector>

#include "json.hpp"
#include "sqg/norms.hpp"
#include "sqg/series.hpp"

namespace sqg {

/// The papers' symbolic universal constants, made explicit and configurable.
/// Defaults are 1.0 until a calibration run overwrites them; provenance
/// records where each value came from.
struct CalibrationConstants {
    double C0 = 1.0;        // minimum-existence-time constant
    double Cb = 1.0;        // low-frequency partial-sum operator bound
    double Cprop = 1.0;     // constant of the smallness proposition
    double cstar = 1.0;     // uniqueness-cutoff constant
    double eps_star = 1.0;  // smallness threshold of the endpoint criterion
    double lambda_bern = 1.0;  // per-shell dissipation (Bernstein) constant

    std::string provenance_C0 = "configured";
    std::string provenance_Cb = "configured";
    std::string provenance_Cprop = "configured";
    std::string provenance_cstar = "configured";
    std::string provenance_eps_star = "configured";
    std::string provenance_lambda_bern = "configured";
    std::string calibration_run_id;

    std::vector<std::string> validate() const;
};

void to_json(nlohmann::json& j, const CalibrationConstants& c);
void from_json(const nlohmann::json& j, CalibrationConstants& c);

enum class Verdict { holds, fails, vacuous, unmeasured };
const char* to_string(Verdict v);

// ---------------------------------------------------------------------------
// closed-form quantities

/// Admissible Sobolev window of the local theory: s in (2-2a, 2-a).
bool admissible_s(double s, double alpha);

/// Minimum guaranteed existence time: T_min = C0 * h^{-2a/(s-2+2a)}.
double ju_tmin(double h_norm, double s, double alpha, double C0);

/// gamma = (T_min / T_star)^{(s-2+2a)/(2a)}.
double gamma_for(double t_min, double t_star, double s, double alpha);

struct PropQuantities {
    double t_check = 0.0;    // (gamma / (2 C h))^{2a/(s-2+2a)}
    double j_min = 0.0;      // real-valued minimal cutoff from
                             // 2^{2aJ} = (2C/gamma) (2C h / gamma)^{2a/(s-2+2a)}
};

PropQuantities prop_quantities(double h_norm, double s, double alpha, double gamma,
                               double c_prop);

/// Real-valued minimal J of the prescribed-time criterion, from
/// 2^{2aJ} = C * h^{1 + 4a/(s-2+2a)} * T^{1 + (s-2+sa)/(2a)} as displayed;
/// the prefactor is derived from (Cprop, C0).
double thm1_j_bound(double h_norm, double s, double alpha, double t_star,
                    const CalibrationConstants& consts);

/// J(t) of the dynamic uniqueness cutoff:
/// 2^{2Ja} = cstar * g^{qa/(q-1)}; q = inf uses the limit exponent a.
/// Returns -inf when g == 0 (criterion vacuous).
double thm5_cutoff(double grad_norm_q, double q, double alpha, double cstar);

// ---------------------------------------------------------------------------
// shell-series helpers (ratios recomputable from persisted norm reports)

/// Shell spectrum of one table row.
ShellSpectrum shells_of_row(const SeriesTable& tb, size_t row);

/// Low/high split of the shell-aggregated Sobolev mass at a cutoff:
/// low collects shells j < J, high j >= J.
RatioValue shell_sparseness_ratio(const ShellSpectrum& sp, double J, double s);

// ---------------------------------------------------------------------------
// reports

struct PropReport {
    double s = 0, alpha = 0, gamma = 0;
    double h0 = 0;
    double t_check = 0, j_min = 0;
    int j_used = 0;
    double threshold = 0;  // gamma / (4 Cb)
    double ratio0 = 0;     // low/high sparseness of the data at j_used
    bool ratio0_defined = true;
    Verdict hypothesis = Verdict::unmeasured;
    double h_at_t = -1.0;
    double contraction = -1.0;  // h(t_check)/h0
    Verdict conclusion = Verdict::unmeasured;
    Verdict overall = Verdict::unmeasured;
    double t_min = 0;  // Ju time at h0, for the t_check < T_min sanity line
    std::string note;
};

PropReport prop_evaluate(const SeriesTable& traj, double s, double alpha, double gamma,
                         const CalibrationConstants& consts);

struct Thm1Report {
    double s = 0, alpha = 0, t_star = 0, t_min = 0, gamma = 0;
    double h0 = 0;
    double j_bound = 0;  // real-valued displayed bound
    int j_used = 0;
    double threshold = 0;
    double ratio0 = 0;
    bool ratio0_defined = true;
    Verdict hypothesis = Verdict::unmeasured;
    double sup_growth = -1.0;  // sup_t h(t)/h0 over [0, min(T*, t_end)]
    Verdict conclusion = Verdict::unmeasured;  // sup <= 2
    Verdict overall = Verdict::unmeasured;
    std::string note;
};

Thm1Report thm1_evaluate(const SeriesTable& traj, double s, double alpha, double t_star,
                         const CalibrationConstants& consts);

struct Thm2Report {
    double s = 0, alpha = 0, prefactor = 1;
    bool flagged = false;
    double t_flag = 0;
    double t_max = 0;          // fitted blow-up time
    bool fit_ok = false;
    double c_lower_min = 0;    // min (Tmax-t) h^{2a/(s-2+2a)}; lower sandwich needs >= C0
    double c_upper_required = 0;  // max of the same series (the smallest admissible C*)
    Verdict sandwich_lower = Verdict::unmeasured;
    std::vector<double> t;
    std::vector<double> j_of_t;
    std::vector<double> ratio;  // shell-aggregated low/high at J(t)
    double inf_ratio = 0;
    Verdict conclusion = Verdict::unmeasured;  // inf ratio > cstar
    Verdict overall = Verdict::unmeasured;
    std::string note;
};

Thm2Report thm2_monitor(const SeriesTable& traj, double s, double alpha,
                        const CalibrationConstants& consts, bool blowup_flagged,
                        double t_flag, double prefactor = 1.0);

struct Thm3Report {
    double s = 0, alpha = 0, epsilon = 0;
    double c3 = 0;            // C(s,a) of the displayed identity (anchored to Cprop)
    double eps_star = 0;
    std::vector<double> t;
    std::vector<double> j_display;  // from 2^{(2-s+2a)J} = C3 h(t)
    std::vector<double> j_chain;    // from the proposition-backed chain
    std::vector<double> besov_low;  // || Delta_{<J(t)} theta ||_{B^{2-2a}_{2,inf}}
    double sup_besov_low = 0;
    Verdict conclusion = Verdict::unmeasured;  // sup <= eps_star
    Verdict overall = Verdict::unmeasured;
    std::string note;
};

Thm3Report thm3_monitor(const SeriesTable& traj, double s, double alpha,
                        const CalibrationConstants& consts);

struct Thm4Report {
    int J = 0;
    double p = 0, q = 0;
    bool w_nonzero = false;
    std::vector<double> t;
    std::vector<double> ratio;  // ||w_{>=J}||_p / ||w_{<J}||_p
    double sup_ratio = 0;
    bool sup_finite = false;
    Verdict hypothesis = Verdict::unmeasured;   // boundedness observed
    bool contradiction_witness = false;         // bounded ratio with w != 0
    Verdict overall = Verdict::unmeasured;
    std::string note;
};

Thm4Report thm4_monitor(const SeriesTable& traj, int J, double q);

struct Thm5Report {
    double p = 0, q = 0, alpha = 0, cstar = 0, delta = 0;
    bool w_nonzero = false;
    std::vector<double> t;
    std::vector<double> j_of_t;   // recomputed from the recorded gradient column
    std::vector<double> ratio;    // ||w_{<=J(t)}||_p / ||w_{>J(t)}||_p
    double first_crossing = -1.0; // first t with ratio > cstar (-1: none)
    Verdict hypothesis = Verdict::unmeasured;  // ratio <= cstar on (0, delta]
    int decay_audit_checked = 0;   // probes where the hypothesis held
    int decay_audit_violations = 0;  // and d/dt ||w||_p^p > tolerance
    Verdict overall = Verdict::unmeasured;
    std::string note;
};

Thm5Report thm5_monitor(const SeriesTable& traj, double p, double q, double alpha,
                        const CalibrationConstants& consts, double delta);

nlohmann::json to_json(const PropReport& r);
nlohmann::json to_json(const Thm1Report& r);
nlohmann::json to_json(const Thm2Report& r);
nlohmann::json to_json(const Thm3Report& r);
nlohmann::json to_json(const Thm4Report& r);
nlohmann::json to_json(const Thm5Report& r);

}  // namespace sqg
