#include "sqg/criteria.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace sqg {

using nlohmann::json;

std::vector<std::string> CalibrationConstants::validate() const {
    std::vector<std::string> bad;
    auto pos = [&](double v, const char* name) {
        if (!(v > 0.0)) bad.push_back(std::string("constants.") + name + " must be > 0");
    };
    pos(C0, "C0");
    pos(Cb, "Cb");
    pos(Cprop, "Cprop");
    pos(cstar, "cstar");
    pos(eps_star, "eps_star");
    pos(lambda_bern, "lambda_bern");
    return bad;
}

void to_json(json& j, const CalibrationConstants& c) {
    j = json{{"C0", c.C0},
             {"Cb", c.Cb},
             {"Cprop", c.Cprop},
             {"cstar", c.cstar},
             {"eps_star", c.eps_star},
             {"lambda_bern", c.lambda_bern},
             {"provenance",
              {{"C0", c.provenance_C0},
               {"Cb", c.provenance_Cb},
               {"Cprop", c.provenance_Cprop},
               {"cstar", c.provenance_cstar},
               {"eps_star", c.provenance_eps_star},
               {"lambda_bern", c.provenance_lambda_bern},
               {"run_id", c.calibration_run_id}}}};
}

void from_json(const json& j, CalibrationConstants& c) {
    c = CalibrationConstants{};
    c.C0 = j.value("C0", 1.0);
    c.Cb = j.value("Cb", 1.0);
    c.Cprop = j.value("Cprop", 1.0);
    c.cstar = j.value("cstar", 1.0);
    c.eps_star = j.value("eps_star", 1.0);
    c.lambda_bern = j.value("lambda_bern", 1.0);
    if (j.contains("provenance")) {
        const json& p = j.at("provenance");
        c.provenance_C0 = p.value("C0", "configured");
        c.provenance_Cb = p.value("Cb", "configured");
        c.provenance_Cprop = p.value("Cprop", "configured");
        c.provenance_cstar = p.value("cstar", "configured");
        c.provenance_eps_star = p.value("eps_star", "configured");
        c.provenance_lambda_bern = p.value("lambda_bern", "configured");
        c.calibration_run_id = p.value("run_id", "");
    }
}

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::holds: return "holds";
        case Verdict::fails: return "fails";
        case Verdict::vacuous: return "vacuous";
        case Verdict::unmeasured: return "unmeasured";
    }
    return "unmeasured";
}

bool admissible_s(double s, double alpha) {
    return s > 2.0 - 2.0 * alpha && s < 2.0 - alpha;
}

double ju_tmin(double h_norm, double s, double alpha, double C0) {
    if (!admissible_s(s, alpha))
        throw std::invalid_argument("ju_tmin: s must lie in (2-2a, 2-a)");
    if (!(h_norm > 0.0)) throw std::invalid_argument("ju_tmin: norm must be > 0");
    return C0 * std::pow(h_norm, -2.0 * alpha / (s - 2.0 + 2.0 * alpha));
}

double gamma_for(double t_min, double t_star, double s, double alpha) {
    return std::pow(t_min / t_star, (s - 2.0 + 2.0 * alpha) / (2.0 * alpha));
}

PropQuantities prop_quantities(double h_norm, double s, double alpha, double gamma,
                               double c_prop) {
    if (!(gamma > 0.0 && gamma < 1.0))
        throw std::invalid_argument("prop_quantities: gamma must lie in (0,1)");
    if (!admissible_s(s, alpha))
        throw std::invalid_argument("prop_quantities: s must lie in (2-2a, 2-a)");
    if (!(h_norm > 0.0)) throw std::invalid_argument("prop_quantities: norm must be > 0");
    const double e = 2.0 * alpha / (s - 2.0 + 2.0 * alpha);
    PropQuantities q;
    q.t_check = std::pow(gamma / (2.0 * c_prop * h_norm), e);
    q.j_min = std::log2((2.0 * c_prop / gamma) *
                        std::pow(2.0 * c_prop * h_norm / gamma, e)) /
              (2.0 * alpha);
    return q;
}

double thm1_j_bound(double h_norm, double s, double alpha, double t_star,
                    const CalibrationConstants& consts) {
    const double d = s - 2.0 + 2.0 * alpha;
    const double c = std::pow(2.0 * consts.Cprop, (s - 2.0 + 4.0 * alpha) / d) *
                     std::pow(consts.C0, -(s - 2.0 + 4.0 * alpha) / (2.0 * alpha));
    const double he = 1.0 + 4.0 * alpha / d;
    const double te = 1.0 + (s - 2.0 + s * alpha) / (2.0 * alpha);
    return std::log2(c * std::pow(h_norm, he) * std::pow(t_star, te)) / (2.0 * alpha);
}

double thm5_cutoff(double grad_norm_q, double q, double alpha, double cstar) {
    if (!(q > 1.0)) throw std::invalid_argument("thm5_cutoff: q must lie in (1, inf]");
    if (!(cstar > 0.0)) throw std::invalid_argument("thm5_cutoff: cstar must be > 0");
    if (grad_norm_q < 0.0) throw std::invalid_argument("thm5_cutoff: negative norm");
    if (grad_norm_q == 0.0) return -std::numeric_limits<double>::infinity();
    const double expo = std::isinf(q) ? alpha : q * alpha / (q - 1.0);
    return std::log2(cstar * std::pow(grad_norm_q, expo)) / (2.0 * alpha);
}

ShellSpectrum shells_of_row(const SeriesTable& tb, size_t row) {
    ShellSpectrum sp;
    sp.p = 2.0;
    std::vector<std::pair<int, double>> found;
    for (size_t c = 0; c < tb.columns.size(); ++c) {
        const std::string& name = tb.columns[c];
        if (name.rfind("shell_", 0) != 0) continue;
        found.emplace_back(std::stoi(name.substr(6)), tb.rows[row][c]);
    }
    if (found.empty()) throw std::out_of_range("shells_of_row: no shell columns");
    std::sort(found.begin(), found.end());
    sp.j_min = found.front().first;
    for (auto& [j, e] : found) sp.e.push_back(e);
    return sp;
}

namespace {

RatioValue make_ratio(double num, double den) {
    RatioValue r;
    r.numerator = num;
    r.denominator = den;
    if (num == 0.0 && den == 0.0) return r;
    r.defined = true;
    r.value = den == 0.0 ? std::numeric_limits<double>::infinity() : num / den;
    return r;
}

size_t nearest_row(const SeriesTable& tb, double t) {
    size_t best = 0;
    double err = std::numeric_limits<double>::infinity();
    for (size_t r = 0; r < tb.nrows(); ++r) {
        const double d = std::abs(tb.rows[r][tb.col_required("t")] - t);
        if (d < err) {
            err = d;
            best = r;
        }
    }
    return best;
}

json series_json(const std::vector<double>& v) { return json(v); }

}  // namespace

RatioValue shell_sparseness_ratio(const ShellSpectrum& sp, double J, double s) {
    double lo2 = 0.0, hi2 = 0.0;
    for (size_t i = 0; i < sp.e.size(); ++i) {
        const int j = sp.j_min + static_cast<int>(i);
        const double a = std::exp2(j * s) * sp.e[i];
        (j < J ? lo2 : hi2) += a * a;
    }
    return make_ratio(std::sqrt(lo2), std::sqrt(hi2));
}

// ---------------------------------------------------------------------------

PropReport prop_evaluate(const SeriesTable& traj, double s, double alpha, double gamma,
                         const CalibrationConstants& consts) {
    PropReport r;
    r.s = s;
    r.alpha = alpha;
    r.gamma = gamma;
    r.h0 = traj.at(0, col_hs(s));
    if (!(r.h0 > 0.0)) {
        r.overall = Verdict::vacuous;
        r.note = "initial norm is zero";
        return r;
    }
    const PropQuantities q = prop_quantities(r.h0, s, alpha, gamma, consts.Cprop);
    r.t_check = q.t_check;
    r.j_min = q.j_min;
    r.j_used = static_cast<int>(std::ceil(q.j_min - 1e-9));
    r.threshold = gamma / (4.0 * consts.Cb);
    r.t_min = ju_tmin(r.h0, s, alpha, consts.C0);

    const RatioValue rv =
        shell_sparseness_ratio(shells_of_row(traj, 0), r.j_used, s);
    r.ratio0_defined = rv.defined;
    r.ratio0 = rv.defined ? rv.value : 0.0;
    r.hypothesis = !rv.defined                  ? Verdict::vacuous
                   : rv.value <= r.threshold    ? Verdict::holds
                                                : Verdict::fails;

    const double t_last = traj.rows.back()[traj.col_required("t")];
    if (t_last + 1e-9 < r.t_check) {
        r.conclusion = Verdict::unmeasured;
        r.note = "trajectory ends before t_check";
    } else {
        const size_t row = nearest_row(traj, r.t_check);
        r.h_at_t = traj.at(row, col_hs(s));
        r.contraction = r.h_at_t / r.h0;
        r.conclusion =
            r.contraction <= gamma * (1.0 + 1e-9) ? Verdict::holds : Verdict::fails;
    }
    r.overall = r.hypothesis == Verdict::holds ? r.conclusion : Verdict::vacuous;
    if (r.t_check >= r.t_min)
        r.note += (r.note.empty() ? "" : "; ") + std::string(
            "t_check is not below the Ju minimum time for these constants");
    return r;
}

Thm1Report thm1_evaluate(const SeriesTable& traj, double s, double alpha, double t_star,
                         const CalibrationConstants& consts) {
    Thm1Report r;
    r.s = s;
    r.alpha = alpha;
    r.t_star = t_star;
    r.h0 = traj.at(0, col_hs(s));
    if (!(r.h0 > 0.0)) {
        r.overall = Verdict::vacuous;
        r.note = "initial norm is zero";
        return r;
    }
    r.t_min = ju_tmin(r.h0, s, alpha, consts.C0);
    if (!(t_star > r.t_min))
        throw std::invalid_argument("thm1_evaluate: requires T_star > T_min");
    r.gamma = gamma_for(r.t_min, t_star, s, alpha);
    r.j_bound = thm1_j_bound(r.h0, s, alpha, t_star, consts);
    r.j_used = static_cast<int>(std::ceil(r.j_bound - 1e-9));
    r.threshold = r.gamma / (4.0 * consts.Cb);

    const RatioValue rv =
        shell_sparseness_ratio(shells_of_row(traj, 0), r.j_used, s);
    r.ratio0_defined = rv.defined;
    r.ratio0 = rv.defined ? rv.value : 0.0;
    r.hypothesis = !rv.defined                  ? Verdict::vacuous
                   : rv.value <= r.threshold    ? Verdict::holds
                                                : Verdict::fails;

    const int ct = traj.col_required("t");
    const int ch = traj.col_required(col_hs(s));
    const double window = std::min(t_star, traj.rows.back()[ct]);
    double sup = 0.0;
    for (const auto& row : traj.rows)
        if (row[ct] <= window + 1e-9) sup = std::max(sup, row[ch] / r.h0);
    r.sup_growth = sup;
    if (traj.rows.back()[ct] + 1e-9 < t_star) {
        r.conclusion = Verdict::unmeasured;
        r.note = "simulation budget ends before T_star; growth checked on the "
                 "available window";
        if (sup > 2.0 * (1.0 + 1e-9)) r.conclusion = Verdict::fails;
    } else {
        r.conclusion = sup <= 2.0 * (1.0 + 1e-9) ? Verdict::holds : Verdict::fails;
    }
    r.overall = r.hypothesis == Verdict::holds ? r.conclusion : Verdict::vacuous;
    return r;
}

Thm2Report thm2_monitor(const SeriesTable& traj, double s, double alpha,
                        const CalibrationConstants& consts, bool blowup_flagged,
                        double t_flag, double prefactor) {
    Thm2Report r;
    r.s = s;
    r.alpha = alpha;
    r.prefactor = prefactor;
    r.flagged = blowup_flagged;
    r.t_flag = t_flag;
    if (!blowup_flagged) {
        r.overall = Verdict::vacuous;
        r.note = "trajectory carries no blow-up flag";
        return r;
    }
    const int ct = traj.col_required("t");
    const int ch = traj.col_required(col_hs(s));
    const double expo = 2.0 * alpha / (s - 2.0 + 2.0 * alpha);

    // fit y = h^{-expo} ~ a + b t on the last quartile of the pre-flag window
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int m = 0;
    for (const auto& row : traj.rows) {
        const double t = row[ct];
        if (t > t_flag + 1e-12 || t < 0.75 * t_flag - 1e-12) continue;
        const double h = row[ch];
        if (!(h > 0.0)) continue;
        const double y = std::pow(h, -expo);
        sx += t;
        sy += y;
        sxx += t * t;
        sxy += t * y;
        ++m;
    }
    if (m >= 2) {
        const double det = m * sxx - sx * sx;
        if (det != 0.0) {
            const double b = (m * sxy - sx * sy) / det;
            const double a = (sy - b * sx) / m;
            if (b < 0.0) {
                r.t_max = -a / b;
                r.fit_ok = r.t_max > t_flag;
            }
        }
    }
    if (!r.fit_ok) {
        r.overall = Verdict::vacuous;
        r.note = "no decreasing Type-1 envelope could be fitted";
        return r;
    }

    double cmin = std::numeric_limits<double>::infinity(), cmax = 0.0;
    double inf_ratio = std::numeric_limits<double>::infinity();
    for (size_t i = 0; i < traj.nrows(); ++i) {
        const double t = traj.rows[i][ct];
        if (t > t_flag + 1e-12 || t >= r.t_max) continue;
        const double h = traj.rows[i][ch];
        if (!(h > 0.0)) continue;
        const double c = (r.t_max - t) * std::pow(h, expo);
        cmin = std::min(cmin, c);
        cmax = std::max(cmax, c);
        const double J = std::log2(prefactor / (r.t_max - t)) / (2.0 * alpha);
        const RatioValue rv = shell_sparseness_ratio(shells_of_row(traj, i), J, s);
        r.t.push_back(t);
        r.j_of_t.push_back(J);
        if (rv.defined) {
            r.ratio.push_back(rv.value);
            inf_ratio = std::min(inf_ratio, rv.value);
        } else {
            r.ratio.push_back(std::numeric_limits<double>::quiet_NaN());
        }
    }
    r.c_lower_min = cmin;
    r.c_upper_required = cmax;
    r.sandwich_lower =
        cmin >= consts.C0 * (1.0 - 1e-9) ? Verdict::holds : Verdict::fails;
    r.inf_ratio = inf_ratio;
    r.conclusion = inf_ratio > consts.cstar ? Verdict::holds : Verdict::fails;
    r.overall = r.conclusion;
    return r;
}

Thm3Report thm3_monitor(const SeriesTable& traj, double s, double alpha,
                        const CalibrationConstants& consts) {
    if (!admissible_s(s, alpha))
        throw std::invalid_argument("thm3_monitor: s must lie in (2-2a, 2-a)");
    Thm3Report r;
    r.s = s;
    r.alpha = alpha;
    r.epsilon = s - (2.0 - 2.0 * alpha);
    r.eps_star = consts.eps_star;

    const int ct = traj.col_required("t");
    const int ch = traj.col_required(col_hs(s));
    const double h0 = traj.rows.front()[ch];
    if (!(h0 > 0.0)) {
        r.overall = Verdict::vacuous;
        r.note = "initial norm is zero";
        return r;
    }
    const double e = 2.0 * alpha / (s - 2.0 + 2.0 * alpha);
    auto j_chain = [&](double h) {
        // proposition-backed chain at gamma = 1/2
        return std::log2(4.0 * consts.Cprop *
                         std::pow(4.0 * consts.Cprop * h, e)) /
               (2.0 * alpha);
    };
    // anchor the displayed identity 2^{(2-s+2a)J} = C3 h to the chain at t=0
    r.c3 = std::exp2((2.0 - s + 2.0 * alpha) * j_chain(h0)) / h0;

    const double bexp = 2.0 - 2.0 * alpha;
    double sup = 0.0;
    for (size_t i = 0; i < traj.nrows(); ++i) {
        const double h = traj.rows[i][ch];
        if (!(h > 0.0)) continue;
        const double J = std::log2(r.c3 * h) / (2.0 - s + 2.0 * alpha);
        const ShellSpectrum sp = shells_of_row(traj, i);
        double b = 0.0;
        for (size_t k = 0; k < sp.e.size(); ++k) {
            const int j = sp.j_min + static_cast<int>(k);
            if (j >= J) continue;
            b = std::max(b, std::exp2(j * bexp) * sp.e[k]);
        }
        r.t.push_back(traj.rows[i][ct]);
        r.j_display.push_back(J);
        r.j_chain.push_back(j_chain(h));
        r.besov_low.push_back(b);
        sup = std::max(sup, b);
    }
    r.sup_besov_low = sup;
    r.conclusion = sup <= consts.eps_star ? Verdict::holds : Verdict::fails;
    r.overall = r.conclusion;
    return r;
}

Thm4Report thm4_monitor(const SeriesTable& traj, int J, double q) {
    if (!(q > 1.0) || std::isinf(q))
        throw std::invalid_argument("thm4_monitor: q must lie in (1, inf)");
    Thm4Report r;
    r.J = J;
    r.q = q;
    r.p = 2.0 * q / (q - 1.0);
    const int ct = traj.col_required("t");
    const int cw = traj.col_required("w_p4");
    const int clo = traj.col_required("w_lo4");
    const int chi = traj.col_required("w_hi4");

    bool any_inf = false;
    double sup = 0.0;
    for (const auto& row : traj.rows) {
        if (row[ct] <= 0.0) continue;  // the theorem's sup runs over (0, T)
        if (row[cw] > 0.0) r.w_nonzero = true;
        const RatioValue rv = make_ratio(row[chi], row[clo]);
        if (!rv.defined) continue;
        r.t.push_back(row[ct]);
        r.ratio.push_back(rv.value);
        if (std::isinf(rv.value))
            any_inf = true;
        else
            sup = std::max(sup, rv.value);
    }
    if (!r.w_nonzero) {
        r.overall = Verdict::vacuous;
        r.note = "w vanishes at every probe";
        return r;
    }
    r.sup_finite = !any_inf && !r.ratio.empty();
    r.sup_ratio = any_inf ? std::numeric_limits<double>::infinity() : sup;
    r.hypothesis = r.sup_finite ? Verdict::holds : Verdict::fails;
    r.contradiction_witness = r.sup_finite && r.w_nonzero;
    r.overall = r.hypothesis;
    if (r.contradiction_witness)
        r.note = "high/low ratio stayed bounded while w != 0: at desk scale this "
                 "witnesses either a violated hypothesis or unresolved smallness";
    return r;
}

Thm5Report thm5_monitor(const SeriesTable& traj, double p, double q, double alpha,
                        const CalibrationConstants& consts, double delta) {
    Thm5Report r;
    r.p = p;
    r.q = q;
    r.alpha = alpha;
    r.cstar = consts.cstar;
    const int ct = traj.col_required("t");
    const int cw = traj.col_required("w_p5");
    const int clo = traj.col_required("w_lo5");
    const int chi = traj.col_required("w_hi5");
    const int cg = traj.col_required("grad1_q");
    const double t_end = traj.rows.back()[ct];
    r.delta = delta > 0.0 ? delta : t_end;

    std::vector<double> wp_pow(traj.nrows());
    for (size_t i = 0; i < traj.nrows(); ++i)
        wp_pow[i] = std::pow(traj.rows[i][cw], p);

    bool any = false, all_ok = true;
    for (size_t i = 0; i < traj.nrows(); ++i) {
        const auto& row = traj.rows[i];
        if (row[ct] <= 0.0) continue;
        if (row[cw] > 0.0) r.w_nonzero = true;
        const double J = thm5_cutoff(row[cg], q, alpha, consts.cstar);
        const RatioValue rv = make_ratio(row[clo], row[chi]);
        if (!rv.defined) continue;
        r.t.push_back(row[ct]);
        r.j_of_t.push_back(J);
        r.ratio.push_back(rv.value);
        if (row[ct] <= r.delta + 1e-12) {
            any = true;
            if (!(rv.value <= consts.cstar)) {
                all_ok = false;
                if (r.first_crossing < 0.0) r.first_crossing = row[ct];
            }
        }
    }
    if (!r.w_nonzero) {
        r.overall = Verdict::vacuous;
        r.note = "w vanishes at every probe";
        return r;
    }
    r.hypothesis = !any ? Verdict::unmeasured : (all_ok ? Verdict::holds : Verdict::fails);

    // proof-side audit: d/dt ||w||_p^p <= 0 whenever the ratio condition held
    for (size_t i = 1; i + 1 < traj.nrows(); ++i) {
        const double t = traj.rows[i][ct];
        if (t <= 0.0 || t > r.delta + 1e-12) continue;
        const double lo = traj.rows[i][clo], hi = traj.rows[i][chi];
        if (lo == 0.0 && hi == 0.0) continue;
        const double ratio = hi == 0.0 ? std::numeric_limits<double>::infinity() : lo / hi;
        if (!(ratio <= consts.cstar)) continue;
        const double span = traj.rows[i + 1][ct] - traj.rows[i - 1][ct];
        const double ddt = (wp_pow[i + 1] - wp_pow[i - 1]) / span;
        ++r.decay_audit_checked;
        const double scale = std::max({wp_pow[i - 1], wp_pow[i], wp_pow[i + 1], 1e-300});
        if (ddt > 1e-9 * scale / std::max(span, 1e-12)) ++r.decay_audit_violations;
    }
    r.overall = r.hypothesis;
    return r;
}

// ---------------------------------------------------------------------------

json to_json(const PropReport& r) {
    return json{{"theorem", "prop_smallness"},
                {"inputs", {{"s", r.s}, {"alpha", r.alpha}, {"gamma", r.gamma}}},
                {"h0", r.h0},
                {"t_check", r.t_check},
                {"t_min", r.t_min},
                {"j_min", r.j_min},
                {"j_used", r.j_used},
                {"threshold", r.threshold},
                {"ratio0", r.ratio0},
                {"ratio0_defined", r.ratio0_defined},
                {"hypothesis", to_string(r.hypothesis)},
                {"h_at_t_check", r.h_at_t},
                {"contraction", r.contraction},
                {"conclusion", to_string(r.conclusion)},
                {"overall", to_string(r.overall)},
                {"note", r.note}};
}

json to_json(const Thm1Report& r) {
    return json{{"theorem", "thm1_prescribed_time"},
                {"inputs", {{"s", r.s}, {"alpha", r.alpha}, {"T_star", r.t_star}}},
                {"h0", r.h0},
                {"T_min", r.t_min},
                {"gamma", r.gamma},
                {"j_bound", r.j_bound},
                {"j_used", r.j_used},
                {"threshold", r.threshold},
                {"ratio0", r.ratio0},
                {"ratio0_defined", r.ratio0_defined},
                {"hypothesis", to_string(r.hypothesis)},
                {"sup_growth", r.sup_growth},
                {"conclusion", to_string(r.conclusion)},
                {"overall", to_string(r.overall)},
                {"note", r.note}};
}

json to_json(const Thm2Report& r) {
    return json{{"theorem", "thm2_type1_blowup"},
                {"inputs", {{"s", r.s}, {"alpha", r.alpha}, {"prefactor", r.prefactor}}},
                {"flagged", r.flagged},
                {"t_flag", r.t_flag},
                {"t_max", r.t_max},
                {"fit_ok", r.fit_ok},
                {"c_lower_min", r.c_lower_min},
                {"c_upper_required", r.c_upper_required},
                {"sandwich_lower", to_string(r.sandwich_lower)},
                {"t", series_json(r.t)},
                {"j_of_t", series_json(r.j_of_t)},
                {"ratio", series_json(r.ratio)},
                {"inf_ratio", r.inf_ratio},
                {"conclusion", to_string(r.conclusion)},
                {"overall", to_string(r.overall)},
                {"note", r.note}};
}

json to_json(const Thm3Report& r) {
    return json{{"theorem", "thm3_endpoint"},
                {"inputs", {{"s", r.s}, {"alpha", r.alpha}, {"epsilon", r.epsilon}}},
                {"c3", r.c3},
                {"eps_star", r.eps_star},
                {"t", series_json(r.t)},
                {"j_display", series_json(r.j_display)},
                {"j_chain", series_json(r.j_chain)},
                {"besov_low", series_json(r.besov_low)},
                {"sup_besov_low", r.sup_besov_low},
                {"conclusion", to_string(r.conclusion)},
                {"overall", to_string(r.overall)},
                {"note", r.note}};
}

json to_json(const Thm4Report& r) {
    return json{{"theorem", "thm4_fixed_cutoff_uniqueness"},
                {"inputs", {{"J", r.J}, {"p", r.p}, {"q", r.q}}},
                {"w_nonzero", r.w_nonzero},
                {"t", series_json(r.t)},
                {"ratio", series_json(r.ratio)},
                {"sup_ratio", r.sup_ratio},
                {"sup_finite", r.sup_finite},
                {"hypothesis", to_string(r.hypothesis)},
                {"contradiction_witness", r.contradiction_witness},
                {"overall", to_string(r.overall)},
                {"note", r.note}};
}

json to_json(const Thm5Report& r) {
    return json{{"theorem", "thm5_dynamic_cutoff_uniqueness"},
                {"inputs",
                 {{"p", r.p}, {"q", r.q}, {"alpha", r.alpha}, {"cstar", r.cstar},
                  {"delta", r.delta}}},
                {"w_nonzero", r.w_nonzero},
                {"t", series_json(r.t)},
                {"j_of_t", series_json(r.j_of_t)},
                {"ratio", series_json(r.ratio)},
                {"first_crossing", r.first_crossing},
                {"hypothesis", to_string(r.hypothesis)},
                {"decay_audit_checked", r.decay_audit_checked},
                {"decay_audit_violations", r.decay_audit_violations},
                {"overall", to_string(r.overall)},
                {"note", r.note}};
}

}  // namespace sqg
