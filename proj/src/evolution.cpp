#include "sqg/evolution.hpp"

#include <cmath>
#include <stdexcept>

#include "sqg/fft.hpp"

namespace sqg {

std::vector<std::string> DtPolicy::validate() const {
    std::vector<std::string> bad;
    if (kind == Kind::fixed && !(dt > 0.0)) bad.push_back("stepper.dt must be > 0");
    if (kind == Kind::cfl) {
        if (!(safety > 0.0) || safety > 1.0) bad.push_back("stepper.safety must be in (0, 1]");
        if (!(dt_max > 0.0)) bad.push_back("stepper.dt_max must be > 0");
        if (dt_min < 0.0 || dt_min > dt_max) bad.push_back("stepper.dt_min must be in [0, dt_max]");
    }
    return bad;
}

std::vector<std::string> StepperConfig::validate() const {
    std::vector<std::string> bad = dt_policy.validate();
    if (mode != EquationMode::inviscid && (!(alpha > 0.0) || alpha > 1.0))
        bad.push_back("physics.alpha must be in (0, 1]");
    if (!(t_end >= 0.0)) bad.push_back("stepper.t_end must be >= 0");
    if (checkpoint_every < 0.0) bad.push_back("stepper.checkpoint_every must be >= 0");
    return bad;
}

namespace {

constexpr double kTimeTol = 1e-12;

double tail_energy_fraction(const SpectralField& f, double band) {
    const GridSpec& g = f.grid;
    const int n = g.n;
    const int cut = static_cast<int>(band * g.dealias_kmax());
    double tail = 0.0, total = 0.0;
    for (int iy = 0; iy < n; ++iy) {
        const int ky = g.wavenumber(iy);
        for (int ix = 0; ix < n; ++ix) {
            const int kx = g.wavenumber(ix);
            const double e = std::norm(f.at_index(ix, iy));
            total += e;
            if (std::max(std::abs(kx), std::abs(ky)) > cut) tail += e;
        }
    }
    return total > 0.0 ? tail / total : 0.0;
}

struct ProbeContext {
    const FilterBank* bank;
    const ProbeSchedule* probes;
    const BlowupPolicy* blowup;
    double alpha;
    EquationMode mode;
    double monitor_s = 0.0;
    double h0 = -1.0;
};

ProbeRow make_probe(const ProbeContext& ctx, const SpectralField& theta, double t,
                    double max_u) {
    ProbeRow row;
    row.t = t;
    row.l2 = lp_norm(theta, 2.0);
    row.linf = physical_max_abs(theta);
    row.norms = norm_report(*ctx.bank, theta, t, ctx.probes->sobolev_s, ctx.probes->lp_p,
                            ctx.probes->besov_sp, ctx.probes->shells);
    row.max_u = max_u;
    row.dissipation =
        ctx.mode == EquationMode::inviscid ? 0.0 : dissipation_rate(theta, ctx.alpha);
    return row;
}

void check_blowup(const ProbeContext& ctx, TrajectoryRecord& rec,
                  const SpectralField& theta, const ProbeRow& row) {
    if (rec.blowup_flag) return;
    const BlowupPolicy& bp = *ctx.blowup;
    auto it = row.norms.sobolev.find(ctx.monitor_s);
    if (ctx.h0 > 0.0 && it != row.norms.sobolev.end() &&
        it->second > bp.norm_multiple * ctx.h0) {
        rec.blowup_flag = true;
        rec.t_flag = row.t;
        rec.flag_reason = "sobolev norm exceeded configured multiple of its initial value";
        return;
    }
    if (tail_energy_fraction(theta, bp.tail_band) > bp.tail_fraction) {
        rec.blowup_flag = true;
        rec.t_flag = row.t;
        rec.flag_reason = "dealiased tail energy fraction exceeded threshold";
    }
}

}  // namespace

TrajectoryRecord evolve(const SpectralField& theta0, const StepperConfig& cfg,
                        const ProbeSchedule& probes, const FilterBank& bank,
                        const BlowupPolicy& blowup, double t0) {
    {
        auto bad = cfg.validate();
        if (!bad.empty()) throw std::invalid_argument("evolve: " + bad.front());
    }
    if (!theta0.all_finite()) throw std::invalid_argument("evolve: non-finite initial data");

    TrajectoryRecord rec;
    rec.schedule = probes;

    SpectralField theta = theta0;
    if (cfg.mode != EquationMode::linear_heat) theta.dealias();

    Stepper stepper(theta.grid, cfg.alpha, cfg.mode);

    ProbeContext ctx{&bank, &probes, &blowup, cfg.alpha, cfg.mode};
    ctx.monitor_s = blowup.monitor_s != 0.0
                        ? blowup.monitor_s
                        : (probes.sobolev_s.empty() ? 0.0 : probes.sobolev_s.front());

    ProbeRow first = make_probe(ctx, theta, t0, 0.0);
    auto h0_it = first.norms.sobolev.find(ctx.monitor_s);
    ctx.h0 = h0_it != first.norms.sobolev.end() ? h0_it->second : -1.0;
    rec.rows.push_back(first);

    if (cfg.record_steps)
        rec.steps.push_back({t0, l2_squared(theta),
                             cfg.mode == EquationMode::inviscid
                                 ? 0.0
                                 : dissipation_rate(theta, cfg.alpha),
                             0.0});
    if (cfg.checkpoint_every > 0.0) rec.snapshots.emplace_back(t0, theta);

    double t = t0;
    long kprobe = 1, kckpt = 1;
    SpectralField prev;

    auto next_probe = [&] { return t0 + kprobe * probes.probe_dt; };
    auto next_ckpt = [&] { return t0 + kckpt * cfg.checkpoint_every; };

    while (true) {
        if (probes.probe_dt > 0.0 && t >= next_probe() - kTimeTol &&
            next_probe() <= cfg.t_end + kTimeTol) {
            ProbeRow row = make_probe(ctx, theta, t, stepper.last_max_velocity());
            rec.rows.push_back(row);
            check_blowup(ctx, rec, theta, row);
            ++kprobe;
            continue;
        }
        if (cfg.checkpoint_every > 0.0 && t >= next_ckpt() - kTimeTol) {
            rec.snapshots.emplace_back(t, theta);
            ++kckpt;
            continue;
        }
        if (t >= cfg.t_end - kTimeTol) break;

        auto dt_of = [&](double max_u) {
            double dt = cfg.dt_policy.kind == DtPolicy::Kind::fixed
                            ? cfg.dt_policy.dt
                            : std::min(cfg.dt_policy.dt_max,
                                       Stepper::cfl_dt(theta.grid, max_u,
                                                       cfg.dt_policy.safety));
            if (cfg.dt_policy.kind == DtPolicy::Kind::cfl && cfg.dt_policy.dt_min > 0.0)
                dt = std::max(dt, cfg.dt_policy.dt_min);
            dt = std::min(dt, cfg.t_end - t);
            if (probes.probe_dt > 0.0) dt = std::min(dt, next_probe() - t);
            if (cfg.checkpoint_every > 0.0) dt = std::min(dt, next_ckpt() - t);
            return dt;
        };

        prev = theta;
        const double used = stepper.step_adaptive(theta, dt_of);
        t += used;

        if (!theta.all_finite()) {
            rec.integrator_failed = true;
            rec.t_fail = t;
            theta = prev;  // last good state
            t -= used;
            break;
        }
        if (cfg.record_steps)
            rec.steps.push_back({t, l2_squared(theta),
                                 cfg.mode == EquationMode::inviscid
                                     ? 0.0
                                     : dissipation_rate(theta, cfg.alpha),
                                 used});
    }

    if (rec.rows.empty() || rec.rows.back().t < t - kTimeTol) {
        ProbeRow row = make_probe(ctx, theta, t, stepper.last_max_velocity());
        rec.rows.push_back(row);
        check_blowup(ctx, rec, theta, row);
    }

    rec.final_state = std::move(theta);
    rec.t_final = t;
    return rec;
}

SeriesTable TrajectoryRecord::to_table() const {
    SeriesTable tb;
    tb.columns = {"t", "l2", "linf"};
    for (double s : schedule.sobolev_s) tb.columns.push_back(col_hs(s));
    for (double p : schedule.lp_p) tb.columns.push_back(col_lp(p));
    for (auto [s, p] : schedule.besov_sp) tb.columns.push_back(col_besov(s, p));
    int j_lo = 0, j_hi = -1;
    if (schedule.shells && !rows.empty()) {
        j_lo = rows.front().norms.shells.j_min;
        j_hi = rows.front().norms.shells.j_max();
        for (int j = j_lo; j <= j_hi; ++j) tb.columns.push_back(col_shell(j));
    }
    tb.columns.push_back("diss");
    tb.columns.push_back("maxu");

    for (const ProbeRow& r : rows) {
        std::vector<double> row;
        row.push_back(r.t);
        row.push_back(r.l2);
        row.push_back(r.linf);
        for (double s : schedule.sobolev_s) row.push_back(r.norms.sobolev.at(s));
        for (double p : schedule.lp_p) row.push_back(r.norms.lp.at(p));
        for (auto sp : schedule.besov_sp) row.push_back(r.norms.besov.at(sp));
        if (schedule.shells && j_hi >= j_lo)
            for (int j = j_lo; j <= j_hi; ++j) row.push_back(r.norms.shells.at(j));
        row.push_back(r.dissipation);
        row.push_back(r.max_u);
        tb.rows.push_back(std::move(row));
    }
    return tb;
}

TwinRecord twin_evolve(const SpectralField& theta1_0, const SpectralField& theta2_0,
                       const StepperConfig& cfg, const ProbeSchedule& probes,
                       const FilterBank& bank, const TwinDiagnostics& diag,
                       const BlowupPolicy& blowup) {
    if (!(theta1_0.grid == theta2_0.grid))
        throw std::invalid_argument("twin_evolve: twins must share one grid");
    if (!diag.cutoff_of_grad)
        throw std::invalid_argument("twin_evolve: cutoff_of_grad must be set");
    {
        auto bad = cfg.validate();
        if (!bad.empty()) throw std::invalid_argument("twin_evolve: " + bad.front());
    }

    TwinRecord rec;
    rec.first.schedule = probes;

    SpectralField a = theta1_0, b = theta2_0;
    if (cfg.mode != EquationMode::linear_heat) {
        a.dealias();
        b.dealias();
    }
    Stepper sa(a.grid, cfg.alpha, cfg.mode);
    Stepper sb(b.grid, cfg.alpha, cfg.mode);

    ProbeContext ctx{&bank, &probes, &blowup, cfg.alpha, cfg.mode};
    ctx.monitor_s = blowup.monitor_s != 0.0
                        ? blowup.monitor_s
                        : (probes.sobolev_s.empty() ? 0.0 : probes.sobolev_s.front());

    auto probe_twin = [&](double t, double max_u) {
        ProbeRow row = make_probe(ctx, a, t, max_u);
        if (rec.first.rows.empty()) {
            auto it = row.norms.sobolev.find(ctx.monitor_s);
            ctx.h0 = it != row.norms.sobolev.end() ? it->second : -1.0;
        }
        rec.first.rows.push_back(row);
        check_blowup(ctx, rec.first, a, row);

        TwinRow w;
        w.t = t;
        SpectralField diff = a - b;
        w.w_l2 = lp_norm(diff, 2.0);
        w.w_linf = physical_max_abs(diff);
        w.grad1_q = grad_lp_norm(a, diag.thm5_q);
        w.j5 = diag.cutoff_of_grad(w.grad1_q);
        if (w.w_l2 > 0.0) {
            w.w_p4 = lp_norm(diff, diag.thm4_p);
            SpectralField lo4 = bank.project_below(diff, diag.thm4_J, Cutoff::below);
            w.w_lo4 = lp_norm(lo4, diag.thm4_p);
            w.w_hi4 = lp_norm(diff - lo4, diag.thm4_p);
            w.w_p5 = lp_norm(diff, diag.thm5_p);
            SpectralField lo5 = bank.project_below(diff, w.j5);
            w.w_lo5 = lp_norm(lo5, diag.thm5_p);
            w.w_hi5 = lp_norm(diff - lo5, diag.thm5_p);
        }
        rec.wrows.push_back(w);
    };

    probe_twin(0.0, 0.0);
    if (cfg.record_steps)
        rec.first.steps.push_back({0.0, l2_squared(a),
                                   cfg.mode == EquationMode::inviscid
                                       ? 0.0
                                       : dissipation_rate(a, cfg.alpha),
                                   0.0});
    if (cfg.checkpoint_every > 0.0) rec.first.snapshots.emplace_back(0.0, a);

    double t = 0.0;
    long kprobe = 1, kckpt = 1;
    auto next_probe = [&] { return kprobe * probes.probe_dt; };
    auto next_ckpt = [&] { return kckpt * cfg.checkpoint_every; };

    while (true) {
        if (probes.probe_dt > 0.0 && t >= next_probe() - kTimeTol &&
            next_probe() <= cfg.t_end + kTimeTol) {
            probe_twin(t, sa.last_max_velocity());
            ++kprobe;
            continue;
        }
        if (cfg.checkpoint_every > 0.0 && t >= next_ckpt() - kTimeTol) {
            rec.first.snapshots.emplace_back(t, a);
            ++kckpt;
            continue;
        }
        if (t >= cfg.t_end - kTimeTol) break;

        auto dt_of = [&](double max_u) {
            double dt = cfg.dt_policy.kind == DtPolicy::Kind::fixed
                            ? cfg.dt_policy.dt
                            : std::min(cfg.dt_policy.dt_max,
                                       Stepper::cfl_dt(a.grid, max_u,
                                                       cfg.dt_policy.safety));
            if (cfg.dt_policy.kind == DtPolicy::Kind::cfl && cfg.dt_policy.dt_min > 0.0)
                dt = std::max(dt, cfg.dt_policy.dt_min);
            dt = std::min(dt, cfg.t_end - t);
            if (probes.probe_dt > 0.0) dt = std::min(dt, next_probe() - t);
            if (cfg.checkpoint_every > 0.0) dt = std::min(dt, next_ckpt() - t);
            return dt;
        };

        // the leading twin fixes the step; the second follows it exactly
        const double used = sa.step_adaptive(a, dt_of);
        sb.step(b, used);
        t += used;

        if (!a.all_finite() || !b.all_finite()) {
            rec.first.integrator_failed = true;
            rec.first.t_fail = t;
            rec.diverged = true;
            break;
        }
        if (cfg.record_steps)
            rec.first.steps.push_back({t, l2_squared(a),
                                       cfg.mode == EquationMode::inviscid
                                           ? 0.0
                                           : dissipation_rate(a, cfg.alpha),
                                       used});
    }

    if (rec.wrows.empty() || rec.wrows.back().t < t - kTimeTol)
        probe_twin(t, sa.last_max_velocity());

    rec.first.final_state = std::move(a);
    rec.first.t_final = t;
    rec.final_second = std::move(b);
    return rec;
}

SeriesTable TwinRecord::to_table() const {
    SeriesTable tb = first.to_table();
    const std::vector<std::string> wcols = {"w_l2",  "w_linf", "w_p4",    "w_lo4",
                                            "w_hi4", "w_p5",   "w_lo5",   "w_hi5",
                                            "grad1_q", "j5"};
    tb.columns.insert(tb.columns.end(), wcols.begin(), wcols.end());
    for (size_t r = 0; r < tb.rows.size() && r < wrows.size(); ++r) {
        const TwinRow& w = wrows[r];
        for (double v : {w.w_l2, w.w_linf, w.w_p4, w.w_lo4, w.w_hi4, w.w_p5, w.w_lo5,
                         w.w_hi5, w.grad1_q, w.j5})
            tb.rows[r].push_back(v);
    }
    return tb;
}

AuditReport per_mode_energy_audit(
    const std::vector<std::pair<double, SpectralField>>& snapshots, int j,
    double alpha, const FilterBank& bank, EquationMode mode) {
    if (snapshots.size() < 3)
        throw std::invalid_argument("per_mode_energy_audit: need at least 3 checkpoints");
    if (!bank.contains(j))
        throw std::invalid_argument("per_mode_energy_audit: shell out of range");

    const GridSpec& grid = snapshots.front().second.grid;
    const int n = grid.n;
    const size_t m = snapshots.size();

    std::vector<double> Ej(m), diss(m, 0.0), comm(m, 0.0);
    std::vector<double> u1, u2;
    AdvectionWorkspace ws;
    for (size_t k = 0; k < m; ++k) {
        const SpectralField& th = snapshots[k].second;
        SpectralField thj = bank.project_shell(th, j);
        Ej[k] = l2_squared(thj);
        if (mode != EquationMode::inviscid) diss[k] = 2.0 * dissipation_rate(thj, alpha);
        if (mode == EquationMode::linear_heat) continue;  // no transport, no commutator

        // commutator with the solver's dealiased products:
        //   C_j = P(u . grad theta_j) - Delta_j P(u . grad theta)
        VelocityField u = riesz_velocity(th);
        to_physical_pair(u.u1, u.u2, u1, u2);
        SpectralField full = advection_term(th, ws, nullptr);
        SpectralField shell_of_full = bank.project_shell(full, j);

        VelocityField gj = gradient(thj);
        std::vector<double> g1, g2;
        to_physical_pair(gj.u1, gj.u2, g1, g2);
        std::vector<Complex> prod(g1.size());
        for (size_t i = 0; i < prod.size(); ++i)
            prod[i] = Complex(u1[i] * g1[i] + u2[i] * g2[i], 0.0);
        fft2_forward(n, prod.data());
        SpectralField transport_j(grid);
        const double scale = 1.0 / grid.size();
        for (size_t i = 0; i < prod.size(); ++i) transport_j.coeff[i] = scale * prod[i];
        transport_j.dealias();

        double ip = 0.0;
        for (size_t i = 0; i < thj.coeff.size(); ++i) {
            const Complex c = transport_j.coeff[i] - shell_of_full.coeff[i];
            ip += c.real() * thj.coeff[i].real() + c.imag() * thj.coeff[i].imag();
        }
        comm[k] = 2.0 * grid.box_length * grid.box_length * ip;
    }

    AuditReport rep;
    rep.j = j;
    rep.lambda_min = std::numeric_limits<double>::infinity();
    for (size_t k = 0; k < m; ++k) {
        if (!(Ej[k] > 0.0)) continue;
        const double lam = 0.5 * diss[k] / (std::exp2(2.0 * alpha * j) * Ej[k]);
        rep.lambda_min = std::min(rep.lambda_min, lam);
        rep.lambda_max = std::max(rep.lambda_max, lam);
    }
    if (!std::isfinite(rep.lambda_min)) rep.lambda_min = 0.0;
    double scale = 0.0;
    for (size_t k = 1; k + 1 < m; ++k) {
        const double dtspan = snapshots[k + 1].first - snapshots[k - 1].first;
        const double dE = (Ej[k + 1] - Ej[k - 1]) / dtspan;
        const double r = dE + diss[k] - comm[k];
        rep.t.push_back(snapshots[k].first);
        rep.residual.push_back(r);
        rep.max_residual = std::max(rep.max_residual, std::abs(r));
        scale = std::max({scale, std::abs(dE), diss[k], std::abs(comm[k])});
    }
    rep.normalized_max = scale > 0.0 ? rep.max_residual / scale : 0.0;
    return rep;
}

}  // namespace sqg
