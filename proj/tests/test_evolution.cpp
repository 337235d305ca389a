#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cmath>
#include <cstring>

#include "doctest.h"
#include "sqg/criteria.hpp"
#include "sqg/evolution.hpp"
#include "sqg/random_field.hpp"

using namespace sqg;

namespace {

StepperConfig basic_cfg(double alpha, EquationMode mode, double dt, double t_end) {
    StepperConfig cfg;
    cfg.alpha = alpha;
    cfg.mode = mode;
    cfg.dt_policy.kind = DtPolicy::Kind::fixed;
    cfg.dt_policy.dt = dt;
    cfg.t_end = t_end;
    return cfg;
}

ProbeSchedule probes_hs(double probe_dt, std::vector<double> s) {
    ProbeSchedule p;
    p.probe_dt = probe_dt;
    p.sobolev_s = std::move(s);
    p.lp_p = {4.0};
    return p;
}

}  // namespace

TEST_CASE("linear heat mode decays every mode by exp(-t |xi|^{2a})") {
    const GridSpec g = make_grid(64);
    const double alpha = 0.25;
    SpectralField f0 = random_band_field(g, 1.0, 25.0, -0.8, 21, 0, true);
    Stepper st(g, alpha, EquationMode::linear_heat);
    SpectralField f = f0;
    const double dt = 0.01;
    const int steps = 100;
    for (int k = 0; k < steps; ++k) st.step(f, dt);
    double worst = 0.0;
    for (int iy = 0; iy < g.n; ++iy)
        for (int ix = 0; ix < g.n; ++ix) {
            const Complex c0 = f0.at_index(ix, iy);
            if (std::abs(c0) < 1e-12) continue;
            const double x1 = g.xi(g.wavenumber(ix)), x2 = g.xi(g.wavenumber(iy));
            const double decay =
                std::exp(-steps * dt * std::pow(x1 * x1 + x2 * x2, alpha));
            const Complex want = decay * c0;
            worst = std::max(worst, std::abs(f.at_index(ix, iy) - want) / std::abs(want));
        }
    CHECK(worst < 1e-11);
}

TEST_CASE("zero field stays zero under every mode") {
    const GridSpec g = make_grid(32);
    for (EquationMode m :
         {EquationMode::full, EquationMode::linear_heat, EquationMode::inviscid}) {
        Stepper st(g, 0.3, m);
        SpectralField z(g);
        st.step(z, 0.01);
        CHECK(z.max_abs_coeff() == 0.0);
    }
}

TEST_CASE("evolve bookkeeping") {
    const GridSpec g = make_grid(32);
    const FilterBank bank(g);
    SpectralField f0 = random_band_field(g, 1.0, 8.0, -1.0, 4, 0, true);

    SUBCASE("t_end = 0 records a single probe") {
        TrajectoryRecord rec =
            evolve(f0, basic_cfg(0.25, EquationMode::linear_heat, 0.01, 0.0),
                   probes_hs(0.1, {1.6}), bank);
        CHECK(rec.rows.size() == 1);
        CHECK(rec.t_final == 0.0);
    }

    SUBCASE("probe times are hit exactly and steps clamp to them") {
        TrajectoryRecord rec =
            evolve(f0, basic_cfg(0.25, EquationMode::full, 0.003, 0.5),
                   probes_hs(0.1, {1.6}), bank);
        REQUIRE(rec.rows.size() == 6);
        for (size_t k = 0; k < rec.rows.size(); ++k)
            CHECK(rec.rows[k].t == doctest::Approx(0.1 * k).epsilon(1e-12));
    }

    SUBCASE("invalid configs are rejected with messages") {
        StepperConfig cfg = basic_cfg(0.25, EquationMode::full, -1.0, 1.0);
        CHECK_THROWS_AS(evolve(f0, cfg, probes_hs(0.1, {1.6}), bank),
                        std::invalid_argument);
        StepperConfig cfg2 = basic_cfg(1.5, EquationMode::full, 0.01, 1.0);
        CHECK(!cfg2.validate().empty());
    }

    SUBCASE("mean mode is conserved exactly") {
        SpectralField f = f0;
        f.coeff[0] = Complex(0.625, 0.0);
        TrajectoryRecord rec = evolve(f, basic_cfg(0.25, EquationMode::full, 0.005, 0.2),
                                      probes_hs(0.1, {1.6}), bank);
        CHECK(rec.final_state.mean_mode() == Complex(0.625, 0.0));
    }
}

TEST_CASE("linear-heat trajectory matches the closed-form Sobolev decay") {
    const GridSpec g = make_grid(64);
    const FilterBank bank(g);
    SpectralField f0 = random_band_field(g, 1.0, 25.0, -1.0, 77, 0, true);
    const double alpha = 0.375, s = 1.4;
    TrajectoryRecord rec = evolve(f0, basic_cfg(alpha, EquationMode::linear_heat, 0.005, 1.0),
                                  probes_hs(0.25, {s}), bank);
    for (const ProbeRow& row : rec.rows) {
        double acc = 0.0;
        for (int iy = 0; iy < g.n; ++iy)
            for (int ix = 0; ix < g.n; ++ix) {
                const double x1 = g.xi(g.wavenumber(ix)), x2 = g.xi(g.wavenumber(iy));
                const double r2 = x1 * x1 + x2 * x2;
                if (r2 == 0.0) continue;
                acc += std::pow(r2, s) *
                       std::exp(-2.0 * row.t * std::pow(r2, alpha)) *
                       std::norm(f0.at_index(ix, iy));
            }
        const double want = g.box_length * std::sqrt(acc);
        CHECK(row.norms.sobolev.at(s) == doctest::Approx(want).epsilon(1e-10));
    }
}

TEST_CASE("determinism: identical runs are bit-identical") {
    const GridSpec g = make_grid(64);
    const FilterBank bank(g);
    SpectralField f0 = random_band_field(g, 1.0, 20.0, -1.0, 5, 0, true);
    f0 *= 0.2 / sobolev_norm(f0, 1.6);
    const StepperConfig cfg = basic_cfg(0.25, EquationMode::full, 0.002, 0.3);
    TrajectoryRecord a = evolve(f0, cfg, probes_hs(0.1, {1.6}), bank);
    TrajectoryRecord b = evolve(f0, cfg, probes_hs(0.1, {1.6}), bank);
    CHECK(std::memcmp(a.final_state.coeff.data(), b.final_state.coeff.data(),
                      a.final_state.coeff.size() * sizeof(Complex)) == 0);
    REQUIRE(a.rows.size() == b.rows.size());
    for (size_t k = 0; k < a.rows.size(); ++k)
        CHECK(a.rows[k].norms.sobolev.at(1.6) == b.rows[k].norms.sobolev.at(1.6));
}

TEST_CASE("CFL policy bounds every step") {
    const GridSpec g = make_grid(64);
    const FilterBank bank(g);
    SpectralField f0 = random_band_field(g, 1.0, 10.0, -1.0, 6, 0, true);
    f0 *= 1.0 / physical_max_abs(f0);
    StepperConfig cfg = basic_cfg(0.25, EquationMode::full, 0.0, 0.2);
    cfg.dt_policy.kind = DtPolicy::Kind::cfl;
    cfg.dt_policy.safety = 0.4;
    cfg.dt_policy.dt_max = 0.05;
    TrajectoryRecord rec = evolve(f0, cfg, probes_hs(0.1, {1.6}), bank);
    CHECK(rec.steps.size() > 2);
    for (size_t k = 1; k < rec.steps.size(); ++k) {
        CHECK(rec.steps[k].dt <= 0.05 + 1e-15);
        CHECK(rec.steps[k].dt > 0.0);
    }
}

TEST_CASE("inviscid advection conserves the L2 norm") {
    const GridSpec g = make_grid(64);
    const FilterBank bank(g);
    SpectralField f0 = random_band_field(g, 1.0, 8.0, -1.0, 9, 0, true);
    f0 *= 0.3 / physical_max_abs(f0);
    TrajectoryRecord rec = evolve(f0, basic_cfg(0.25, EquationMode::inviscid, 0.002, 0.5),
                                  probes_hs(0.25, {1.6}), bank);
    const double e0 = rec.rows.front().l2;
    for (const ProbeRow& row : rec.rows)
        CHECK(std::abs(row.l2 - e0) <= 1e-7 * e0);
}

TEST_CASE("energy balance with dissipation (trapezoid on recorded series)") {
    const GridSpec g = make_grid(64);
    const FilterBank bank(g);
    SpectralField f0 = random_band_field(g, 1.0, 6.0, -1.0, 10, 0, true);
    f0 *= 0.2 / physical_max_abs(f0);
    TrajectoryRecord rec = evolve(f0, basic_cfg(0.5, EquationMode::full, 5e-4, 0.5),
                                  probes_hs(0.25, {1.6}), bank);
    const auto& st = rec.steps;
    double integral = 0.0;
    for (size_t k = 1; k < st.size(); ++k)
        integral += 0.5 * (st[k].dissipation + st[k - 1].dissipation) *
                    (st[k].t - st[k - 1].t);
    const double lhs = st.back().l2sq + 2.0 * integral;
    CHECK(lhs == doctest::Approx(st.front().l2sq).epsilon(1e-6));
}

TEST_CASE("integrator failure is flagged and the last good state kept") {
    const GridSpec g = make_grid(32);
    const FilterBank bank(g);
    SpectralField f0 = random_band_field(g, 1.0, 8.0, -0.5, 11, 0, true);
    f0 *= 50.0 / physical_max_abs(f0);  // dt far beyond the advective limit
    TrajectoryRecord rec = evolve(f0, basic_cfg(0.25, EquationMode::inviscid, 0.5, 10.0),
                                  probes_hs(1.0, {1.6}), bank);
    CHECK(rec.integrator_failed);
    CHECK(rec.final_state.all_finite());
    CHECK(rec.t_final < 10.0);
}

TEST_CASE("blow-up candidate flag") {
    const GridSpec g = make_grid(64);
    const FilterBank bank(g);

    SUBCASE("tail-energy trigger") {
        SpectralField f0 = random_band_field(g, 1.0, g.dealias_xi(), 0.5, 12, 0, true);
        BlowupPolicy bp;
        bp.tail_fraction = 1e-9;
        bp.tail_band = 0.2;
        TrajectoryRecord rec =
            evolve(f0, basic_cfg(0.25, EquationMode::linear_heat, 0.01, 0.1),
                   probes_hs(0.05, {1.6}), bank, bp);
        CHECK(rec.blowup_flag);
        CHECK(rec.flag_reason.find("tail") != std::string::npos);
    }

    SUBCASE("decaying linear run never flags") {
        SpectralField f0 = random_band_field(g, 1.0, 8.0, -1.0, 13, 0, true);
        TrajectoryRecord rec =
            evolve(f0, basic_cfg(0.25, EquationMode::linear_heat, 0.01, 0.3),
                   probes_hs(0.1, {1.6}), bank);
        CHECK_FALSE(rec.blowup_flag);
    }
}

TEST_CASE("twin runs") {
    const GridSpec g = make_grid(64);
    const FilterBank bank(g);
    SpectralField base = random_band_field(g, 1.0, 8.0, -1.0, 14, 0, true);
    base *= 0.3 / physical_max_abs(base);

    TwinDiagnostics diag;
    diag.thm4_J = 3;
    diag.thm4_p = 4.0;  // q = 2
    diag.thm5_p = 4.0;
    diag.thm5_q = 2.0;
    diag.cutoff_of_grad = [](double gq) { return thm5_cutoff(gq, 2.0, 0.25, 1.0); };

    SUBCASE("identical twins: w is exactly zero at every probe") {
        TwinRecord rec = twin_evolve(base, base, basic_cfg(0.25, EquationMode::full, 0.002, 0.2),
                                     probes_hs(0.05, {1.6}), bank, diag);
        for (const TwinRow& w : rec.wrows) {
            CHECK(w.w_l2 == 0.0);
            CHECK(w.w_linf == 0.0);
        }
    }

    SUBCASE("perturbation above the fixed cutoff starts with zero low part") {
        SpectralField pert = random_band_field(g, 16.0, 20.0, 0.0, 15);  // shell 4
        pert *= 1e-6 / physical_max_abs(pert);
        SpectralField b2 = base + pert;
        TwinRecord rec = twin_evolve(base, b2, basic_cfg(0.25, EquationMode::full, 0.002, 0.1),
                                     probes_hs(0.05, {1.6}), bank, diag);
        CHECK(rec.wrows.front().w_lo4 == 0.0);
        CHECK(rec.wrows.front().w_hi4 > 0.0);
    }

    SUBCASE("error growth respects the recorded-gradient bound a posteriori") {
        TwinDiagnostics dinf = diag;
        dinf.thm5_q = std::numeric_limits<double>::infinity();
        dinf.cutoff_of_grad = [](double gq) {
            return thm5_cutoff(gq, std::numeric_limits<double>::infinity(), 0.25, 1.0);
        };
        SpectralField pert = random_band_field(g, 8.0, 16.0, 0.0, 16);
        pert *= 1e-8 / physical_max_abs(pert);
        SpectralField b2 = base + pert;
        TwinRecord rec = twin_evolve(base, b2, basic_cfg(0.25, EquationMode::full, 0.002, 0.5),
                                     probes_hs(0.05, {1.6}), bank, dinf);
        double gmax = 0.0;
        for (const TwinRow& w : rec.wrows) gmax = std::max(gmax, w.grad1_q);
        const double w0 = rec.wrows.front().w_l2;
        for (const TwinRow& w : rec.wrows)
            CHECK(w.w_l2 <= w0 * std::exp(1.05 * gmax * w.t) + 1e-14);
    }

    SUBCASE("grid mismatch and missing cutoff rejected") {
        SpectralField other(make_grid(32));
        CHECK_THROWS_AS(twin_evolve(base, other, basic_cfg(0.25, EquationMode::full, 0.01, 0.1),
                                    probes_hs(0.05, {1.6}), bank, diag),
                        std::invalid_argument);
        TwinDiagnostics nocut = diag;
        nocut.cutoff_of_grad = nullptr;
        CHECK_THROWS_AS(twin_evolve(base, base, basic_cfg(0.25, EquationMode::full, 0.01, 0.1),
                                    probes_hs(0.05, {1.6}), bank, nocut),
                        std::invalid_argument);
    }
}

TEST_CASE("per-mode energy audit") {
    const GridSpec g = make_grid(64);
    const FilterBank bank(g);
    SpectralField f0 = random_band_field(g, 1.0, 10.0, -1.0, 17, 0, true);
    f0 *= 0.3 / physical_max_abs(f0);

    SUBCASE("fewer than 3 checkpoints rejected") {
        std::vector<std::pair<double, SpectralField>> two = {{0.0, f0}, {0.1, f0}};
        CHECK_THROWS_AS(per_mode_energy_audit(two, 2, 0.25, bank), std::invalid_argument);
    }

    SUBCASE("zero field gives zero residual") {
        SpectralField z(g);
        std::vector<std::pair<double, SpectralField>> snaps = {
            {0.0, z}, {0.1, z}, {0.2, z}};
        AuditReport rep = per_mode_energy_audit(snaps, 2, 0.25, bank);
        CHECK(rep.max_residual == 0.0);
    }

    SUBCASE("linear mode: residual is pure centered-difference error") {
        StepperConfig cfg = basic_cfg(0.25, EquationMode::linear_heat, 0.002, 0.2);
        cfg.checkpoint_every = 0.02;
        TrajectoryRecord rec = evolve(f0, cfg, probes_hs(0.2, {1.6}), bank);
        REQUIRE(rec.snapshots.size() >= 5);
        // without advection the commutator term vanishes and the audit reduces
        // to d/dt E_j + 2 D_j with O(spacing^2) differencing error
        AuditReport rep =
            per_mode_energy_audit(rec.snapshots, 2, 0.25, bank, EquationMode::linear_heat);
        CHECK(rep.normalized_max < 2e-3);
        // measured per-shell dissipation constants stay in the dyadic band
        CHECK(rep.lambda_min >= std::exp2(-2.0 * 0.25 * 1.0));
        CHECK(rep.lambda_max <= std::exp2(2.0 * 0.25 * 1.0));
    }

    SUBCASE("nonlinear run: residual refines at second order in the spacing") {
        auto run_audit = [&](double dt, double ckpt) {
            StepperConfig cfg = basic_cfg(0.25, EquationMode::full, dt, 0.24);
            cfg.checkpoint_every = ckpt;
            TrajectoryRecord rec = evolve(f0, cfg, probes_hs(0.24, {1.6}), bank);
            return per_mode_energy_audit(rec.snapshots, 3, 0.25, bank);
        };
        AuditReport coarse = run_audit(0.002, 0.012);
        AuditReport fine = run_audit(0.001, 0.006);
        CHECK(coarse.normalized_max < 1e-3);
        CHECK(coarse.max_residual / fine.max_residual > 3.0);
    }
}

TEST_CASE("scaling symmetry of the discrete dynamics") {
    const GridSpec g = make_grid(64);
    const FilterBank bank(g);
    const double alpha = 0.25, s = 1.6, t_end = 0.25, dt = 0.002;
    SpectralField f0 = random_band_field(g, 1.0, 8.0, -1.0, 18, 0, true);
    f0 *= 0.3 / physical_max_abs(f0);

    // route A: evolve, then rescale
    TrajectoryRecord ra = evolve(f0, basic_cfg(alpha, EquationMode::full, dt, t_end),
                                 probes_hs(t_end, {s}), bank);
    SpectralField a = rescale_solution(ra.final_state, 2.0, alpha);

    // route B: rescale, then evolve the compressed time with the compressed step
    SpectralField f0b = rescale_solution(f0, 2.0, alpha);
    const double lam2a = std::pow(2.0, 2.0 * alpha);
    FilterBank bank2(f0b.grid);
    TrajectoryRecord rb =
        evolve(f0b, basic_cfg(alpha, EquationMode::full, dt / lam2a, t_end / lam2a),
               probes_hs(t_end / lam2a, {s}), bank2);
    const SpectralField& b = rb.final_state;

    CHECK(sobolev_norm(a - b, s) <= 1e-10 * sobolev_norm(b, s));
}
