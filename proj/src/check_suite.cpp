#include <cmath>
#include <cstdio>
#include <numbers>

#include "sqg/calibration.hpp"
#include "sqg/checks.hpp"
#include "sqg/random_field.hpp"
#include "sqg/runner.hpp"

namespace sqg {

namespace {

struct Suite {
    int failures = 0;
    void report(const char* name, bool ok, double measured, double bound) {
        std::printf("[%s] %-46s measured %.3e  bound %.3e\n", ok ? "PASS" : "FAIL",
                    name, measured, bound);
        if (!ok) ++failures;
    }
};

}  // namespace

int run_check(uint64_t seed) {
    Suite suite;
    const GridSpec grid = make_grid(128);
    const FilterBank bank(grid);

    suite.report("partition of unity", bank.partition_defect() <= 1e-14,
                 bank.partition_defect(), 1e-14);

    {
        double worst = 0.0;
        for (int t = 0; t < 20; ++t) {
            SpectralField f = random_band_field(grid, 1.0, grid.xi_corner(), -0.5,
                                                seed, 100 + t, true);
            SpectralField sum(grid);
            for (int j = bank.j_min(); j <= bank.j_max(); ++j)
                sum += bank.project_shell(f, j);
            const double num = lp_norm(sum - f, 2.0);
            worst = std::max(worst, num / lp_norm(f, 2.0));
        }
        suite.report("shell reconstruction", worst <= 1e-10, worst, 1e-10);
    }

    {
        double worst = 0.0;
        SpectralField f = random_band_field(grid, 1.0, grid.xi_corner(), -0.5, seed, 7);
        for (int i = bank.j_min(); i <= bank.j_max(); ++i)
            for (int j = bank.j_min(); j <= bank.j_max(); ++j) {
                if (std::abs(i - j) < 2) continue;
                worst = std::max(
                    worst,
                    bank.project_shell(bank.project_shell(f, j), i).max_abs_coeff());
            }
        suite.report("almost orthogonality", worst == 0.0, worst, 0.0);
    }

    {
        SpectralField f = random_band_field(grid, 1.0, 30.0, -1.0, seed, 8);
        VelocityField u = riesz_velocity(f);
        double div = 0.0;
        for (int iy = 0; iy < grid.n; ++iy)
            for (int ix = 0; ix < grid.n; ++ix) {
                const Complex d =
                    Complex(0, grid.xi(grid.wavenumber(ix))) * u.u1.at_index(ix, iy) +
                    Complex(0, grid.xi(grid.wavenumber(iy))) * u.u2.at_index(ix, iy);
                div = std::max(div, std::abs(d));
            }
        suite.report("velocity divergence", div <= 1e-13, div, 1e-13);

        const double lhs = lp_norm(u.u1, 2.0) * lp_norm(u.u1, 2.0) +
                           lp_norm(u.u2, 2.0) * lp_norm(u.u2, 2.0);
        const double rhs = lp_norm(f, 2.0) * lp_norm(f, 2.0);
        suite.report("Riesz isometry", std::abs(lhs - rhs) <= 1e-12 * rhs,
                     std::abs(lhs - rhs) / rhs, 1e-12);

        SpectralField two = fractional_laplacian(fractional_laplacian(f, 0.3), 0.45);
        SpectralField one = fractional_laplacian(f, 0.75);
        suite.report("semigroup property",
                     lp_norm(two - one, 2.0) <= 1e-13 * lp_norm(one, 2.0),
                     lp_norm(two - one, 2.0) / lp_norm(one, 2.0), 1e-13);

        SpectralField back = from_physical(grid, to_physical(f));
        suite.report("round trip", lp_norm(back - f, 2.0) <= 1e-12 * lp_norm(f, 2.0),
                     lp_norm(back - f, 2.0) / lp_norm(f, 2.0), 1e-12);
    }

    {
        SpectralField f = random_band_field(grid, 1.0, 20.0, -1.0, seed, 9);
        f.dealias();
        SpectralField adv = advection_term(f);
        double ip = 0.0;
        for (size_t i = 0; i < adv.coeff.size(); ++i)
            ip += adv.coeff[i].real() * f.coeff[i].real() +
                  adv.coeff[i].imag() * f.coeff[i].imag();
        ip *= grid.box_length * grid.box_length;
        const double bound = 1e-10 * lp_norm(f, 2.0) * grad_lp_norm(f, 2.0);
        suite.report("transport skew-symmetry", std::abs(ip) <= bound, std::abs(ip),
                     bound);
    }

    {
        bool ok = true;
        double worst_lo = 10, worst_hi = 0;
        for (int j = 0; j <= bank.j_max() - 1; ++j) {
            if (bank.shell_mode_count(j) == 0) continue;
            BernsteinReport rep = bernstein_check(bank, j, 2.0, 2.0, 1, 10, seed);
            ok = ok && rep.within_band;
            worst_lo = std::min(worst_lo, rep.ratio_min);
            worst_hi = std::max(worst_hi, rep.ratio_max);
        }
        suite.report("Bernstein gradient band", ok, worst_lo, worst_hi);
    }

    {
        SpectralField f = random_band_field(grid, 1.0, 40.0, -1.0, seed, 10, true);
        InterpolationReport rep = interpolation_check(f, 2.0, 6.0, 0.5);
        suite.report("Lp log-convexity", rep.holds, rep.lhs, rep.rhs);
    }

    {
        CommutatorReport rep = commutator_check(bank, 1.2, 0.5, 2, 4, 5, seed);
        suite.report("commutator decay fit", rep.within_tolerance,
                     rep.fitted_decay, rep.predicted_decay);
    }

    {
        const double s = 1.6;
        SpectralField f = random_band_field(grid, 1.0, 40.0, -1.2, seed, 11, true);
        const double direct = sobolev_norm(f, s);
        const double shellsum = shell_l2_sobolev(shell_spectrum(bank, f), s);
        const double ceq = measure_equivalence(bank, s);
        const bool in_band = shellsum <= ceq * direct && direct <= ceq * shellsum;
        const double bsv = besov_norm(bank, f, s, 2.0);
        suite.report("norm equivalence band", in_band && bsv <= shellsum,
                     shellsum / direct, ceq);
    }

    {
        SpectralField f = random_band_field(grid, 1.0, 40.0, -1.0, seed, 12);
        const RatioValue a = sparseness_ratio(bank, f, 3, 1.2);
        SpectralField g = f;
        g *= 17.5;
        const RatioValue b = sparseness_ratio(bank, g, 3, 1.2);
        suite.report("sparseness scale invariance",
                     a.defined && b.defined &&
                         std::abs(a.value - b.value) <= 1e-12 * a.value,
                     std::abs(a.value - b.value), 1e-12 * a.value);
    }

    {
        // closed-form homogeneity: h -> lambda^{s-2+2a} h sends Tmin -> lambda^{-2a} Tmin
        const double s = 1.6, alpha = 0.25, lam = 3.7, h = 2.3;
        const double lhs = ju_tmin(h * std::pow(lam, s - 2 + 2 * alpha), s, alpha, 1.0);
        const double rhs = std::pow(lam, -2 * alpha) * ju_tmin(h, s, alpha, 1.0);
        suite.report("Tmin scaling identity", std::abs(lhs - rhs) <= 1e-12 * rhs,
                     std::abs(lhs - rhs) / rhs, 1e-12);
        const double j1 = thm5_cutoff(2.0, 2.0, alpha, 1.0);
        const double j2 = thm5_cutoff(4.0, 2.0, alpha, 1.0);
        const double j3 = thm5_cutoff(2.0, 2.0, alpha, 2.0);
        suite.report("thm5 cutoff monotone", j2 > j1 && j3 > j1, j2 - j1, 0.0);
    }

    std::printf("%d failure(s)\n", suite.failures);
    return suite.failures == 0 ? 0 : 1;
}

}  // namespace sqg
