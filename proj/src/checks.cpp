#include "sqg/checks.hpp"

#include <cmath>
#include <stdexcept>

#include "sqg/fft.hpp"
#include "sqg/operators.hpp"
#include "sqg/random_field.hpp"

namespace sqg {

namespace {

double derivative_lp(const SpectralField& f, int order, double p) {
    if (order == 1) return grad_lp_norm(f, p);
    return lp_norm(fractional_laplacian(f, order / 2.0), p);
}

}  // namespace

BernsteinReport bernstein_check(const FilterBank& bank, int j, double p, double q,
                                int derivative_order, int trials, uint64_t seed) {
    if (!bank.contains(j) || bank.shell_mode_count(j) == 0)
        throw std::invalid_argument("bernstein_check: shell empty or out of range");
    if (!(p >= 1.0) || !(q >= p)) throw std::invalid_argument("bernstein_check: need 1 <= p <= q");
    if (derivative_order < 1) throw std::invalid_argument("bernstein_check: order >= 1");

    BernsteinReport rep;
    rep.j = j;
    rep.p = p;
    rep.q = q;
    rep.derivative_order = derivative_order;
    rep.ratio_min = rep.norm_ratio_min = std::numeric_limits<double>::infinity();

    const GridSpec& g = bank.grid();
    int done = 0;
    for (int t = 0; t < trials; ++t) {
        SpectralField raw = random_band_field(g, std::exp2(j - 1), std::exp2(j + 1),
                                              0.0, seed, static_cast<uint64_t>(t) + 1,
                                              /*rayleigh=*/true);
        SpectralField fj = bank.project_shell(raw, j);
        const double base = lp_norm(fj, p);
        if (base == 0.0) continue;  // degenerate draw, skip
        const double dn = derivative_lp(fj, derivative_order, p);
        const double ratio = dn / (std::exp2(static_cast<double>(j) * derivative_order) * base);
        rep.ratio_min = std::min(rep.ratio_min, ratio);
        rep.ratio_max = std::max(rep.ratio_max, ratio);

        const double nq = lp_norm(fj, q);
        const double bern = std::exp2(2.0 * j * (1.0 / p - 1.0 / q));
        const double nr = nq / (bern * base);
        rep.norm_ratio_min = std::min(rep.norm_ratio_min, nr);
        rep.norm_ratio_max = std::max(rep.norm_ratio_max, nr);
        ++done;
    }
    rep.trials = done;
    const double band = std::exp2(static_cast<double>(derivative_order));
    rep.within_band = done > 0 && rep.ratio_min >= 1.0 / band && rep.ratio_max <= band;
    return rep;
}

double commutator_l2(const FilterBank& bank, const SpectralField& f,
                     const SpectralField& g, int j) {
    const GridSpec& grid = bank.grid();
    const int n = grid.n;
    const auto fis = to_physical(f);
    const auto gis = to_physical(g);
    const auto gj = to_physical(bank.project_shell(g, j));

    // Delta_j (f g)
    std::vector<Complex> fg(fis.size());
    for (size_t i = 0; i < fis.size(); ++i) fg[i] = Complex(fis[i] * gis[i], 0.0);
    fft2_forward(n, fg.data());
    const auto& phi = bank.phi(j);

    // f Delta_j g
    std::vector<Complex> fdg(fis.size());
    for (size_t i = 0; i < fis.size(); ++i) fdg[i] = Complex(fis[i] * gj[i], 0.0);
    fft2_forward(n, fdg.data());

    const double scale = 1.0 / grid.size();
    double acc = 0.0;
    for (size_t i = 0; i < fg.size(); ++i)
        acc += std::norm(scale * (fdg[i] - phi[i] * fg[i]));
    return grid.box_length * std::sqrt(acc);
}

CommutatorReport commutator_check(const FilterBank& bank, double s, double t,
                                  int j_lo, int j_hi, int trials, uint64_t seed) {
    if (!(s >= 1.0 && s < 2.0 && t < 1.0 && s + t > 1.0))
        throw std::invalid_argument(
            "commutator_check: need 1 <= s < 2, t < 1, s + t > 1");
    if (j_lo > j_hi) throw std::invalid_argument("commutator_check: empty j range");

    const GridSpec& grid = bank.grid();
    // keep f*g alias-free: both spectra inside |xi| < xi_base*n/4.  The top
    // shell may lose its outer rim to the cap; requiring 1.5 * 2^{j_hi} of
    // headroom keeps the loss marginal for the fit.
    const double xi_cap = grid.xi_base() * (grid.n / 4 - 1);
    if (1.5 * std::exp2(j_hi) > xi_cap)
        throw std::invalid_argument("commutator_check: j_hi too high for alias-free products");

    CommutatorReport rep;
    rep.s = s;
    rep.t = t;
    rep.j_lo = j_lo;
    rep.j_hi = j_hi;
    rep.trials = trials;
    rep.predicted_decay = s + t - 1.0;
    const int nj = j_hi - j_lo + 1;
    rep.mean_comm.assign(nj, 0.0);

    for (int tr = 0; tr < trials; ++tr) {
        // co-centered wave packets at a random location: the estimate's
        // Bernstein factors are saturated where the shells of f and g meet,
        // so the measured decay tracks the bound's envelope
        const uint64_t st = static_cast<uint64_t>(tr) + 1;
        SpectralField f = random_packet_field(grid, grid.xi_min(), xi_cap, -s, seed, st);
        SpectralField g = random_packet_field(grid, grid.xi_min(), xi_cap, -t, seed, st);
        const double fs = sobolev_norm(f, s);
        const double gt = sobolev_norm(g, t);
        for (int j = j_lo; j <= j_hi; ++j)
            rep.mean_comm[j - j_lo] += commutator_l2(bank, f, g, j) / (fs * gt) / trials;
    }

    rep.d_j.assign(nj, 0.0);
    double sx = 0, sy = 0, sxx = 0, sxy = 0, dl2 = 0;
    for (int j = j_lo; j <= j_hi; ++j) {
        const double m = rep.mean_comm[j - j_lo];
        rep.d_j[j - j_lo] = m * std::exp2((s + t - 1.0) * j);
        dl2 += rep.d_j[j - j_lo] * rep.d_j[j - j_lo];
        const double y = std::log2(m);
        sx += j;
        sy += y;
        sxx += static_cast<double>(j) * j;
        sxy += j * y;
    }
    rep.d_l2 = std::sqrt(dl2);
    const double slope = (nj * sxy - sx * sy) / (nj * sxx - sx * sx);
    rep.fitted_decay = -slope;
    rep.within_tolerance = std::abs(rep.fitted_decay - rep.predicted_decay) <= 0.3;
    return rep;
}

InterpolationReport interpolation_check(const SpectralField& f, double p0, double p1,
                                        double theta) {
    if (!(p0 > 0.0 && p0 < p1 && std::isfinite(p1)))
        throw std::invalid_argument("interpolation_check: need 0 < p0 < p1 < inf");
    if (!(theta >= 0.0 && theta <= 1.0))
        throw std::invalid_argument("interpolation_check: theta in [0,1]");
    // quadrature valid for any exponent > 0 (p0 may be below 1 here)
    const auto vals = to_physical(f);
    const double cell = f.grid.dx() * f.grid.dx();
    auto quad = [&](double p) {
        double acc = 0.0;
        for (double v : vals) acc += std::pow(std::abs(v), p);
        return std::pow(cell * acc, 1.0 / p);
    };
    InterpolationReport r;
    r.p0 = p0;
    r.p1 = p1;
    r.theta = theta;
    r.p_theta = 1.0 / ((1.0 - theta) / p0 + theta / p1);
    r.lhs = quad(r.p_theta);
    r.rhs = std::pow(quad(p0), 1.0 - theta) * std::pow(quad(p1), theta);
    r.slack = r.rhs - r.lhs;
    r.holds = r.lhs <= r.rhs * (1.0 + 1e-12);
    return r;
}

}  // namespace sqg
