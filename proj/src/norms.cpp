#include "sqg/norms.hpp"

#include <cmath>
#include <stdexcept>

#include "sqg/operators.hpp"

namespace sqg {

namespace {

double quadrature_lp(const SpectralField& f, double p) {
    const auto vals = to_physical(f);
    const double cell = f.grid.dx() * f.grid.dx();
    double acc = 0.0;
    for (double v : vals) acc += std::pow(std::abs(v), p);
    return std::pow(cell * acc, 1.0 / p);
}

double parseval_l2(const SpectralField& f) {
    double acc = 0.0;
    for (const Complex& c : f.coeff) acc += std::norm(c);
    return f.grid.box_length * std::sqrt(acc);
}

RatioValue make_ratio(double num, double den) {
    RatioValue r;
    r.numerator = num;
    r.denominator = den;
    if (num == 0.0 && den == 0.0) return r;  // undefined
    r.defined = true;
    r.value = (den == 0.0) ? std::numeric_limits<double>::infinity() : num / den;
    return r;
}

}  // namespace

double lp_norm(const SpectralField& f, double p) {
    if (!(p >= 1.0)) throw std::invalid_argument("lp_norm: p must be >= 1");
    if (!f.all_finite()) throw std::invalid_argument("lp_norm: non-finite input");
    if (std::isinf(p)) return physical_max_abs(f);
    if (p == 2.0) return parseval_l2(f);
    return quadrature_lp(f, p);
}

double sobolev_norm(const SpectralField& f, double s) {
    if (!f.all_finite()) throw std::invalid_argument("sobolev_norm: non-finite input");
    const GridSpec& g = f.grid;
    const int n = g.n;
    double acc = 0.0;
    for (int iy = 0; iy < n; ++iy) {
        const double x2 = g.xi(g.wavenumber(iy));
        for (int ix = 0; ix < n; ++ix) {
            const double x1 = g.xi(g.wavenumber(ix));
            const double r2 = x1 * x1 + x2 * x2;
            const double a2 = std::norm(f.at_index(ix, iy));
            if (r2 == 0.0) {
                if (s == 0.0) acc += a2;
                continue;
            }
            acc += std::pow(r2, s) * a2;
        }
    }
    return g.box_length * std::sqrt(acc);
}

double grad_lp_norm(const SpectralField& f, double p) {
    if (!(p >= 1.0)) throw std::invalid_argument("grad_lp_norm: p must be >= 1");
    const GridSpec& g = f.grid;
    const int n = g.n;
    if (p == 2.0) {
        // Parseval, with the same Nyquist-row convention as gradient()
        double acc = 0.0;
        for (int iy = 0; iy < n; ++iy) {
            const int ky = g.wavenumber(iy);
            if (ky == -n / 2) continue;
            const double x2 = g.xi(ky);
            for (int ix = 0; ix < n; ++ix) {
                const int kx = g.wavenumber(ix);
                if (kx == -n / 2) continue;
                const double x1 = g.xi(kx);
                acc += (x1 * x1 + x2 * x2) * std::norm(f.at_index(ix, iy));
            }
        }
        return g.box_length * std::sqrt(acc);
    }
    VelocityField d = gradient(f);
    std::vector<double> g1, g2;
    to_physical_pair(d.u1, d.u2, g1, g2);
    if (std::isinf(p)) {
        double m = 0.0;
        for (size_t i = 0; i < g1.size(); ++i) m = std::max(m, std::hypot(g1[i], g2[i]));
        return m;
    }
    const double cell = g.dx() * g.dx();
    double acc = 0.0;
    for (size_t i = 0; i < g1.size(); ++i) acc += std::pow(std::hypot(g1[i], g2[i]), p);
    return std::pow(cell * acc, 1.0 / p);
}

double besov_norm(const FilterBank& bank, const SpectralField& f, double s, double p) {
    if (!(p >= 1.0)) throw std::invalid_argument("besov_norm: p must be >= 1");
    double sup = 0.0;
    for (int j = bank.j_min(); j <= bank.j_max(); ++j) {
        if (bank.shell_mode_count(j) == 0) continue;
        const double ej = lp_norm(bank.project_shell(f, j), p);
        sup = std::max(sup, std::exp2(j * s) * ej);
    }
    return sup;
}

ShellSpectrum shell_spectrum(const FilterBank& bank, const SpectralField& f, double p) {
    ShellSpectrum out;
    out.j_min = bank.j_min();
    out.p = p;
    out.e.resize(bank.j_max() - bank.j_min() + 1, 0.0);
    if (p == 2.0) {
        // Parseval with the squared shell multipliers; no transforms needed
        const double L = f.grid.box_length;
        for (int j = bank.j_min(); j <= bank.j_max(); ++j) {
            const auto& phi = bank.phi(j);
            double acc = 0.0;
            for (size_t i = 0; i < phi.size(); ++i)
                acc += phi[i] * phi[i] * std::norm(f.coeff[i]);
            out.e[j - out.j_min] = L * std::sqrt(acc);
        }
        return out;
    }
    for (int j = bank.j_min(); j <= bank.j_max(); ++j)
        out.e[j - out.j_min] = lp_norm(bank.project_shell(f, j), p);
    return out;
}

double shell_l2_sobolev(const ShellSpectrum& s, double sobolev_s) {
    double acc = 0.0;
    for (size_t i = 0; i < s.e.size(); ++i) {
        const double a = std::exp2((s.j_min + static_cast<int>(i)) * sobolev_s) * s.e[i];
        acc += a * a;
    }
    return std::sqrt(acc);
}

double measure_equivalence(const FilterBank& bank, double s) {
    // per-mode ratio sqrt(sum_j phi_j^2 4^{js}) / |xi|^s; the extreme over
    // the lattice bounds the ratio of the two norms for every field
    const auto& xi = bank.xi_abs();
    double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
    for (size_t i = 0; i < xi.size(); ++i) {
        if (xi[i] == 0.0) continue;
        double acc = 0.0;
        for (int j = bank.j_min(); j <= bank.j_max(); ++j) {
            const double v = bank.phi(j)[i] * std::exp2(j * s);
            acc += v * v;
        }
        const double r = std::sqrt(acc) / std::pow(xi[i], s);
        lo = std::min(lo, r);
        hi = std::max(hi, r);
    }
    return std::max(hi, 1.0 / lo);
}

RatioValue sparseness_ratio(const FilterBank& bank, const SpectralField& f, int J,
                            double s, Cutoff c) {
    if (f.max_abs_coeff() == 0.0) return RatioValue{};  // undefined for theta = 0
    SpectralField low = bank.project_below(f, J, c);
    SpectralField high = f - low;
    return make_ratio(sobolev_norm(low, s), sobolev_norm(high, s));
}

RatioValue sparseness_ratio(const FilterBank& bank, const SpectralField& f, double J,
                            double s) {
    if (f.max_abs_coeff() == 0.0) return RatioValue{};
    SpectralField low = bank.project_below(f, J);
    SpectralField high = f - low;
    return make_ratio(sobolev_norm(low, s), sobolev_norm(high, s));
}

namespace {

RatioValue oriented(double low, double high, RatioOrientation o) {
    return (o == RatioOrientation::low_over_high) ? make_ratio(low, high)
                                                  : make_ratio(high, low);
}

}  // namespace

RatioValue lp_ratio(const FilterBank& bank, const SpectralField& w, int J, double p,
                    RatioOrientation o, Cutoff c) {
    if (w.max_abs_coeff() == 0.0) return RatioValue{};
    SpectralField low = bank.project_below(w, J, c);
    SpectralField high = w - low;
    return oriented(lp_norm(low, p), lp_norm(high, p), o);
}

RatioValue lp_ratio(const FilterBank& bank, const SpectralField& w, double J, double p,
                    RatioOrientation o) {
    if (w.max_abs_coeff() == 0.0) return RatioValue{};
    SpectralField low = bank.project_below(w, J);
    SpectralField high = w - low;
    return oriented(lp_norm(low, p), lp_norm(high, p), o);
}

NormReport norm_report(const FilterBank& bank, const SpectralField& f, double time,
                       const std::vector<double>& sobolev_s,
                       const std::vector<double>& lp_p,
                       const std::vector<std::pair<double, double>>& besov_sp,
                       bool with_shells) {
    NormReport r;
    r.time = time;
    for (double p : lp_p) r.lp[p] = lp_norm(f, p);
    for (double s : sobolev_s) r.sobolev[s] = sobolev_norm(f, s);
    for (auto [s, p] : besov_sp) r.besov[{s, p}] = besov_norm(bank, f, s, p);
    if (with_shells) r.shells = shell_spectrum(bank, f);
    return r;
}

}  // namespace sqg
