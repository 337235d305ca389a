#include "sqg/operators.hpp"

#include <cmath>
#include <stdexcept>

#include "sqg/fft.hpp"

namespace sqg {

namespace {

void require_finite(const SpectralField& f, const char* who) {
    if (!f.all_finite()) throw std::invalid_argument(std::string(who) + ": non-finite input");
}

}  // namespace

VelocityField riesz_velocity(const SpectralField& theta) {
    require_finite(theta, "riesz_velocity");
    const GridSpec& g = theta.grid;
    const int n = g.n;
    VelocityField u{SpectralField(g), SpectralField(g)};
    for (int iy = 0; iy < n; ++iy) {
        const int ky = g.wavenumber(iy);
        for (int ix = 0; ix < n; ++ix) {
            const int kx = g.wavenumber(ix);
            if ((kx == 0 && ky == 0) || kx == -n / 2 || ky == -n / 2) continue;
            const double x1 = g.xi(kx), x2 = g.xi(ky);
            const double r = std::sqrt(x1 * x1 + x2 * x2);
            const Complex th = theta.at_index(ix, iy);
            u.u1.at_index(ix, iy) = Complex(0.0, x2 / r) * th;
            u.u2.at_index(ix, iy) = Complex(0.0, -x1 / r) * th;
        }
    }
    return u;
}

SpectralField fractional_laplacian(const SpectralField& theta, double beta) {
    require_finite(theta, "fractional_laplacian");
    const GridSpec& g = theta.grid;
    if (beta < 0.0 && std::abs(theta.mean_mode()) != 0.0)
        throw std::domain_error("fractional_laplacian: beta < 0 needs a zero mean mode");
    const int n = g.n;
    SpectralField out(g);
    for (int iy = 0; iy < n; ++iy) {
        const int ky = g.wavenumber(iy);
        for (int ix = 0; ix < n; ++ix) {
            const int kx = g.wavenumber(ix);
            if (kx == 0 && ky == 0) {
                out.at_index(ix, iy) = (beta == 0.0) ? theta.at_index(ix, iy) : Complex{};
                continue;
            }
            const double x1 = g.xi(kx), x2 = g.xi(ky);
            const double r2 = x1 * x1 + x2 * x2;
            out.at_index(ix, iy) = std::pow(r2, beta) * theta.at_index(ix, iy);
        }
    }
    return out;
}

VelocityField gradient(const SpectralField& theta) {
    const GridSpec& g = theta.grid;
    const int n = g.n;
    VelocityField d{SpectralField(g), SpectralField(g)};
    for (int iy = 0; iy < n; ++iy) {
        const int ky = g.wavenumber(iy);
        for (int ix = 0; ix < n; ++ix) {
            const int kx = g.wavenumber(ix);
            if (kx == -n / 2 || ky == -n / 2) continue;
            const Complex th = theta.at_index(ix, iy);
            d.u1.at_index(ix, iy) = Complex(0.0, g.xi(kx)) * th;
            d.u2.at_index(ix, iy) = Complex(0.0, g.xi(ky)) * th;
        }
    }
    return d;
}

SpectralField advection_term(const SpectralField& theta) {
    AdvectionWorkspace ws;
    return advection_term(theta, ws, nullptr);
}

SpectralField advection_term(const SpectralField& theta, AdvectionWorkspace& ws,
                             double* max_velocity) {
    require_finite(theta, "advection_term");
    const GridSpec& g = theta.grid;
    const int n = g.n;
    const size_t sz = static_cast<size_t>(g.size());
    const int kmax = g.dealias_kmax();

    ws.pack_u.assign(sz, Complex{});
    ws.pack_g.assign(sz, Complex{});

    // velocity and gradient multipliers on dealiased theta, packed as
    // (u1 + i u2) and (th_x1 + i th_x2) for two transforms total
    for (int iy = 0; iy < n; ++iy) {
        const int ky = g.wavenumber(iy);
        if (std::abs(ky) > kmax) continue;
        for (int ix = 0; ix < n; ++ix) {
            const int kx = g.wavenumber(ix);
            if (std::abs(kx) > kmax) continue;
            if (kx == 0 && ky == 0) continue;
            const size_t i = static_cast<size_t>(iy) * n + ix;
            const double x1 = g.xi(kx), x2 = g.xi(ky);
            const double r = std::sqrt(x1 * x1 + x2 * x2);
            const Complex th = theta.coeff[i];
            const Complex u1 = Complex(0.0, x2 / r) * th;
            const Complex u2 = Complex(0.0, -x1 / r) * th;
            const Complex g1 = Complex(0.0, x1) * th;
            const Complex g2 = Complex(0.0, x2) * th;
            ws.pack_u[i] = u1 + Complex(0.0, 1.0) * u2;
            ws.pack_g[i] = g1 + Complex(0.0, 1.0) * g2;
        }
    }
    fft2_inverse(n, ws.pack_u.data());
    fft2_inverse(n, ws.pack_g.data());

    ws.prod.assign(sz, Complex{});
    double vmax = 0.0;
    for (size_t i = 0; i < sz; ++i) {
        const double u1 = ws.pack_u[i].real(), u2 = ws.pack_u[i].imag();
        const double t1 = ws.pack_g[i].real(), t2 = ws.pack_g[i].imag();
        ws.prod[i] = Complex(u1 * t1 + u2 * t2, 0.0);
        vmax = std::max(vmax, u1 * u1 + u2 * u2);
    }
    if (max_velocity) *max_velocity = std::sqrt(vmax);

    fft2_forward(n, ws.prod.data());
    SpectralField out(g);
    const double scale = 1.0 / g.size();
    for (size_t i = 0; i < sz; ++i) out.coeff[i] = scale * ws.prod[i];
    out.dealias();
    out.coeff[0] = Complex{};  // the mean of u . grad theta vanishes for div-free u
    return out;
}

SpectralField rescale_solution(const SpectralField& theta, double lambda, double alpha) {
    if (!(lambda > 0.0)) throw std::invalid_argument("rescale_solution: lambda must be > 0");
    const double m = std::log2(lambda);
    if (std::abs(m - std::round(m)) > 1e-12)
        throw std::invalid_argument("rescale_solution: lambda must be a power of two");
    SpectralField out = theta;
    out.grid.box_length = theta.grid.box_length / lambda;
    const double amp = std::pow(lambda, 2.0 * alpha - 1.0);
    for (Complex& c : out.coeff) c *= amp;
    return out;
}

}  // namespace sqg
