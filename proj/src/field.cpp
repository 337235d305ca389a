#include "sqg/field.hpp"

#include <cmath>
#include <stdexcept>

#include "sqg/fft.hpp"

namespace sqg {

GridSpec make_grid(int n, double box_length, double dealias_fraction) {
    GridSpec g{n, box_length, dealias_fraction};
    auto bad = g.validate();
    if (!bad.empty()) throw std::invalid_argument("GridSpec: " + bad.front());
    return g;
}

bool SpectralField::all_finite() const {
    for (const Complex& c : coeff)
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) return false;
    return true;
}

double SpectralField::max_abs_coeff() const {
    double m = 0.0;
    for (const Complex& c : coeff) m = std::max(m, std::abs(c));
    return m;
}

double SpectralField::hermitian_defect() const {
    const int n = grid.n;
    double worst = 0.0;
    for (int iy = 0; iy < n; ++iy) {
        const int jy = (n - iy) % n;
        for (int ix = 0; ix < n; ++ix) {
            const int jx = (n - ix) % n;
            const Complex d = at_index(jx, jy) - std::conj(at_index(ix, iy));
            worst = std::max(worst, std::abs(d));
        }
    }
    return worst;
}

void SpectralField::enforce_hermitian() {
    const int n = grid.n;
    for (int iy = 0; iy < n; ++iy) {
        const int jy = (n - iy) % n;
        for (int ix = 0; ix < n; ++ix) {
            const int jx = (n - ix) % n;
            if (iy > jy || (iy == jy && ix > jx)) continue;
            const Complex a = at_index(ix, iy);
            const Complex b = at_index(jx, jy);
            const Complex h = 0.5 * (a + std::conj(b));
            at_index(ix, iy) = h;
            at_index(jx, jy) = std::conj(h);
        }
    }
}

void SpectralField::dealias() {
    const int n = grid.n;
    const int kmax = grid.dealias_kmax();
    for (int iy = 0; iy < n; ++iy) {
        const int ky = grid.wavenumber(iy);
        const bool cut_y = std::abs(ky) > kmax;
        for (int ix = 0; ix < n; ++ix) {
            const int kx = grid.wavenumber(ix);
            if (cut_y || std::abs(kx) > kmax) at_index(ix, iy) = Complex{};
        }
    }
}

SpectralField& SpectralField::operator+=(const SpectralField& o) {
    if (!(grid == o.grid)) throw std::invalid_argument("field +=: grid mismatch");
    for (size_t i = 0; i < coeff.size(); ++i) coeff[i] += o.coeff[i];
    return *this;
}
SpectralField& SpectralField::operator-=(const SpectralField& o) {
    if (!(grid == o.grid)) throw std::invalid_argument("field -=: grid mismatch");
    for (size_t i = 0; i < coeff.size(); ++i) coeff[i] -= o.coeff[i];
    return *this;
}
SpectralField& SpectralField::operator*=(double a) {
    for (Complex& c : coeff) c *= a;
    return *this;
}
SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
SpectralField operator*(double a, SpectralField f) { return f *= a; }

std::vector<double> to_physical(const SpectralField& f) {
    const int n = f.grid.n;
    std::vector<Complex> work(f.coeff);
    fft2_inverse(n, work.data());
    std::vector<double> out(f.coeff.size());
    for (size_t i = 0; i < out.size(); ++i) out[i] = work[i].real();
    return out;
}

SpectralField from_physical(const GridSpec& grid, const std::vector<double>& samples) {
    if (static_cast<int>(samples.size()) != grid.size())
        throw std::invalid_argument("from_physical: sample count does not match grid");
    SpectralField f(grid);
    for (size_t i = 0; i < samples.size(); ++i) f.coeff[i] = Complex(samples[i], 0.0);
    fft2_forward(grid.n, f.coeff.data());
    const double scale = 1.0 / grid.size();
    for (Complex& c : f.coeff) c *= scale;
    return f;
}

void to_physical_pair(const SpectralField& a, const SpectralField& b,
                      std::vector<double>& out_a, std::vector<double>& out_b) {
    if (!(a.grid == b.grid)) throw std::invalid_argument("to_physical_pair: grid mismatch");
    const int n = a.grid.n;
    std::vector<Complex> work(a.coeff.size());
    for (size_t i = 0; i < work.size(); ++i)
        work[i] = a.coeff[i] + Complex(0.0, 1.0) * b.coeff[i];
    fft2_inverse(n, work.data());
    out_a.resize(work.size());
    out_b.resize(work.size());
    for (size_t i = 0; i < work.size(); ++i) {
        out_a[i] = work[i].real();
        out_b[i] = work[i].imag();
    }
}

double physical_max_abs(const SpectralField& f) {
    const auto vals = to_physical(f);
    double m = 0.0;
    for (double v : vals) m = std::max(m, std::abs(v));
    return m;
}

}  // namespace sqg
