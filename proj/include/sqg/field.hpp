#pragma once

#include <complex>
#include <vector>

#include "sqg/grid.hpp"

namespace sqg {

using Complex = std::complex<double>;

/// Real scalar field on the periodic box, stored as Fourier coefficients
/// c_k with theta(x) = sum_k c_k exp(i xi_k . x).  Storage is row-major
/// FFT order: coeff[index_of(ky) * n + index_of(kx)].  Realness of the
/// field is the Hermitian symmetry c_{-k} = conj(c_k).
struct SpectralField {
    GridSpec grid;
    std::vector<Complex> coeff;

    SpectralField() = default;
    explicit SpectralField(const GridSpec& g) : grid(g), coeff(g.size(), Complex{}) {}

    static SpectralField zeros(const GridSpec& g) { return SpectralField(g); }

    Complex& at_index(int ix, int iy) { return coeff[static_cast<size_t>(iy) * grid.n + ix]; }
    const Complex& at_index(int ix, int iy) const {
        return coeff[static_cast<size_t>(iy) * grid.n + ix];
    }
    /// Access by signed wavenumber.
    Complex& at_mode(int kx, int ky) { return at_index(grid.index_of(kx), grid.index_of(ky)); }
    const Complex& at_mode(int kx, int ky) const {
        return at_index(grid.index_of(kx), grid.index_of(ky));
    }

    Complex mean_mode() const { return coeff[0]; }

    bool all_finite() const;
    double max_abs_coeff() const;
    /// Max deviation from c_{-k} = conj(c_k), Nyquist rows handled mod n.
    double hermitian_defect() const;
    void enforce_hermitian();

    /// Zero every mode with |k|_inf above the grid's dealias cutoff.
    void dealias();

    // small vector-space helpers (tests and diagnostics; hot loops in the
    // stepper work on raw buffers)
    SpectralField& operator+=(const SpectralField& o);
    SpectralField& operator-=(const SpectralField& o);
    SpectralField& operator*=(double a);
};

SpectralField operator+(SpectralField a, const SpectralField& b);
SpectralField operator-(SpectralField a, const SpectralField& b);
SpectralField operator*(double a, SpectralField f);

/// Collocation values on the n x n grid, row-major, x = (ix*L/n, iy*L/n).
std::vector<double> to_physical(const SpectralField& f);
/// Inverse of to_physical; throws on size mismatch.
SpectralField from_physical(const GridSpec& grid, const std::vector<double>& samples);

/// One complex transform for two real fields: returns (a, b) from their
/// spectra.  Both inputs must be Hermitian-symmetric.
void to_physical_pair(const SpectralField& a, const SpectralField& b,
                      std::vector<double>& out_a, std::vector<double>& out_b);

double physical_max_abs(const SpectralField& f);

}  // namespace sqg
