#pragma once

#include <cmath>
#include <numbers>
#include <string>
#include <vector>

namespace sqg {

/// Square periodic grid: n points per axis on the box [0, L)^2.
/// Spectral coefficients are indexed by integer wavevectors
/// k in {-n/2 .. n/2-1}^2; the physical frequency of mode k is
/// xi = 2*pi*k / L.
struct GridSpec {
    int n = 0;
    double box_length = 2.0 * std::numbers::pi;
    double dealias_fraction = 2.0 / 3.0;

    int size() const { return n * n; }

    // FFT storage index <-> signed wavenumber
    int wavenumber(int idx) const { return idx <= n / 2 - 1 ? idx : idx - n; }
    int index_of(int k) const { return k >= 0 ? k : k + n; }

    double xi_base() const { return 2.0 * std::numbers::pi / box_length; }
    double xi(int k) const { return xi_base() * k; }
    double dx() const { return box_length / n; }

    /// Largest |k|_inf kept by the dealiasing rule.
    int dealias_kmax() const {
        return static_cast<int>(std::floor(dealias_fraction * (n / 2) + 1e-9));
    }
    /// Physical-frequency radius of the dealias cutoff.
    double dealias_xi() const { return xi_base() * dealias_fraction * (n / 2); }

    /// Smallest/largest nonzero |xi| on the lattice (corner included).
    double xi_min() const { return xi_base(); }
    double xi_corner() const { return xi_base() * (n / 2) * std::numbers::sqrt2; }

    bool operator==(const GridSpec& o) const {
        return n == o.n && box_length == o.box_length &&
               dealias_fraction == o.dealias_fraction;
    }

    std::vector<std::string> validate() const {
        std::vector<std::string> bad;
        if (n < 16) bad.push_back("grid.n must be >= 16");
        if (n > 0 && (n & (n - 1)) != 0) bad.push_back("grid.n must be a power of two");
        if (!(box_length > 0.0)) bad.push_back("grid.box_length must be > 0");
        if (!(dealias_fraction > 0.0) || dealias_fraction > 1.0)
            bad.push_back("grid.dealias_fraction must be in (0, 1]");
        return bad;
    }
};

/// Throwing factory for contexts where a bad grid is a programming error.
GridSpec make_grid(int n, double box_length = 2.0 * std::numbers::pi,
                   double dealias_fraction = 2.0 / 3.0);

}  // namespace sqg
