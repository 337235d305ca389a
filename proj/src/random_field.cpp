#include "sqg/random_field.hpp"

#include <cmath>
#include <numbers>

namespace sqg {

namespace {

enum class PhaseLaw { random, packet };

SpectralField band_field(const GridSpec& grid, double xi_lo, double xi_hi,
                         double sigma, uint64_t seed, uint64_t stream, bool rayleigh,
                         PhaseLaw law) {
    SpectralField f(grid);
    const int n = grid.n;
    const CounterRng rng{seed};
    double cx = 0.0, cy = 0.0;
    if (law == PhaseLaw::packet) {
        cx = grid.box_length * rng.uniform(3 * stream + 1, 0xC0FFEE);
        cy = grid.box_length * rng.uniform(3 * stream + 2, 0xC0FFEE);
    }
    for (int ky = 0; ky <= n / 2 - 1; ++ky) {
        for (int kx = -(n / 2 - 1); kx <= n / 2 - 1; ++kx) {
            if (ky == 0 && kx <= 0) continue;  // canonical half-lattice
            const double r = std::hypot(grid.xi(kx), grid.xi(ky));
            if (r < xi_lo || r > xi_hi) continue;
            const uint64_t ctr =
                (static_cast<uint64_t>(static_cast<uint32_t>(ky)) << 32) |
                static_cast<uint32_t>(kx + n);
            double mag = std::pow(r, sigma - 1.0);
            if (rayleigh) {
                const double u = rng.uniform(3 * stream + 2, ctr);
                mag *= std::sqrt(-std::log(u));
            }
            const double phase =
                law == PhaseLaw::packet
                    ? -(grid.xi(kx) * cx + grid.xi(ky) * cy)
                    : 2.0 * std::numbers::pi * rng.uniform(3 * stream + 1, ctr);
            const Complex c = mag * Complex(std::cos(phase), std::sin(phase));
            f.at_mode(kx, ky) = c;
            f.at_mode(-kx, -ky) = std::conj(c);
        }
    }
    return f;
}

}  // namespace

SpectralField random_band_field(const GridSpec& grid, double xi_lo, double xi_hi,
                                double sigma, uint64_t seed, uint64_t stream,
                                bool rayleigh) {
    return band_field(grid, xi_lo, xi_hi, sigma, seed, stream, rayleigh,
                      PhaseLaw::random);
}

SpectralField random_packet_field(const GridSpec& grid, double xi_lo, double xi_hi,
                                  double sigma, uint64_t seed, uint64_t stream) {
    return band_field(grid, xi_lo, xi_hi, sigma, seed, stream, false,
                      PhaseLaw::packet);
}

}  // namespace sqg
