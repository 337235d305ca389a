#pragma once

#include "sqg/field.hpp"
#include "sqg/rng.hpp"

namespace sqg {

/// Random mean-zero Hermitian field with energy in the frequency band
/// xi_lo <= |xi| <= xi_hi.  Mode magnitudes follow |xi|^{sigma-1}, which
/// makes the shell L^2 energies scale like 2^{j sigma}; phases are random.
/// With rayleigh = true the magnitudes are randomized as well.
/// Deterministic in (seed, stream) and independent of evaluation order.
SpectralField random_band_field(const GridSpec& grid, double xi_lo, double xi_hi,
                                double sigma, uint64_t seed, uint64_t stream = 0,
                                bool rayleigh = false);

/// As above but with phases aligned to a random center (a wave packet):
/// every shell then saturates the Bernstein L^inf factors, which is what a
/// sharpness probe of commutator-type upper bounds needs.
SpectralField random_packet_field(const GridSpec& grid, double xi_lo, double xi_hi,
                                  double sigma, uint64_t seed, uint64_t stream = 0);

}  // namespace sqg
