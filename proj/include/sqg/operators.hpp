#pragma once

#include "sqg/field.hpp"

namespace sqg {

// Everything here is a pure function of its (immutable) inputs; distinct
// fields may be processed from different threads concurrently.

/// Divergence-free velocity (two scalar components on one grid).
struct VelocityField {
    SpectralField u1;
    SpectralField u2;
};

/// u = (-R_{x2} theta, R_{x1} theta) with the Riesz symbol R_j <-> -i xi_j/|xi|,
/// i.e. u1_hat = (i xi2/|xi|) theta_hat, u2_hat = (-i xi1/|xi|) theta_hat.
/// The mean mode has no Riesz image on the torus and is set to zero.
/// Nyquist rows are zeroed so both components stay real.
VelocityField riesz_velocity(const SpectralField& theta);

/// (-Laplace)^beta: multiply by |xi|^{2 beta}.  beta > 0 sends the mean
/// mode to zero, beta == 0 is the identity, beta < 0 requires a zero mean
/// mode (throws std::domain_error otherwise).
SpectralField fractional_laplacian(const SpectralField& theta, double beta);

/// (d/dx1, d/dx2): multiply by i xi_j.  Nyquist rows zeroed.
VelocityField gradient(const SpectralField& theta);

/// Scratch buffers for the pseudo-spectral product; reusable across calls.
struct AdvectionWorkspace {
    std::vector<Complex> pack_u, pack_g, prod;
    std::vector<double> u1, u2, g1, g2;
};

/// Spectral coefficients of u . grad(theta), computed pseudo-spectrally with
/// the grid's dealias rule applied to the inputs and to the product.
SpectralField advection_term(const SpectralField& theta);
SpectralField advection_term(const SpectralField& theta, AdvectionWorkspace& ws,
                             double* max_velocity = nullptr);

/// theta_lambda(x) = lambda^{2 alpha - 1} theta(lambda x) on the box of
/// length L/lambda; wavevector labels are unchanged.  lambda must be a
/// (possibly negative) power of two.
SpectralField rescale_solution(const SpectralField& theta, double lambda, double alpha);

}  // namespace sqg
