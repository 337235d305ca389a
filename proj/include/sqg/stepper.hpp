#pragma once

#include <functional>

#include "sqg/operators.hpp"

namespace sqg {

enum class EquationMode {
    full,         // advection + fractional dissipation
    linear_heat,  // dissipation only (advection off)
    inviscid,     // advection only (dissipation off)
};

/// One trajectory's time integrator: integrating-factor Runge-Kutta with
/// the fractional heat multiplier applied exactly and the advection term
/// advanced by a third-order explicit rule (Heun) on the transformed
/// variable.  Stage times increase, so only decaying exponentials appear.
///
/// A Stepper owns scratch buffers: one instance per advancing trajectory
/// (twins and ensemble members each get their own and may run in parallel).
class Stepper {
  public:
    Stepper(const GridSpec& grid, double alpha, EquationMode mode);

    const GridSpec& grid() const { return grid_; }
    double alpha() const { return alpha_; }
    EquationMode mode() const { return mode_; }

    /// Advance theta by dt in place.  The caller owns the dt policy; see
    /// Stepper::cfl_dt for the advective stability bound.
    void step(SpectralField& theta, double dt);

    /// Advance with dt chosen from the first-stage velocity maximum:
    /// dt = dt_of(max |u|).  Returns the dt used.
    double step_adaptive(SpectralField& theta,
                         const std::function<double(double)>& dt_of);

    /// max |u| observed at the first stage of the most recent step.
    double last_max_velocity() const { return max_u_; }

    /// safety * dx / max|u| (unbounded when the field is at rest).
    static double cfl_dt(const GridSpec& g, double max_u, double safety);

  private:
    void ensure_multipliers(double dt);
    void nonlinear(const SpectralField& theta, std::vector<Complex>& out, double* max_u);

    GridSpec grid_;
    double alpha_ = 0.0;
    EquationMode mode_;
    double cached_dt_ = -1.0;
    std::vector<double> rate_;            // |xi|^{2 alpha}
    std::vector<double> e1_, e2_, e3_;    // exp(-m dt/3 |xi|^{2a}), m = 1,2,3
    std::vector<Complex> k1_, k3_, stage_;
    AdvectionWorkspace ws_;
    double max_u_ = 0.0;
};

/// ||Lambda^alpha theta||_2^2, the instantaneous dissipation rate of the
/// L^2 balance d/dt ||theta||_2^2 = -2 ||Lambda^alpha theta||_2^2.
double dissipation_rate(const SpectralField& theta, double alpha);

/// ||theta||_2^2 by Parseval.
double l2_squared(const SpectralField& theta);

}  // namespace sqg
