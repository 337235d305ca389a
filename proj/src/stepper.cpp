#include "sqg/stepper.hpp"

#include <cmath>
#include <stdexcept>

namespace sqg {

double l2_squared(const SpectralField& f) {
    double acc = 0.0;
    for (const Complex& c : f.coeff) acc += std::norm(c);
    return f.grid.box_length * f.grid.box_length * acc;
}

double dissipation_rate(const SpectralField& f, double alpha) {
    const GridSpec& g = f.grid;
    const int n = g.n;
    double acc = 0.0;
    for (int iy = 0; iy < n; ++iy) {
        const double x2 = g.xi(g.wavenumber(iy));
        for (int ix = 0; ix < n; ++ix) {
            const double x1 = g.xi(g.wavenumber(ix));
            const double r2 = x1 * x1 + x2 * x2;
            if (r2 == 0.0) continue;
            acc += std::pow(r2, alpha) * std::norm(f.at_index(ix, iy));
        }
    }
    return g.box_length * g.box_length * acc;
}

Stepper::Stepper(const GridSpec& grid, double alpha, EquationMode mode)
    : grid_(grid), alpha_(alpha), mode_(mode) {
    auto bad = grid.validate();
    if (!bad.empty()) throw std::invalid_argument("Stepper: " + bad.front());
    if (mode != EquationMode::inviscid && !(alpha > 0.0 && alpha <= 1.0))
        throw std::invalid_argument("Stepper: alpha must be in (0, 1]");
    const int n = grid.n;
    rate_.resize(grid.size());
    for (int iy = 0; iy < n; ++iy) {
        const double x2 = grid.xi(grid.wavenumber(iy));
        for (int ix = 0; ix < n; ++ix) {
            const double x1 = grid.xi(grid.wavenumber(ix));
            const double r2 = x1 * x1 + x2 * x2;
            rate_[static_cast<size_t>(iy) * n + ix] = (r2 == 0.0) ? 0.0 : std::pow(r2, alpha);
        }
    }
}

double Stepper::cfl_dt(const GridSpec& g, double max_u, double safety) {
    if (max_u <= 0.0) return std::numeric_limits<double>::infinity();
    return safety * g.dx() / max_u;
}

void Stepper::ensure_multipliers(double dt) {
    if (dt == cached_dt_) return;
    const size_t sz = rate_.size();
    e1_.resize(sz);
    e2_.resize(sz);
    e3_.resize(sz);
    const bool dissipate = mode_ != EquationMode::inviscid;
    for (size_t i = 0; i < sz; ++i) {
        const double e = dissipate ? std::exp(-dt / 3.0 * rate_[i]) : 1.0;
        e1_[i] = e;
        e2_[i] = e * e;
        e3_[i] = e * e * e;
    }
    cached_dt_ = dt;
}

void Stepper::nonlinear(const SpectralField& theta, std::vector<Complex>& out,
                        double* max_u) {
    // N(theta) = -dealias(u . grad theta)
    SpectralField adv = advection_term(theta, ws_, max_u);
    out.resize(adv.coeff.size());
    for (size_t i = 0; i < out.size(); ++i) out[i] = -adv.coeff[i];
}

void Stepper::step(SpectralField& theta, double dt) {
    step_adaptive(theta, [dt](double) { return dt; });
}

double Stepper::step_adaptive(SpectralField& theta,
                              const std::function<double(double)>& dt_of) {
    if (!(theta.grid == grid_)) throw std::invalid_argument("Stepper::step: grid mismatch");

    if (mode_ == EquationMode::linear_heat) {
        max_u_ = 0.0;
        const double dt = dt_of(0.0);
        ensure_multipliers(dt);
        for (size_t i = 0; i < theta.coeff.size(); ++i) theta.coeff[i] *= e3_[i];
        return dt;
    }

    nonlinear(theta, k1_, &max_u_);
    const double dt = dt_of(max_u_);
    if (!(dt > 0.0) || !std::isfinite(dt))
        throw std::invalid_argument("Stepper::step: nonpositive dt");
    ensure_multipliers(dt);

    const size_t sz = theta.coeff.size();
    stage_.resize(sz);

    // Heun RK3 on v = e^{-Lt} theta; stages at t, t+dt/3, t+2dt/3
    for (size_t i = 0; i < sz; ++i)
        stage_[i] = e1_[i] * (theta.coeff[i] + (dt / 3.0) * k1_[i]);
    SpectralField tmp{grid_};
    tmp.coeff.swap(stage_);
    nonlinear(tmp, k3_, nullptr);  // k2 stored in k3_
    stage_ = std::move(tmp.coeff);
    for (size_t i = 0; i < sz; ++i)
        stage_[i] = e2_[i] * theta.coeff[i] + (2.0 * dt / 3.0) * e1_[i] * k3_[i];
    tmp.coeff.swap(stage_);
    nonlinear(tmp, k3_, nullptr);
    stage_ = std::move(tmp.coeff);
    for (size_t i = 0; i < sz; ++i)
        theta.coeff[i] = e3_[i] * theta.coeff[i] +
                         dt * (0.25 * e3_[i] * k1_[i] + 0.75 * e1_[i] * k3_[i]);
    return dt;
}

}  // namespace sqg
