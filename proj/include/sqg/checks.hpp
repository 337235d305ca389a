#pragma once

#include <vector>

#include "sqg/norms.hpp"

namespace sqg {

/// Measured Bernstein ratios on random shell-j fields.
struct BernsteinReport {
    int j = 0;
    double p = 2.0;
    double q = 2.0;
    int derivative_order = 1;
    int trials = 0;
    double ratio_min = 0.0;   // ||D Delta_j f||_p / (2^{j m} ||Delta_j f||_p)
    double ratio_max = 0.0;
    double norm_ratio_min = 0.0;  // ||f||_q vs 2^{2j(1/p-1/q)} ||f||_p, q >= p
    double norm_ratio_max = 0.0;
    bool within_band = false;     // derivative ratios inside [2^-m, 2^m]
};

BernsteinReport bernstein_check(const FilterBank& bank, int j, double p, double q,
                                int derivative_order, int trials, uint64_t seed);

/// Decay fit for ||[f, Delta_j] g||_{L^2} against 2^{-(s+t-1) j}.
struct CommutatorReport {
    double s = 0.0, t = 0.0;
    int j_lo = 0, j_hi = 0;
    int trials = 0;
    std::vector<double> mean_comm;   // per j, ||[f,Delta_j]g||_2 / (|f|_s |g|_t)
    std::vector<double> d_j;         // mean_comm * 2^{(s+t-1) j}
    double d_l2 = 0.0;
    double fitted_decay = 0.0;       // least-squares exponent of 2^{-e j}
    double predicted_decay = 0.0;    // s + t - 1
    bool within_tolerance = false;   // |fitted - predicted| <= 0.3
};

/// The commutator [f, Delta_j] g = f Delta_j g - Delta_j (f g), measured on
/// random fields whose spectra keep products alias-free on the grid.
/// Requires 1 <= s < 2, t < 1, s + t > 1.
CommutatorReport commutator_check(const FilterBank& bank, double s, double t,
                                  int j_lo, int j_hi, int trials, uint64_t seed);

/// Single-pair commutator norm, shared with the tests.
double commutator_l2(const FilterBank& bank, const SpectralField& f,
                     const SpectralField& g, int j);

/// Log-convexity of L^p norms: ||f||_{p_theta} <= ||f||_{p0}^{1-theta} ||f||_{p1}^theta.
struct InterpolationReport {
    double p0 = 0.0, p1 = 0.0, theta = 0.0, p_theta = 0.0;
    double lhs = 0.0, rhs = 0.0, slack = 0.0;  // slack = rhs - lhs
    bool holds = false;
};

InterpolationReport interpolation_check(const SpectralField& f, double p0, double p1,
                                        double theta);

}  // namespace sqg
