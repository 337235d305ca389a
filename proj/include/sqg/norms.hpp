#pragma once

#include <limits>
#include <map>
#include <vector>

#include "sqg/filter_bank.hpp"

namespace sqg {

/// Ratio of two nonnegative norms.  The value is +inf when only the
/// denominator vanishes and 0 when only the numerator does; when both
/// vanish the ratio is undefined and `defined` is false.
struct RatioValue {
    double value = std::numeric_limits<double>::quiet_NaN();
    bool defined = false;
    double numerator = 0.0;
    double denominator = 0.0;
};

enum class RatioOrientation { low_over_high, high_over_low };

/// Unnormalized L^p norm on [0,L]^2: Parseval for p = 2, grid max for
/// p = inf, trapezoidal quadrature on the periodic grid otherwise.
/// Throws for p < 1 or non-finite input.
double lp_norm(const SpectralField& f, double p);

/// Homogeneous Sobolev norm (L^2 * sum |xi|^{2s} |c_k|^2)^{1/2}; the mean
/// mode enters only at s = 0, where the norm equals the L^2 norm.
double sobolev_norm(const SpectralField& f, double s);

/// L^p norm of |grad f| (pointwise Euclidean magnitude).
double grad_lp_norm(const SpectralField& f, double p);

/// sup_j 2^{js} ||Delta_j f||_{L^p} over the bank's shells.
double besov_norm(const FilterBank& bank, const SpectralField& f, double s, double p);

/// Per-shell norms e_j = ||Delta_j f||_{L^p}, j in [bank.j_min(), bank.j_max()].
struct ShellSpectrum {
    int j_min = 0;
    double p = 2.0;
    std::vector<double> e;  // e[j - j_min]

    double at(int j) const {
        const int i = j - j_min;
        return (i >= 0 && i < static_cast<int>(e.size())) ? e[i] : 0.0;
    }
    int j_max() const { return j_min + static_cast<int>(e.size()) - 1; }
};

ShellSpectrum shell_spectrum(const FilterBank& bank, const SpectralField& f,
                             double p = 2.0);

/// Shell-aggregated Sobolev norm (sum_j (2^{js} e_j)^2)^{1/2}; equivalent to
/// sobolev_norm within the bank's measured band.
double shell_l2_sobolev(const ShellSpectrum& s, double sobolev_s);

/// Largest two-sided deviation between shell_l2_sobolev and sobolev_norm
/// over the lattice (exact per-mode bound, no sampling).
double measure_equivalence(const FilterBank& bank, double s);

/// ||Delta_{<J} f||_{Hdot^s} / ||Delta_{>=J} f||_{Hdot^s}.  Integer J uses
/// the strict/non-strict telescoped cutoffs, real J the smooth one.
RatioValue sparseness_ratio(const FilterBank& bank, const SpectralField& f, int J,
                            double s, Cutoff c = Cutoff::below);
RatioValue sparseness_ratio(const FilterBank& bank, const SpectralField& f, double J,
                            double s);

/// L^p low/high ratio at a cutoff, orientation selectable.
RatioValue lp_ratio(const FilterBank& bank, const SpectralField& w, int J, double p,
                    RatioOrientation o, Cutoff c = Cutoff::below);
RatioValue lp_ratio(const FilterBank& bank, const SpectralField& w, double J, double p,
                    RatioOrientation o);

/// Norm fingerprint of a field at one time.
struct NormReport {
    double time = 0.0;
    std::map<double, double> lp;                        // p -> ||f||_p
    std::map<double, double> sobolev;                   // s -> Hdot^s
    std::map<std::pair<double, double>, double> besov;  // (s,p) -> Bdot^s_{p,inf}
    ShellSpectrum shells;
};

NormReport norm_report(const FilterBank& bank, const SpectralField& f, double time,
                       const std::vector<double>& sobolev_s,
                       const std::vector<double>& lp_p,
                       const std::vector<std::pair<double, double>>& besov_sp,
                       bool with_shells = true);

}  // namespace sqg
