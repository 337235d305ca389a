#pragma once

#include <vector>

#include "sqg/field.hpp"

namespace sqg {

/// Where an integer cutoff J splits the spectrum.
enum class Cutoff {
    below,        // low part = sum of shells j < J
    at_or_below,  // low part = sum of shells j <= J
};

/// Dyadic Littlewood-Paley filter bank on the grid's frequency lattice.
///
/// chi is radial, 1 on |xi| <= 1/2 and 0 on |xi| >= 1; the annular
/// multipliers are phi_j(xi) = chi(xi/2^{j+1}) - chi(xi/2^j), which makes
/// sum_j phi_j telescope to exactly 1 at every nonzero lattice point.
/// The top shell absorbs lattice corners above the nominal dyadic range
/// (flagged); the bottom of the range sits below the lowest nonzero |xi|,
/// so nothing is absorbed there.
///
/// A bank is immutable after construction and shareable across threads;
/// projections and norms built on it are pure.
class FilterBank {
  public:
    explicit FilterBank(const GridSpec& grid);

    const GridSpec& grid() const { return grid_; }
    int j_min() const { return j_min_; }
    int j_max() const { return j_max_; }
    bool contains(int j) const { return j >= j_min_ && j <= j_max_; }
    /// Lattice modes with phi_j > 0 (zero means the shell is empty).
    int shell_mode_count(int j) const;
    /// Number of corner modes absorbed into the top shell.
    int absorbed_top_modes() const { return absorbed_top_; }

    const std::vector<double>& phi(int j) const;

    /// Smooth radial cutoff: 1 on r <= 1/2, bump transition, 0 on r >= 1.
    static double chi(double r);

    /// max over nonzero lattice points of |sum_j phi_j - 1|.
    double partition_defect() const;

    /// Multiplier of the low part at a lattice frequency radius.
    /// Integer cutoff: telescoped shell sum, chi(|xi|/2^J) (strict) or
    /// chi(|xi|/2^{J+1}) (non-strict).  Real cutoff: chi(|xi|/2^{J+1}).
    double low_multiplier(double xi_abs, int J, Cutoff c) const;
    static double low_multiplier_real(double xi_abs, double J);

    /// Shell projection; out-of-range j yields a zero field and, if given,
    /// sets *in_range = false.
    SpectralField project_shell(const SpectralField& f, int j,
                                bool* in_range = nullptr) const;

    /// Low-pass parts.  The mean mode rides with the low part in every
    /// variant.  High parts are f - low.
    SpectralField project_below(const SpectralField& f, int J,
                                Cutoff c = Cutoff::below) const;
    SpectralField project_below(const SpectralField& f, double J) const;

    /// Frequency radius of each lattice index (precomputed |xi|).
    const std::vector<double>& xi_abs() const { return xi_abs_; }

  private:
    GridSpec grid_;
    int j_min_ = 0;
    int j_max_ = 0;
    int absorbed_top_ = 0;
    std::vector<double> xi_abs_;             // per lattice index
    std::vector<std::vector<double>> phi_;   // per shell, per lattice index
    std::vector<int> mode_count_;

    SpectralField apply_low(const SpectralField& f, double (*mult)(double, double),
                            double J) const;
};

}  // namespace sqg
