#include "sqg/filter_bank.hpp"

#include <cmath>
#include <stdexcept>

namespace sqg {

double FilterBank::chi(double r) {
    r = std::abs(r);
    if (r <= 0.5) return 1.0;
    if (r >= 1.0) return 0.0;
    const double u = 2.0 * r - 1.0;  // in (0,1)
    return std::exp(1.0 - 1.0 / (1.0 - u * u));
}

FilterBank::FilterBank(const GridSpec& grid) : grid_(grid) {
    auto bad = grid.validate();
    if (!bad.empty()) throw std::invalid_argument("FilterBank: " + bad.front());

    const int n = grid.n;
    xi_abs_.resize(grid.size());
    for (int iy = 0; iy < n; ++iy) {
        const double x2 = grid.xi(grid.wavenumber(iy));
        for (int ix = 0; ix < n; ++ix) {
            const double x1 = grid.xi(grid.wavenumber(ix));
            xi_abs_[static_cast<size_t>(iy) * n + ix] = std::hypot(x1, x2);
        }
    }

    // shell range: two spare shells below the lowest nonzero frequency,
    // top shell at the dealias cutoff (absorbs lattice corners)
    j_min_ = static_cast<int>(std::floor(std::log2(grid.xi_min()))) - 2;
    j_max_ = static_cast<int>(std::ceil(std::log2(grid.dealias_xi())));

    const int nshell = j_max_ - j_min_ + 1;
    phi_.assign(nshell, std::vector<double>(grid.size(), 0.0));
    mode_count_.assign(nshell, 0);
    absorbed_top_ = 0;

    for (size_t i = 0; i < xi_abs_.size(); ++i) {
        const double r = xi_abs_[i];
        if (r == 0.0) continue;
        for (int j = j_min_; j <= j_max_; ++j) {
            double v;
            if (j == j_max_) {
                v = 1.0 - chi(r / std::exp2(j));  // absorbs everything above
            } else {
                v = chi(r / std::exp2(j + 1)) - chi(r / std::exp2(j));
            }
            phi_[j - j_min_][i] = v;
        }
        if (r > std::exp2(j_max_)) ++absorbed_top_;  // top shell widened here
    }
    for (int j = j_min_; j <= j_max_; ++j) {
        int cnt = 0;
        for (double v : phi_[j - j_min_])
            if (v > 0.0) ++cnt;
        mode_count_[j - j_min_] = cnt;
    }
}

int FilterBank::shell_mode_count(int j) const {
    if (!contains(j)) return 0;
    return mode_count_[j - j_min_];
}

const std::vector<double>& FilterBank::phi(int j) const {
    if (!contains(j)) throw std::out_of_range("FilterBank::phi: shell out of range");
    return phi_[j - j_min_];
}

double FilterBank::partition_defect() const {
    double worst = 0.0;
    for (size_t i = 0; i < xi_abs_.size(); ++i) {
        if (xi_abs_[i] == 0.0) continue;
        double s = 0.0;
        for (const auto& p : phi_) s += p[i];
        worst = std::max(worst, std::abs(s - 1.0));
    }
    return worst;
}

double FilterBank::low_multiplier(double xi_abs, int J, Cutoff c) const {
    const int Jeff = (c == Cutoff::below) ? J : J + 1;
    return chi(xi_abs / std::exp2(Jeff));
}

double FilterBank::low_multiplier_real(double xi_abs, double J) {
    return chi(xi_abs / std::exp2(J + 1.0));
}

SpectralField FilterBank::project_shell(const SpectralField& f, int j,
                                        bool* in_range) const {
    if (!(f.grid == grid_)) throw std::invalid_argument("project_shell: grid mismatch");
    SpectralField out(grid_);
    if (!contains(j)) {
        if (in_range) *in_range = false;
        return out;
    }
    if (in_range) *in_range = true;
    const auto& p = phi_[j - j_min_];
    for (size_t i = 0; i < out.coeff.size(); ++i) out.coeff[i] = p[i] * f.coeff[i];
    return out;
}

SpectralField FilterBank::project_below(const SpectralField& f, int J, Cutoff c) const {
    if (!(f.grid == grid_)) throw std::invalid_argument("project_below: grid mismatch");
    SpectralField out(grid_);
    for (size_t i = 0; i < out.coeff.size(); ++i) {
        const double m = (xi_abs_[i] == 0.0) ? 1.0 : low_multiplier(xi_abs_[i], J, c);
        out.coeff[i] = m * f.coeff[i];
    }
    return out;
}

SpectralField FilterBank::project_below(const SpectralField& f, double J) const {
    if (!(f.grid == grid_)) throw std::invalid_argument("project_below: grid mismatch");
    SpectralField out(grid_);
    for (size_t i = 0; i < out.coeff.size(); ++i) {
        const double m = (xi_abs_[i] == 0.0) ? 1.0 : low_multiplier_real(xi_abs_[i], J);
        out.coeff[i] = m * f.coeff[i];
    }
    return out;
}

}  // namespace sqg
