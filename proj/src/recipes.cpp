#include "sqg/recipes.hpp"

#include <cmath>
#include <stdexcept>

#include "sqg/io.hpp"
#include "sqg/norms.hpp"
#include "sqg/random_field.hpp"

namespace sqg {

std::vector<std::string> DataRecipe::validate(const GridSpec& grid) const {
    std::vector<std::string> bad;
    const double xi_top = grid.xi_corner();
    auto shell_ok = [&](int j, const char* name) {
        if (std::exp2(j) > xi_top)
            bad.push_back(std::string("data.") + name + " lies beyond the grid's Nyquist shell");
    };
    switch (kind) {
        case Kind::single_shell:
            shell_ok(shell, "shell");
            break;
        case Kind::band_limited_random:
        case Kind::high_frequency_concentrated:
            shell_ok(j_lo, "j_lo");
            shell_ok(j_hi, "j_hi");
            if (j_lo > j_hi) bad.push_back("data.j_lo must not exceed data.j_hi");
            break;
        case Kind::low_frequency_dominated:
            shell_ok(j_hi, "j_hi");
            break;
        case Kind::gaussian_vortex_pair:
            if (!(vortex_radius > 0.0)) bad.push_back("data.vortex_radius must be > 0");
            if (!(vortex_separation >= 0.0))
                bad.push_back("data.vortex_separation must be >= 0");
            break;
        case Kind::checkpoint:
            if (checkpoint_path.empty()) bad.push_back("data.checkpoint_path is empty");
            break;
    }
    if (normalize != Norm::none && !(norm_value > 0.0))
        bad.push_back("data.norm_value must be > 0");
    return bad;
}

namespace {

SpectralField exact_shell_field(const GridSpec& grid, int shell, uint64_t seed) {
    // modes with |xi| = 2^shell exactly: every other shell multiplier
    // vanishes there, so the field is shell-pure
    const double target = std::exp2(shell);
    SpectralField f = random_band_field(grid, target * (1.0 - 1e-12),
                                        target * (1.0 + 1e-12), 1.0, seed, 11);
    if (f.max_abs_coeff() == 0.0)
        throw std::invalid_argument(
            "single_shell: no lattice mode with |xi| = 2^shell on this grid");
    return f;
}

SpectralField vortex_pair_field(const GridSpec& grid, double radius, double separation,
                                double amplitude) {
    const int n = grid.n;
    const double L = grid.box_length;
    std::vector<double> vals(grid.size());
    const double cx1 = 0.5 * L - 0.5 * separation, cx2 = 0.5 * L + 0.5 * separation;
    const double cy = 0.5 * L;
    auto wrap = [L](double d) {
        while (d > 0.5 * L) d -= L;
        while (d < -0.5 * L) d += L;
        return d;
    };
    for (int iy = 0; iy < n; ++iy) {
        const double y = iy * grid.dx();
        for (int ix = 0; ix < n; ++ix) {
            const double x = ix * grid.dx();
            const double r1 = std::hypot(wrap(x - cx1), wrap(y - cy));
            const double r2 = std::hypot(wrap(x - cx2), wrap(y - cy));
            vals[static_cast<size_t>(iy) * n + ix] =
                amplitude * (std::exp(-0.5 * r1 * r1 / (radius * radius)) -
                             std::exp(-0.5 * r2 * r2 / (radius * radius)));
        }
    }
    SpectralField f = from_physical(grid, vals);
    f.coeff[0] = Complex{};  // mean removed
    return f;
}

}  // namespace

SpectralField generate(const DataRecipe& recipe, const GridSpec& grid, uint64_t seed) {
    {
        auto bad = recipe.validate(grid);
        if (!bad.empty()) throw std::invalid_argument("generate: " + bad.front());
    }
    SpectralField f;
    switch (recipe.kind) {
        case DataRecipe::Kind::single_shell:
            f = exact_shell_field(grid, recipe.shell, seed);
            break;
        case DataRecipe::Kind::band_limited_random:
            f = random_band_field(grid, std::exp2(recipe.j_lo), std::exp2(recipe.j_hi),
                                  recipe.slope, seed, 1);
            break;
        case DataRecipe::Kind::high_frequency_concentrated:
            // support in |xi| >= 2^{j_lo} makes Delta_{<J} theta = 0 for every
            // J <= j_lo, so the sparseness ratio vanishes by construction
            f = random_band_field(grid, std::exp2(recipe.j_lo), std::exp2(recipe.j_hi),
                                  recipe.slope, seed, 2);
            break;
        case DataRecipe::Kind::low_frequency_dominated:
            // support in |xi| <= 2^{j_hi - 1} makes Delta_{>= j_hi} theta = 0
            f = random_band_field(grid, grid.xi_min(), std::exp2(recipe.j_hi - 1),
                                  recipe.slope, seed, 3);
            break;
        case DataRecipe::Kind::gaussian_vortex_pair:
            f = vortex_pair_field(grid, recipe.vortex_radius, recipe.vortex_separation,
                                  recipe.amplitude);
            break;
        case DataRecipe::Kind::checkpoint: {
            Checkpoint ck = read_checkpoint(recipe.checkpoint_path);
            return ck.field;  // verbatim round-trip, no rescaling
        }
    }
    if (recipe.kind != DataRecipe::Kind::gaussian_vortex_pair) f *= recipe.amplitude;

    double current = 0.0;
    switch (recipe.normalize) {
        case DataRecipe::Norm::none:
            return f;
        case DataRecipe::Norm::l2:
            current = lp_norm(f, 2.0);
            break;
        case DataRecipe::Norm::hs:
            current = sobolev_norm(f, recipe.norm_s);
            break;
        case DataRecipe::Norm::linf:
            current = physical_max_abs(f);
            break;
    }
    if (!(current > 0.0))
        throw std::invalid_argument("generate: cannot normalize a zero field");
    f *= recipe.norm_value / current;
    return f;
}

}  // namespace sqg
