#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sqg/field.hpp"

namespace sqg {

/// Declarative initial-data construction.  Every stochastic recipe is a
/// pure function of (recipe, grid, seed).
struct DataRecipe {
    enum class Kind {
        single_shell,                  // all energy exactly on |xi| = 2^shell
        band_limited_random,           // shells [j_lo, j_hi], given energy slope
        high_frequency_concentrated,   // nothing below shell j_lo
        low_frequency_dominated,       // nothing at or above shell j_hi
        gaussian_vortex_pair,          // two opposite-signed bumps
        checkpoint,                    // load a saved field
    };
    Kind kind = Kind::band_limited_random;

    int shell = 3;
    int j_lo = 0;
    int j_hi = 3;
    double slope = 0.0;       // d log2 ||Delta_j theta||_2 / dj
    double amplitude = 1.0;   // linear scale applied before normalization

    enum class Norm { none, l2, hs, linf };
    Norm normalize = Norm::none;
    double norm_s = 0.0;      // Sobolev index when normalize == hs
    double norm_value = 1.0;

    double vortex_radius = 0.5;
    double vortex_separation = 2.0;

    std::string checkpoint_path;

    std::vector<std::string> validate(const GridSpec& grid) const;
};

SpectralField generate(const DataRecipe& recipe, const GridSpec& grid, uint64_t seed);

}  // namespace sqg
