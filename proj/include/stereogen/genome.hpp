// Chromosome = one full disparity map; genetic operators over it.
#pragma once

#include <cstdint>
#include <vector>

#include "stereogen/errors.hpp"
#include "stereogen/fuzzy.hpp"
#include "stereogen/rng.hpp"

namespace stereogen {

using disp_t = std::uint16_t;

struct Chromosome {
    int width = 0;
    int height = 0;
    std::vector<disp_t> disparities; // row-major, each in [0, d_max]

    Chromosome() = default;
    Chromosome(int w, int h, disp_t fill = 0)
        : width(w), height(h), disparities(static_cast<std::size_t>(w) * static_cast<std::size_t>(h), fill) {}

    disp_t at(int r, int c) const { return disparities[static_cast<std::size_t>(r) * width + c]; }
    disp_t& at(int r, int c) { return disparities[static_cast<std::size_t>(r) * width + c]; }
    const disp_t* row(int r) const { return disparities.data() + static_cast<std::size_t>(r) * width; }
    disp_t* row(int r) { return disparities.data() + static_cast<std::size_t>(r) * width; }

    bool operator==(const Chromosome& other) const = default;
};

// Every cell independently uniform on [0, d_max].
Chromosome random_init(int height, int width, int d_max, RngStream& rng);

// Single horizontal split: rows [0, k) from a, rows [k, R) from b, with k
// uniform on {1, ..., R-1} so both parents contribute.
Chromosome crossover(const Chromosome& a, const Chromosome& b, RngStream& rng);

// With probability `rate`, rewrites the square patch centered on the cell with
// the lowest current possibility (ties: row-major order) with one fresh uniform
// disparity; otherwise returns the input unchanged. Patch is clipped at borders.
Chromosome mutate(const Chromosome& c, const PossibilityVolume& vol, double rate,
                  int patch_radius, int d_max, RngStream& rng);

} // namespace stereogen
