#include "stereogen/genome.hpp"

#include <algorithm>
#include <string>

namespace stereogen {

Chromosome random_init(int height, int width, int d_max, RngStream& rng) {
    if (d_max < 0) throw ConfigError("d_max must be non-negative");
    if (width <= 0 || height <= 0) throw ConfigError("chromosome dimensions must be positive");
    Chromosome chrom(width, height);
    for (auto& d : chrom.disparities) d = static_cast<disp_t>(rng.next_int(0, d_max));
    return chrom;
}

Chromosome crossover(const Chromosome& a, const Chromosome& b, RngStream& rng) {
    if (a.width != b.width || a.height != b.height) {
        throw DimensionError("crossover parents differ in size");
    }
    if (a.height < 2) return a;
    const int k = rng.next_int(1, a.height - 1);
    Chromosome child(a.width, a.height);
    std::copy_n(a.disparities.begin(), static_cast<std::size_t>(k) * a.width, child.disparities.begin());
    std::copy(b.disparities.begin() + static_cast<std::size_t>(k) * a.width, b.disparities.end(),
              child.disparities.begin() + static_cast<std::size_t>(k) * a.width);
    return child;
}

namespace {

// Cell with the lowest Pi(r,c,C(r,c)), first in row-major order on ties.
std::pair<int, int> lowest_possibility_cell(const Chromosome& c, const PossibilityVolume& vol) {
    int best_r = 0, best_c = 0;
    double best = 2.0;
    for (int r = 0; r < c.height; ++r) {
        const disp_t* row = c.row(r);
        for (int col = 0; col < c.width; ++col) {
            const double p = vol.at(r, col, row[col]);
            if (p < best) {
                best = p;
                best_r = r;
                best_c = col;
            }
        }
    }
    return {best_r, best_c};
}

} // namespace

Chromosome mutate(const Chromosome& c, const PossibilityVolume& vol, double rate,
                  int patch_radius, int d_max, RngStream& rng) {
    if (rate < 0.0 || rate > 1.0) throw ConfigError("mutation rate must be in [0, 1]");
    if (patch_radius < 0) throw ConfigError("patch radius must be non-negative");
    if (c.width != vol.width || c.height != vol.height) {
        throw DimensionError("chromosome and possibility volume differ in size");
    }
    if (rng.next_u01() >= rate) return c;

    const auto [mr, mc] = lowest_possibility_cell(c, vol);
    const disp_t fresh = static_cast<disp_t>(rng.next_int(0, d_max));

    Chromosome out = c;
    const int r0 = std::max(0, mr - patch_radius);
    const int r1 = std::min(c.height - 1, mr + patch_radius);
    const int c0 = std::max(0, mc - patch_radius);
    const int c1 = std::min(c.width - 1, mc + patch_radius);
    for (int r = r0; r <= r1; ++r) {
        std::fill(out.row(r) + c0, out.row(r) + c1 + 1, fresh);
    }
    return out;
}

} // namespace stereogen
