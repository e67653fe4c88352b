// Grey-class memberships and the fuzzy matching-possibility metric, plus the
// precomputed possibility volume over the disparity search range.
#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "stereogen/errors.hpp"
#include "stereogen/image.hpp"

namespace stereogen {

// Gaussian grey classes: black, average, white.
struct MembershipParams {
    std::array<double, 3> centers{0.0, 127.5, 255.0};
    std::array<double, 3> sigmas{42.5, 42.5, 42.5};

    void validate() const {
        for (double s : sigmas) {
            if (!(s > 0.0)) throw ConfigError("membership sigma must be positive");
        }
    }
};

// Degrees of membership of one intensity to the three grey classes.
std::array<double, 3> membership(int intensity, const MembershipParams& params);

// Co-membership to a same grey class: max over classes of min of the two degrees.
double matching_possibility(int i1, int i2, const MembershipParams& params);

// Per-class lookup over the 256 possible intensities; the volume hot loop is
// table lookups and min/max only.
struct MembershipTable {
    std::array<std::array<double, 256>, 3> mu{};

    static MembershipTable build(const MembershipParams& params);

    double possibility(std::uint8_t a, std::uint8_t b) const {
        double best = 0.0;
        for (int k = 0; k < 3; ++k) {
            const double m = mu[k][a] < mu[k][b] ? mu[k][a] : mu[k][b];
            if (m > best) best = m;
        }
        return best;
    }
};

// Pi(r,c,d) for d in [0, d_max]; 0 marks pairings whose target column c+d
// falls outside the image.
struct PossibilityVolume {
    int width = 0;
    int height = 0;
    int d_max = 0;
    std::vector<double> values; // (r * width + c) * (d_max + 1) + d

    double at(int r, int c, int d) const {
        return values[(static_cast<std::size_t>(r) * width + c) * (d_max + 1) + d];
    }
};

// Requires 0 <= d_max < target width. Row-parallel; bit-identical for any
// thread count.
PossibilityVolume build_possibility_volume(const StereoPair& pair, int d_max,
                                           const MembershipParams& params);

} // namespace stereogen
