#include "stereogen/fuzzy.hpp"

#include <cmath>

namespace stereogen {

std::array<double, 3> membership(int intensity, const MembershipParams& params) {
    std::array<double, 3> degrees;
    for (int k = 0; k < 3; ++k) {
        const double dist = intensity - params.centers[k];
        degrees[k] = std::exp(-(dist * dist) / (2.0 * params.sigmas[k] * params.sigmas[k]));
    }
    return degrees;
}

double matching_possibility(int i1, int i2, const MembershipParams& params) {
    const auto m1 = membership(i1, params);
    const auto m2 = membership(i2, params);
    double best = 0.0;
    for (int k = 0; k < 3; ++k) {
        const double m = m1[k] < m2[k] ? m1[k] : m2[k];
        if (m > best) best = m;
    }
    return best;
}

MembershipTable MembershipTable::build(const MembershipParams& params) {
    params.validate();
    MembershipTable table;
    for (int i = 0; i < 256; ++i) {
        const auto degrees = membership(i, params);
        for (int k = 0; k < 3; ++k) table.mu[k][i] = degrees[k];
    }
    return table;
}

PossibilityVolume build_possibility_volume(const StereoPair& pair, int d_max,
                                           const MembershipParams& params) {
    if (d_max < 0 || d_max >= pair.target.width) {
        throw ConfigError("d_max " + std::to_string(d_max) + " out of range for target width " +
                          std::to_string(pair.target.width));
    }
    const MembershipTable table = MembershipTable::build(params);

    PossibilityVolume vol;
    vol.width = pair.reference.width;
    vol.height = pair.reference.height;
    vol.d_max = d_max;
    vol.values.resize(static_cast<std::size_t>(vol.width) * vol.height * (d_max + 1));

    const int w = vol.width;
    const int slots = d_max + 1;
#pragma omp parallel for schedule(static)
    for (int r = 0; r < vol.height; ++r) {
        const std::uint8_t* ref_row = pair.reference.row(r);
        const std::uint8_t* tgt_row = pair.target.row(r);
        double* out = vol.values.data() + static_cast<std::size_t>(r) * w * slots;
        for (int c = 0; c < w; ++c) {
            for (int d = 0; d < slots; ++d) {
                out[c * slots + d] = c + d < w ? table.possibility(ref_row[c], tgt_row[c + d]) : 0.0;
            }
        }
    }
    return vol;
}

} // namespace stereogen
