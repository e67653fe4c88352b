// Shared fixtures for the test binaries: deterministic random rasters and
// random-dot stereograms with exact ground truth.
#pragma once

#include <algorithm>
#include <cstdint>

#include "stereogen/genome.hpp"
#include "stereogen/image.hpp"
#include "stereogen/rng.hpp"

namespace testsup {

inline stereogen::GrayImage random_image(int width, int height, std::uint64_t seed) {
    stereogen::RngStream rng(seed);
    stereogen::GrayImage img(width, height);
    for (auto& p : img.pixels) p = static_cast<std::uint8_t>(rng.next_int(0, 255));
    return img;
}

struct Scene {
    stereogen::StereoPair pair;
    stereogen::Chromosome truth;
};

// Random-dot stereogram: the target is noise; the reference is the target
// resampled through a block disparity map (a centered square at `block_disp`
// over a zero background), so the stored map reproduces the pair exactly.
// Disparities are clamped near the right edge to keep every pairing on-image.
inline Scene make_block_scene(int width, int height, int block_disp, int block_size,
                              std::uint64_t seed) {
    stereogen::GrayImage target = random_image(width, height, seed);
    stereogen::Chromosome truth(width, height);
    const int r0 = (height - block_size) / 2;
    const int c0 = (width - block_size) / 2;
    for (int r = 0; r < height; ++r) {
        for (int c = 0; c < width; ++c) {
            const bool inside =
                r >= r0 && r < r0 + block_size && c >= c0 && c < c0 + block_size;
            const int d = std::min(inside ? block_disp : 0, width - 1 - c);
            truth.at(r, c) = static_cast<stereogen::disp_t>(d);
        }
    }
    stereogen::GrayImage reference(width, height);
    for (int r = 0; r < height; ++r) {
        for (int c = 0; c < width; ++c) {
            reference.at(r, c) = target.at(r, c + truth.at(r, c));
        }
    }
    return {stereogen::make_stereo_pair(std::move(reference), std::move(target)), std::move(truth)};
}

inline stereogen::GrayImage truth_image(const stereogen::Chromosome& truth) {
    stereogen::GrayImage img(truth.width, truth.height);
    for (std::size_t i = 0; i < truth.disparities.size(); ++i) {
        img.pixels[i] = static_cast<std::uint8_t>(truth.disparities[i]);
    }
    return img;
}

} // namespace testsup
