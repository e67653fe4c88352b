// Bad-pixel scoring against ground truth, and the SAD block-matching baseline.
#pragma once

#include <optional>
#include <string>

#include "stereogen/genome.hpp"
#include "stereogen/image.hpp"

namespace stereogen {

// Stored ground-truth rasters hold disparity * scale; unknown_value, when set,
// marks pixels without ground truth (excluded from the statistics).
struct GroundTruth {
    GrayImage map;
    double scale = 1.0;
    std::optional<int> unknown_value;
};

struct EvalReport {
    double bad_pixel_rate = 0.0;
    long evaluated_pixels = 0;
    double threshold = 1.0;

    std::string to_csv() const; // single line: bad_pixel_rate,evaluated_pixels,threshold
};

// Fraction of known-ground-truth pixels with |est - gt/scale| strictly greater
// than the threshold. Throws if no pixel has known ground truth.
EvalReport bad_pixel_rate(const Chromosome& est, const GroundTruth& gt, double threshold = 1.0);

// Winner-take-all disparity minimizing the window SAD, windows edge-replicated,
// ties broken toward the smaller disparity. Requires d_max < width.
Chromosome sad_block_match(const StereoPair& pair, int d_max, int window_radius);

} // namespace stereogen
