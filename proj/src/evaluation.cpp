#include "stereogen/evaluation.hpp"

#include <algorithm>
#include <climits>
#include <cmath>
#include <cstdio>
#include <vector>

namespace stereogen {

std::string EvalReport::to_csv() const {
    char buf[96];
    std::snprintf(buf, sizeof buf, "%.6f,%ld,%g", bad_pixel_rate, evaluated_pixels, threshold);
    return buf;
}

EvalReport bad_pixel_rate(const Chromosome& est, const GroundTruth& gt, double threshold) {
    if (est.width != gt.map.width || est.height != gt.map.height) {
        throw DimensionError("estimate and ground truth differ in size");
    }
    if (!(gt.scale > 0.0)) throw ConfigError("ground-truth scale must be positive");

    long known = 0;
    long bad = 0;
    for (int r = 0; r < est.height; ++r) {
        const std::uint8_t* gt_row = gt.map.row(r);
        const disp_t* est_row = est.row(r);
        for (int c = 0; c < est.width; ++c) {
            if (gt.unknown_value && gt_row[c] == *gt.unknown_value) continue;
            ++known;
            const double truth = gt_row[c] / gt.scale;
            if (std::abs(est_row[c] - truth) > threshold) ++bad;
        }
    }
    if (known == 0) throw ConfigError("ground truth has no known pixels");
    return EvalReport{static_cast<double>(bad) / static_cast<double>(known), known, threshold};
}

Chromosome sad_block_match(const StereoPair& pair, int d_max, int window_radius) {
    const int w = pair.reference.width;
    const int h = pair.reference.height;
    if (d_max < 0 || d_max >= w) {
        throw ConfigError("d_max " + std::to_string(d_max) + " out of range for width " + std::to_string(w));
    }
    if (window_radius < 0) throw ConfigError("window radius must be non-negative");

    // Integer cost volume, one disparity plane at a time: absolute differences,
    // then a separable sliding-window sum with clamped (edge-replicating)
    // indices, then a running winner-take-all update.
    const std::size_t plane = static_cast<std::size_t>(w) * h;
    std::vector<int> ad(plane), hsum(plane), cost(plane);
    std::vector<int> best_cost(plane, INT_MAX);
    Chromosome out(w, h, 0);

    const int wr = window_radius;
    for (int d = 0; d <= d_max; ++d) {
#pragma omp parallel for schedule(static)
        for (int r = 0; r < h; ++r) {
            const std::uint8_t* ref_row = pair.reference.row(r);
            const std::uint8_t* tgt_row = pair.target.row(r);
            int* ad_row = ad.data() + static_cast<std::size_t>(r) * w;
            for (int c = 0; c < w; ++c) {
                const int tc = std::min(c + d, w - 1);
                ad_row[c] = std::abs(static_cast<int>(ref_row[c]) - static_cast<int>(tgt_row[tc]));
            }
            // Horizontal clamped window: position j maps to column clamp(c+j).
            int* hs = hsum.data() + static_cast<std::size_t>(r) * w;
            int run = 0;
            for (int j = -wr; j <= wr; ++j) run += ad_row[std::clamp(j, 0, w - 1)];
            hs[0] = run;
            for (int c = 1; c < w; ++c) {
                run += ad_row[std::clamp(c + wr, 0, w - 1)];
                run -= ad_row[std::clamp(c - 1 - wr, 0, w - 1)];
                hs[c] = run;
            }
        }
#pragma omp parallel for schedule(static)
        for (int c = 0; c < w; ++c) {
            int run = 0;
            for (int j = -wr; j <= wr; ++j) {
                run += hsum[static_cast<std::size_t>(std::clamp(j, 0, h - 1)) * w + c];
            }
            cost[c] = run;
            for (int r = 1; r < h; ++r) {
                run += hsum[static_cast<std::size_t>(std::clamp(r + wr, 0, h - 1)) * w + c];
                run -= hsum[static_cast<std::size_t>(std::clamp(r - 1 - wr, 0, h - 1)) * w + c];
                cost[static_cast<std::size_t>(r) * w + c] = run;
            }
        }
#pragma omp parallel for schedule(static)
        for (int r = 0; r < h; ++r) {
            const int* cost_row = cost.data() + static_cast<std::size_t>(r) * w;
            int* best_row = best_cost.data() + static_cast<std::size_t>(r) * w;
            disp_t* out_row = out.row(r);
            for (int c = 0; c < w; ++c) {
                if (cost_row[c] < best_row[c]) { // strict: ties keep the smaller d
                    best_row[c] = cost_row[c];
                    out_row[c] = static_cast<disp_t>(d);
                }
            }
        }
    }
    return out;
}

} // namespace stereogen
