#include <algorithm>
#include <cstdlib>
#include <optional>
#include <vector>

#include <doctest.h>

#include "stereogen/evaluation.hpp"
#include "stereogen/reference.hpp"
#include "support.hpp"

using namespace stereogen;

namespace {

GroundTruth truth_from(const Chromosome& truth, double scale = 1.0) {
    GrayImage img(truth.width, truth.height);
    for (std::size_t i = 0; i < truth.disparities.size(); ++i) {
        img.pixels[i] = static_cast<std::uint8_t>(truth.disparities[i] * scale);
    }
    return GroundTruth{std::move(img), scale, std::nullopt};
}

} // namespace

TEST_CASE("exact estimate scores zero") {
    RngStream rng(1);
    const Chromosome est = random_init(6, 9, 7, rng);
    const EvalReport report = bad_pixel_rate(est, truth_from(est), 1.0);
    CHECK(report.bad_pixel_rate == 0.0);
    CHECK(report.evaluated_pixels == 54);
    CHECK(report.threshold == 1.0);
}

TEST_CASE("uniform offset of 2 makes every pixel bad at threshold 1") {
    const Chromosome est(8, 5, 3);
    const Chromosome gt(8, 5, 5);
    CHECK(bad_pixel_rate(est, truth_from(gt), 1.0).bad_pixel_rate == 1.0);
    // An offset of exactly 1 is not "greater than" the threshold.
    const Chromosome gt1(8, 5, 4);
    CHECK(bad_pixel_rate(est, truth_from(gt1), 1.0).bad_pixel_rate == 0.0);
}

TEST_CASE("fractional ground truth: errors {0,1,1.5,3} at threshold 1") {
    // Stored values {0,2,3,6} at scale 2 give true disparities {0,1,1.5,3}.
    Chromosome est(4, 1, 0);
    GrayImage raw(4, 1);
    raw.pixels = {0, 2, 3, 6};
    const GroundTruth gt{raw, 2.0, std::nullopt};
    const EvalReport report = bad_pixel_rate(est, gt, 1.0);
    CHECK(report.bad_pixel_rate == 0.5);
    CHECK(report.evaluated_pixels == 4);
}

TEST_CASE("unknown-valued pixels are excluded") {
    Chromosome est(4, 1, 0);
    GrayImage raw(4, 1);
    raw.pixels = {0, 9, 255, 9};
    GroundTruth gt{raw, 1.0, 255};
    const EvalReport report = bad_pixel_rate(est, gt, 1.0);
    CHECK(report.evaluated_pixels == 3);
    CHECK(report.bad_pixel_rate == doctest::Approx(2.0 / 3.0).epsilon(1e-12));

    gt.unknown_value = std::nullopt;
    CHECK(bad_pixel_rate(est, gt, 1.0).evaluated_pixels == 4);

    GrayImage all_unknown(4, 1, 255);
    CHECK_THROWS_AS(bad_pixel_rate(est, GroundTruth{all_unknown, 1.0, 255}, 1.0), ConfigError);
}

TEST_CASE("rate is invariant under a common shift") {
    RngStream rng(7);
    const Chromosome est = random_init(5, 8, 4, rng);
    const Chromosome gt = random_init(5, 8, 4, rng);
    const double base = bad_pixel_rate(est, truth_from(gt), 1.0).bad_pixel_rate;
    Chromosome est_shift = est;
    Chromosome gt_shift = gt;
    for (auto& d : est_shift.disparities) d = static_cast<disp_t>(d + 10);
    for (auto& d : gt_shift.disparities) d = static_cast<disp_t>(d + 10);
    CHECK(bad_pixel_rate(est_shift, truth_from(gt_shift), 1.0).bad_pixel_rate == base);
}

TEST_CASE("evaluation rejects bad inputs") {
    const Chromosome est(4, 4, 0);
    CHECK_THROWS_AS(bad_pixel_rate(est, truth_from(Chromosome(5, 4, 0)), 1.0), DimensionError);
    GroundTruth gt = truth_from(Chromosome(4, 4, 0));
    gt.scale = 0.0;
    CHECK_THROWS_AS(bad_pixel_rate(est, gt, 1.0), ConfigError);
}

TEST_CASE("report serializes as one CSV line") {
    const EvalReport report{0.5, 4, 1.0};
    CHECK(report.to_csv() == "0.500000,4,1");
    const EvalReport fine{1.0 / 3.0, 300, 0.5};
    CHECK(fine.to_csv() == "0.333333,300,0.5");
}

TEST_CASE("SAD on identical images is all zero") {
    const GrayImage img = testsup::random_image(14, 10, 21);
    const Chromosome map = sad_block_match(make_stereo_pair(img, img), 5, 2);
    for (disp_t d : map.disparities) CHECK(d == 0);
}

TEST_CASE("SAD recovers a uniform shift on interior pixels") {
    // Uniform disparity 3 everywhere (clipped at the right edge by
    // construction), so interior windows match exactly at d = 3.
    const int w = 24, h = 12;
    const stereogen::GrayImage target = testsup::random_image(w, h, 500);
    stereogen::GrayImage reference(w, h);
    stereogen::Chromosome truth(w, h);
    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
            const int d = std::min(3, w - 1 - c);
            truth.at(r, c) = static_cast<disp_t>(d);
            reference.at(r, c) = target.at(r, c + d);
        }
    }
    const Chromosome map = sad_block_match(make_stereo_pair(reference, target), 5, 2);
    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w - 6; ++c) { // clear of the clipped right band
            REQUIRE(map.at(r, c) == 3);
        }
    }
}

TEST_CASE("SAD equals a per-pixel exhaustive search") {
    const StereoPair pair = make_stereo_pair(testsup::random_image(13, 9, 61),
                                             testsup::random_image(13, 9, 62));
    const int d_max = 4, wr = 1;
    const Chromosome map = sad_block_match(pair, d_max, wr);
    const int w = 13, h = 9;
    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
            int best_d = 0;
            long best_cost = -1;
            for (int d = 0; d <= d_max; ++d) {
                long cost = 0;
                for (int i = -wr; i <= wr; ++i) {
                    for (int j = -wr; j <= wr; ++j) {
                        const int rr = std::clamp(r + i, 0, h - 1);
                        const int rc = std::clamp(c + j, 0, w - 1);
                        const int tc = std::min(rc + d, w - 1);
                        cost += std::abs(static_cast<int>(pair.reference.at(rr, rc)) -
                                         static_cast<int>(pair.target.at(rr, tc)));
                    }
                }
                if (best_cost < 0 || cost < best_cost) {
                    best_cost = cost;
                    best_d = d;
                }
            }
            REQUIRE(map.at(r, c) == best_d);
        }
    }
}

TEST_CASE("SAD agrees with the serial reference and respects the range") {
    const StereoPair pair = make_stereo_pair(testsup::random_image(31, 17, 71),
                                             testsup::random_image(31, 17, 72));
    const Chromosome fast = sad_block_match(pair, 7, 3);
    const Chromosome slow = reference::sad_block_match(pair, 7, 3);
    CHECK(fast == slow);
    for (disp_t d : fast.disparities) CHECK(d <= 7);
}

TEST_CASE("SAD rejects an out-of-range search") {
    const StereoPair pair = make_stereo_pair(GrayImage(6, 4), GrayImage(6, 4));
    CHECK_THROWS_AS(sad_block_match(pair, 6, 1), ConfigError);
    CHECK_THROWS_AS(sad_block_match(pair, 2, -1), ConfigError);
}
