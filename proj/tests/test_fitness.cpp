#include <cmath>
#include <vector>

#include <doctest.h>

#include "stereogen/fitness.hpp"
#include "stereogen/reference.hpp"
#include "support.hpp"

using namespace stereogen;

namespace {

// Brute-force Eq-by-definition scorer, written independently of both library
// implementations: quadruple loop, no sliding windows.
double oracle_fitness(const Chromosome& chrom, const FitnessContext& ctx) {
    const int w = ctx.volume.width;
    const int h = ctx.volume.height;
    const int nr = ctx.neighborhood_radius;
    double total = 0.0;
    for (int r = 0; r < h; ++r) {
        for (int c = 0; c < w; ++c) {
            const int d = chrom.at(r, c);
            const double s = c + d < w ? ctx.ref_grad.at(r, c) * ctx.tgt_grad.at(r, c + d) : 0.0;
            double window = 0.0;
            for (int i = -nr; i <= nr; ++i) {
                for (int j = -nr; j <= nr; ++j) {
                    const int rr = r + i;
                    const int cc = c + j;
                    if (rr < 0 || rr >= h || cc < 0 || cc >= w) continue;
                    window += ctx.volume.at(rr, cc, chrom.at(rr, cc));
                }
            }
            total += s * window;
        }
    }
    return total;
}

bool rel_close(double a, double b, double tol) {
    return std::abs(a - b) <= tol * std::max({std::abs(a), std::abs(b), 1.0});
}

} // namespace

TEST_CASE("gradient weight is the product of the matched norms") {
    FitnessContext ctx;
    ctx.volume.width = 4;
    ctx.volume.height = 2;
    ctx.ref_grad = GradientMap{4, 2, {1, 2, 3, 4, 5, 6, 7, 8}};
    ctx.tgt_grad = GradientMap{4, 2, {10, 20, 30, 40, 50, 60, 70, 80}};
    CHECK(gradient_weight(ctx, 0, 1, 1) == 2.0 * 30.0);
    CHECK(gradient_weight(ctx, 1, 0, 3) == 5.0 * 80.0);
    CHECK(gradient_weight(ctx, 0, 3, 1) == 0.0); // c + d off the right edge
    CHECK(gradient_weight(ctx, 1, 3, 0) == 8.0 * 80.0);
}

TEST_CASE("uniform images give zero fitness for every chromosome") {
    const StereoPair pair = make_stereo_pair(GrayImage(8, 8, 100), GrayImage(8, 8, 100));
    const FitnessContext ctx = make_fitness_context(pair, 3, MembershipParams{}, 1);
    RngStream rng(5);
    for (int trial = 0; trial < 5; ++trial) {
        CHECK(fitness(random_init(8, 8, 3, rng), ctx) == 0.0);
    }
}

TEST_CASE("optimized fitness matches the quadruple-loop oracle") {
    RngStream seeds(2024);
    for (int trial = 0; trial < 40; ++trial) {
        const int w = seeds.next_int(3, 16);
        const int h = seeds.next_int(3, 16);
        const int d_max = seeds.next_int(0, std::min(7, w - 1));
        const int radius = seeds.next_int(0, 2);
        const StereoPair pair = make_stereo_pair(testsup::random_image(w, h, seeds.next_u64()),
                                                 testsup::random_image(w, h, seeds.next_u64()));
        const FitnessContext ctx = make_fitness_context(pair, d_max, MembershipParams{}, radius);
        RngStream rng(seeds.next_u64());
        const Chromosome chrom = random_init(h, w, d_max, rng);
        const double fast = fitness(chrom, ctx);
        const double slow = oracle_fitness(chrom, ctx);
        const double ref = reference::fitness(chrom, ctx);
        REQUIRE(rel_close(fast, slow, 1e-9));
        REQUIRE(rel_close(ref, slow, 1e-12));
        REQUIRE(fast >= 0.0);
    }
}

TEST_CASE("radius 0 reduces to the plain weighted possibility sum") {
    const StereoPair pair = make_stereo_pair(testsup::random_image(9, 7, 1), testsup::random_image(9, 7, 2));
    const FitnessContext ctx = make_fitness_context(pair, 3, MembershipParams{}, 0);
    RngStream rng(3);
    const Chromosome chrom = random_init(7, 9, 3, rng);
    double direct = 0.0;
    for (int r = 0; r < 7; ++r) {
        for (int c = 0; c < 9; ++c) {
            direct += gradient_weight(ctx, r, c, chrom.at(r, c)) * ctx.volume.at(r, c, chrom.at(r, c));
        }
    }
    CHECK(fitness(chrom, ctx) == doctest::Approx(direct).epsilon(1e-12));
}

TEST_CASE("window radius larger than the image still matches the oracle") {
    const StereoPair pair = make_stereo_pair(testsup::random_image(5, 4, 8), testsup::random_image(5, 4, 9));
    const FitnessContext ctx = make_fitness_context(pair, 2, MembershipParams{}, 6);
    RngStream rng(10);
    const Chromosome chrom = random_init(4, 5, 2, rng);
    CHECK(rel_close(fitness(chrom, ctx), oracle_fitness(chrom, ctx), 1e-9));
}

TEST_CASE("fitness is monotone in any single possibility value") {
    const StereoPair pair = make_stereo_pair(testsup::random_image(10, 8, 13),
                                             testsup::random_image(10, 8, 14));
    FitnessContext ctx = make_fitness_context(pair, 4, MembershipParams{}, 1);
    RngStream rng(15);
    const Chromosome chrom = random_init(8, 10, 4, rng);
    const double before = fitness(chrom, ctx);
    for (int trial = 0; trial < 12; ++trial) {
        FitnessContext bumped = ctx;
        const int r = rng.next_int(0, 7);
        const int c = rng.next_int(0, 9);
        const int d = chrom.at(r, c);
        auto& cell = bumped.volume.values[(static_cast<std::size_t>(r) * 10 + c) * 5 + d];
        cell = std::min(1.0, cell + 0.25);
        CHECK(fitness(chrom, bumped) >= before);
    }
}

TEST_CASE("fitness is a pure function") {
    const StereoPair pair = make_stereo_pair(testsup::random_image(33, 21, 17),
                                             testsup::random_image(33, 21, 18));
    const FitnessContext ctx = make_fitness_context(pair, 6, MembershipParams{}, 2);
    RngStream rng(19);
    const Chromosome chrom = random_init(21, 33, 6, rng);
    const double first = fitness(chrom, ctx);
    FitnessWorkspace ws;
    const double with_ws = fitness(chrom, ctx, ws);
    const Chromosome other = random_init(21, 33, 6, rng);
    fitness(other, ctx, ws); // dirty the workspace
    CHECK(fitness(chrom, ctx, ws) == first);
    CHECK(with_ws == first);
}

TEST_CASE("fitness rejects mismatched chromosomes") {
    const StereoPair pair = make_stereo_pair(GrayImage(6, 6, 1), GrayImage(6, 6, 2));
    const FitnessContext ctx = make_fitness_context(pair, 2, MembershipParams{}, 1);
    CHECK_THROWS_AS(fitness(Chromosome(5, 6), ctx), DimensionError);
    CHECK_THROWS_AS(make_fitness_context(pair, 2, MembershipParams{}, -1), ConfigError);
}

TEST_CASE("wide images cross the column-block boundary consistently") {
    const int w = 600, h = 5;
    const StereoPair pair = make_stereo_pair(testsup::random_image(w, h, 23),
                                             testsup::random_image(w, h, 24));
    const FitnessContext ctx = make_fitness_context(pair, 7, MembershipParams{}, 2);
    RngStream rng(25);
    const Chromosome chrom = random_init(h, w, 7, rng);
    CHECK(rel_close(fitness(chrom, ctx), oracle_fitness(chrom, ctx), 1e-9));
}
