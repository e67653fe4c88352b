// Micro-benchmark: serial reference kernels vs the parallel ones shipped in
// the library. Also cross-checks that both produce identical results, since
// the reference implementations exist precisely to pin down the semantics.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <string>

#include "stereogen/evaluation.hpp"
#include "stereogen/fitness.hpp"
#include "stereogen/fuzzy.hpp"
#include "stereogen/genome.hpp"
#include "stereogen/image.hpp"
#include "stereogen/reference.hpp"
#include "stereogen/rng.hpp"

namespace {

using namespace stereogen;

GrayImage random_image(int width, int height, RngStream& rng) {
    GrayImage img(width, height);
    for (auto& p : img.pixels) p = static_cast<std::uint8_t>(rng.next_int(0, 255));
    return img;
}

template <typename F>
double time_ms(int repeats, F&& fn) {
    double best = 1e300;
    for (int i = 0; i < repeats; ++i) {
        const auto start = std::chrono::steady_clock::now();
        fn();
        const double ms =
            std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
        if (ms < best) best = ms;
    }
    return best;
}

void report(const char* name, double ref_ms, double fast_ms, bool agree) {
    std::printf("%-22s %10.2f ms %10.2f ms %8.2fx   %s\n", name, ref_ms, fast_ms, ref_ms / fast_ms,
                agree ? "identical" : "MISMATCH");
    if (!agree) std::exit(1);
}

bool near_equal(double a, double b) {
    return std::abs(a - b) <= 1e-9 * std::max({std::abs(a), std::abs(b), 1.0});
}

} // namespace

int main(int argc, char** argv) {
    int width = 384, height = 288, d_max = 15, repeats = 5;
    if (argc > 1) width = std::atoi(argv[1]);
    if (argc > 2) height = std::atoi(argv[2]);
    if (argc > 3) d_max = std::atoi(argv[3]);
    if (argc > 4) repeats = std::atoi(argv[4]);

    RngStream rng(20260815);
    const GrayImage ref = random_image(width, height, rng);
    const GrayImage tgt = random_image(width, height, rng);
    const StereoPair pair = make_stereo_pair(ref, tgt);
    const Chromosome chrom = random_init(height, width, d_max, rng);
    const MembershipParams params;

    std::printf("image %dx%d, d_max %d, best of %d runs\n\n", width, height, d_max, repeats);
    std::printf("%-22s %13s %13s %9s\n", "kernel", "serial", "parallel", "speedup");

    GradientMap grad_ref, grad_fast;
    const double sobel_ref_ms = time_ms(repeats, [&] { grad_ref = reference::sobel_gradient_norm(ref); });
    const double sobel_fast_ms = time_ms(repeats, [&] { grad_fast = sobel_gradient_norm(ref); });
    report("sobel_gradient_norm", sobel_ref_ms, sobel_fast_ms, grad_ref.norms == grad_fast.norms);

    PossibilityVolume vol_ref, vol_fast;
    const double vol_ref_ms =
        time_ms(repeats, [&] { vol_ref = reference::build_possibility_volume(pair, d_max, params); });
    const double vol_fast_ms =
        time_ms(repeats, [&] { vol_fast = build_possibility_volume(pair, d_max, params); });
    report("possibility_volume", vol_ref_ms, vol_fast_ms, vol_ref.values == vol_fast.values);

    const FitnessContext ctx = make_fitness_context(pair, d_max, params, 1);
    double fit_ref = 0.0, fit_fast = 0.0;
    const double fit_ref_ms = time_ms(repeats, [&] { fit_ref = reference::fitness(chrom, ctx); });
    const double fit_fast_ms = time_ms(repeats, [&] { fit_fast = fitness(chrom, ctx); });
    report("fitness", fit_ref_ms, fit_fast_ms, near_equal(fit_ref, fit_fast));

    Chromosome sad_ref, sad_fast;
    const double sad_ref_ms =
        time_ms(repeats, [&] { sad_ref = reference::sad_block_match(pair, d_max, 3); });
    const double sad_fast_ms = time_ms(repeats, [&] { sad_fast = sad_block_match(pair, d_max, 3); });
    report("sad_block_match", sad_ref_ms, sad_fast_ms, sad_ref.disparities == sad_fast.disparities);

    return 0;
}
