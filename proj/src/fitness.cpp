#include "stereogen/fitness.hpp"

#include <algorithm>
#include <string>

namespace stereogen {

FitnessContext make_fitness_context(const StereoPair& pair, int d_max,
                                    const MembershipParams& params, int neighborhood_radius) {
    if (neighborhood_radius < 0) throw ConfigError("neighborhood radius must be non-negative");
    FitnessContext ctx;
    ctx.volume = build_possibility_volume(pair, d_max, params);
    ctx.ref_grad = sobel_gradient_norm(pair.reference);
    ctx.tgt_grad = sobel_gradient_norm(pair.target);
    ctx.neighborhood_radius = neighborhood_radius;
    return ctx;
}

double gradient_weight(const FitnessContext& ctx, int r, int c, int d) {
    const int tc = c + d;
    if (tc >= ctx.tgt_grad.width) return 0.0;
    return ctx.ref_grad.at(r, c) * ctx.tgt_grad.at(r, tc);
}

namespace {

// Columns are processed in fixed-width blocks so the running vertical sums are
// a per-column sequence independent of the thread count.
constexpr int kColumnBlock = 256;

} // namespace

double fitness(const Chromosome& chrom, const FitnessContext& ctx, FitnessWorkspace& ws) {
    const int w = ctx.volume.width;
    const int h = ctx.volume.height;
    const int nr = ctx.neighborhood_radius;
    if (chrom.width != w || chrom.height != h) {
        throw DimensionError("chromosome size " + std::to_string(chrom.width) + "x" +
                             std::to_string(chrom.height) + " does not match context " +
                             std::to_string(w) + "x" + std::to_string(h));
    }

    const std::size_t plane = static_cast<std::size_t>(w) * h;
    ws.pi.resize(plane);
    ws.weight.resize(plane);
    ws.hsum.resize(plane);
    ws.box.resize(plane);
    ws.row_dots.assign(h, 0.0);

    const int slots = ctx.volume.d_max + 1;

    // Per-cell possibility and gradient weight, then the horizontal window sum
    // as a running sum along each row (cells off-image contribute 0).
#pragma omp parallel for schedule(static)
    for (int r = 0; r < h; ++r) {
        const disp_t* drow = chrom.row(r);
        const double* vrow = ctx.volume.values.data() + static_cast<std::size_t>(r) * w * slots;
        const double* gref = ctx.ref_grad.row(r);
        const double* gtgt = ctx.tgt_grad.row(r);
        double* pi = ws.pi.data() + static_cast<std::size_t>(r) * w;
        double* wt = ws.weight.data() + static_cast<std::size_t>(r) * w;
        for (int c = 0; c < w; ++c) {
            const int d = drow[c];
            pi[c] = vrow[c * slots + d];
            wt[c] = c + d < w ? gref[c] * gtgt[c + d] : 0.0;
        }
        double* hs = ws.hsum.data() + static_cast<std::size_t>(r) * w;
        double run = 0.0;
        for (int c = 0; c <= std::min(nr, w - 1); ++c) run += pi[c];
        hs[0] = run;
        for (int c = 1; c < w; ++c) {
            if (c + nr < w) run += pi[c + nr];
            if (c - nr - 1 >= 0) run -= pi[c - nr - 1];
            hs[c] = run;
        }
    }

    // Vertical running sums per column, in fixed column blocks.
    const int nblocks = (w + kColumnBlock - 1) / kColumnBlock;
#pragma omp parallel for schedule(static)
    for (int b = 0; b < nblocks; ++b) {
        const int c0 = b * kColumnBlock;
        const int c1 = std::min(w, c0 + kColumnBlock);
        double colsum[kColumnBlock] = {0.0};
        for (int r = 0; r <= std::min(nr, h - 1); ++r) {
            const double* hs = ws.hsum.data() + static_cast<std::size_t>(r) * w;
            for (int c = c0; c < c1; ++c) colsum[c - c0] += hs[c];
        }
        for (int r = 0; r < h; ++r) {
            if (r > 0) {
                if (r + nr < h) {
                    const double* add = ws.hsum.data() + static_cast<std::size_t>(r + nr) * w;
                    for (int c = c0; c < c1; ++c) colsum[c - c0] += add[c];
                }
                if (r - nr - 1 >= 0) {
                    const double* sub = ws.hsum.data() + static_cast<std::size_t>(r - nr - 1) * w;
                    for (int c = c0; c < c1; ++c) colsum[c - c0] -= sub[c];
                }
            }
            double* box = ws.box.data() + static_cast<std::size_t>(r) * w;
            for (int c = c0; c < c1; ++c) box[c] = colsum[c - c0];
        }
    }

    // Weighted accumulation; per-row partials are combined in row order so the
    // total does not depend on the parallel schedule.
#pragma omp parallel for schedule(static)
    for (int r = 0; r < h; ++r) {
        const double* wt = ws.weight.data() + static_cast<std::size_t>(r) * w;
        const double* box = ws.box.data() + static_cast<std::size_t>(r) * w;
        double dot = 0.0;
        for (int c = 0; c < w; ++c) dot += wt[c] * box[c];
        ws.row_dots[r] = dot;
    }

    double total = 0.0;
    for (int r = 0; r < h; ++r) total += ws.row_dots[r];
    return total;
}

double fitness(const Chromosome& chrom, const FitnessContext& ctx) {
    FitnessWorkspace ws;
    return fitness(chrom, ctx, ws);
}

} // namespace stereogen
