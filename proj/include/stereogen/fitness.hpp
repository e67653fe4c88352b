// Gradient-weighted fuzzy fitness: the score the GA maximizes.
//
// F(C) = sum_{r,c} S(r,c) * sum_{(i,j) in N} Pi(r+i, c+j, C(r+i, c+j))
// S(r,c) = |grad_ref(r,c)| * |grad_tgt(r, c+C(r,c))|   (0 when c+C(r,c) is off-image)
//
// The neighborhood sum runs through a separable sliding-window box filter over
// the per-cell possibility plane, so one evaluation is O(R*C) independent of
// the window size. Neighborhood cells outside the image contribute 0.
#pragma once

#include "stereogen/fuzzy.hpp"
#include "stereogen/genome.hpp"
#include "stereogen/image.hpp"

namespace stereogen {

struct FitnessContext {
    PossibilityVolume volume;
    GradientMap ref_grad;
    GradientMap tgt_grad;
    int neighborhood_radius = 1;
};

// Builds volume and both gradient maps for the pair.
FitnessContext make_fitness_context(const StereoPair& pair, int d_max,
                                    const MembershipParams& params, int neighborhood_radius);

// S(r,c) for disparity d.
double gradient_weight(const FitnessContext& ctx, int r, int c, int d);

// Reusable scratch planes; one per worker thread when evaluating individuals
// concurrently.
struct FitnessWorkspace {
    std::vector<double> pi;       // Pi(r,c,C(r,c))
    std::vector<double> weight;   // S(r,c)
    std::vector<double> hsum;     // horizontal window sums of pi
    std::vector<double> box;      // full window sums
    std::vector<double> row_dots; // per-row S.box partial sums
};

// Pure function of (chrom, ctx); parallel passes combine per-row partials in
// row order, so the score is bit-identical for any thread count.
double fitness(const Chromosome& chrom, const FitnessContext& ctx, FitnessWorkspace& ws);
double fitness(const Chromosome& chrom, const FitnessContext& ctx);

} // namespace stereogen
