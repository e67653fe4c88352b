// Serial reference implementations of the parallel kernels. Straight loops,
// no windowing tricks, no threads; the test suites and the benchmark compare
// the optimized kernels against these. Not linked into the CLI.
#pragma once

#include "stereogen/fitness.hpp"
#include "stereogen/fuzzy.hpp"
#include "stereogen/genome.hpp"
#include "stereogen/image.hpp"

namespace stereogen::reference {

// Direct 3x3 convolution per pixel, edge-replicated.
GradientMap sobel_gradient_norm(const GrayImage& img);

// One matching_possibility call per cell.
PossibilityVolume build_possibility_volume(const StereoPair& pair, int d_max,
                                           const MembershipParams& params);

// Literal quadruple loop over pixels and neighborhood offsets.
double fitness(const Chromosome& chrom, const FitnessContext& ctx);

// Full SAD re-computation per pixel and disparity.
Chromosome sad_block_match(const StereoPair& pair, int d_max, int window_radius);

} // namespace stereogen::reference
