// Generational loop: random population, crossover + mutation offspring,
// elitist rank selection, stagnation stop.
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "stereogen/fitness.hpp"
#include "stereogen/genome.hpp"
#include "stereogen/image.hpp"
#include "stereogen/rng.hpp"

namespace stereogen {

struct GaConfig {
    int population_size = 70;     // mu
    int offspring_count = 0;      // lambda; 0 means "same as population_size"
    int max_generations = 100;
    double mutation_rate = 0.40;  // per offspring
    double elite_fraction = 0.40; // deterministically retained
    int neighborhood_radius = 1;
    int mutation_patch_radius = 1;
    int d_max = 0;
    double sigma = 42.5;
    std::uint64_t seed = 1;
    int stagnation_window = 15;
    double stagnation_epsilon = 1e-4; // 0 disables the stagnation stop

    int resolved_offspring_count() const {
        return offspring_count > 0 ? offspring_count : population_size;
    }
    MembershipParams membership_params() const {
        MembershipParams p;
        p.sigmas = {sigma, sigma, sigma};
        return p;
    }
    void validate() const;
};

struct GenerationStats {
    int generation = 0;
    double best_fitness = 0.0;
    double mean_fitness = 0.0;
    double millis = 0.0;
};

struct EvolutionLog {
    std::vector<GenerationStats> generations;

    // Header row plus one row per generation. The millis column is written as 0
    // unless `with_timing` (wall time is not a function of the seed; outputs
    // stay byte-reproducible by default).
    std::string to_csv(bool with_timing = false) const;
};

struct Individual {
    Chromosome chromosome;
    double fitness = 0.0;
};

// Linear rank rule: p = (rank_index + 1) / total, rank_index 0-based from worst.
double rank_survival_probability(int rank_index_from_worst, int total);

// One generation: lambda children from rank-weighted parent pairs (crossover
// then mutation), evaluated, then elitist carry-over plus rank-based survival
// sampling from the remaining parents and children until size mu.
// Child randomness comes from rng.fork(1 + child_index); the sampling draws
// consume rng itself.
std::vector<Individual> step(const std::vector<Individual>& population, const FitnessContext& ctx,
                             const GaConfig& config, RngStream& rng);

struct EvolveResult {
    Chromosome best;
    double best_fitness = 0.0;
    EvolutionLog log;
};

// Full run. Deterministic for a fixed (seed, config, images), independent of
// evaluation parallelism.
EvolveResult evolve(const StereoPair& pair, const GaConfig& config);

} // namespace stereogen
