#include "stereogen/evolution.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numeric>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace stereogen {

void GaConfig::validate() const {
    if (population_size < 2) throw ConfigError("population size must be at least 2");
    if (offspring_count < 0) throw ConfigError("offspring count must be non-negative");
    if (max_generations < 0) throw ConfigError("max generations must be non-negative");
    if (mutation_rate < 0.0 || mutation_rate > 1.0) throw ConfigError("mutation rate must be in [0, 1]");
    if (!(elite_fraction > 0.0) || elite_fraction > 1.0) throw ConfigError("elite fraction must be in (0, 1]");
    if (neighborhood_radius < 0) throw ConfigError("neighborhood radius must be non-negative");
    if (mutation_patch_radius < 0) throw ConfigError("mutation patch radius must be non-negative");
    if (d_max < 0) throw ConfigError("d_max must be non-negative");
    if (!(sigma > 0.0)) throw ConfigError("sigma must be positive");
    if (stagnation_window < 1) throw ConfigError("stagnation window must be at least 1");
    if (stagnation_epsilon < 0.0) throw ConfigError("stagnation epsilon must be non-negative");
}

double rank_survival_probability(int rank_index_from_worst, int total) {
    return static_cast<double>(rank_index_from_worst + 1) / static_cast<double>(total);
}

namespace {

// Best first; stable so ties keep construction order.
void sort_by_fitness(std::vector<Individual>& pop) {
    std::stable_sort(pop.begin(), pop.end(),
                     [](const Individual& a, const Individual& b) { return a.fitness > b.fitness; });
}

// Rank-weighted draw over a population sorted best-first: index q gets weight
// mu - q (the linear rank weight counted from the worst).
int draw_rank_weighted(int mu, RngStream& rng) {
    const int total = mu * (mu + 1) / 2;
    int v = rng.next_int(0, total - 1);
    for (int q = 0; q < mu; ++q) {
        v -= mu - q;
        if (v < 0) return q;
    }
    return mu - 1;
}

int elite_count(const GaConfig& config) {
    const int mu = config.population_size;
    const int e = static_cast<int>(std::ceil(config.elite_fraction * mu));
    return std::clamp(e, 1, mu);
}

struct WorkspacePool {
    std::vector<FitnessWorkspace> slots;

    WorkspacePool() {
#ifdef _OPENMP
        slots.resize(omp_get_max_threads());
#else
        slots.resize(1);
#endif
    }
    FitnessWorkspace& mine() {
#ifdef _OPENMP
        return slots[omp_get_thread_num()];
#else
        return slots[0];
#endif
    }
};

std::vector<Individual> make_children(const std::vector<Individual>& sorted, const FitnessContext& ctx,
                                      const GaConfig& config, const RngStream& base) {
    const int mu = static_cast<int>(sorted.size());
    const int lambda = config.resolved_offspring_count();
    std::vector<Individual> children(lambda);
    WorkspacePool pool;
#pragma omp parallel for schedule(dynamic)
    for (int i = 0; i < lambda; ++i) {
        RngStream rng = base.fork(1 + static_cast<std::uint64_t>(i));
        const int qa = draw_rank_weighted(mu, rng);
        int qb = qa;
        while (qb == qa) qb = draw_rank_weighted(mu, rng);
        Chromosome child = crossover(sorted[qa].chromosome, sorted[qb].chromosome, rng);
        child = mutate(child, ctx.volume, config.mutation_rate, config.mutation_patch_radius,
                       config.d_max, rng);
        const double f = fitness(child, ctx, pool.mine());
        children[i] = Individual{std::move(child), f};
    }
    return children;
}

} // namespace

std::vector<Individual> step(const std::vector<Individual>& population, const FitnessContext& ctx,
                             const GaConfig& config, RngStream& rng) {
    config.validate();
    const int mu = config.population_size;
    if (static_cast<int>(population.size()) != mu) {
        throw ConfigError("population size does not match config");
    }

    std::vector<Individual> sorted = population;
    sort_by_fitness(sorted);

    std::vector<Individual> children = make_children(sorted, ctx, config, rng);

    const int elites = elite_count(config);
    std::vector<Individual> next(sorted.begin(), sorted.begin() + elites);

    // Survival pool: non-elite parents plus all children, ranked together.
    std::vector<Individual> pool(sorted.begin() + elites, sorted.end());
    pool.insert(pool.end(), std::make_move_iterator(children.begin()),
                std::make_move_iterator(children.end()));
    sort_by_fitness(pool);

    // Rank-based survival sampling: walk best-to-worst, keep an individual when
    // a uniform draw falls below its rank probability; repeat passes over the
    // remainder until the population is full. The best remaining candidate has
    // probability 1, so every pass makes progress.
    std::vector<char> taken(pool.size(), 0);
    int remaining = static_cast<int>(pool.size());
    while (static_cast<int>(next.size()) < mu) {
        int rank = 0;
        for (std::size_t q = 0; q < pool.size() && static_cast<int>(next.size()) < mu; ++q) {
            if (taken[q]) continue;
            const double p = rank_survival_probability(remaining - 1 - rank, remaining);
            ++rank;
            if (rng.next_u01() < p) {
                next.push_back(pool[q]);
                taken[q] = 1;
            }
        }
        remaining = static_cast<int>(pool.size()) - (static_cast<int>(next.size()) - elites);
    }
    return next;
}

EvolveResult evolve(const StereoPair& pair, const GaConfig& config) {
    config.validate();
    if (config.d_max >= pair.target.width) {
        throw ConfigError("d_max must be smaller than the image width");
    }

    const FitnessContext ctx =
        make_fitness_context(pair, config.d_max, config.membership_params(), config.neighborhood_radius);

    const RngStream master(config.seed);
    const int mu = config.population_size;

    using clock = std::chrono::steady_clock;
    auto gen_start = clock::now();

    // Generation 0: uniform random individuals.
    std::vector<Individual> population(mu);
    const RngStream init_base = master.fork(0);
    {
        WorkspacePool pool;
#pragma omp parallel for schedule(dynamic)
        for (int i = 0; i < mu; ++i) {
            RngStream rng = init_base.fork(1 + static_cast<std::uint64_t>(i));
            Chromosome chrom = random_init(pair.reference.height, pair.reference.width, config.d_max, rng);
            const double f = fitness(chrom, ctx, pool.mine());
            population[i] = Individual{std::move(chrom), f};
        }
    }

    EvolveResult result;
    result.best_fitness = -1.0;
    EvolutionLog& log = result.log;

    auto record = [&](int gen) {
        double best = population[0].fitness;
        double sum = 0.0;
        int best_idx = 0;
        for (int i = 0; i < mu; ++i) {
            sum += population[i].fitness;
            if (population[i].fitness > best) {
                best = population[i].fitness;
                best_idx = i;
            }
        }
        if (best > result.best_fitness) {
            result.best_fitness = best;
            result.best = population[best_idx].chromosome;
        }
        const double ms = std::chrono::duration<double, std::milli>(clock::now() - gen_start).count();
        gen_start = clock::now();
        // The log records the population best, not the running maximum; its
        // monotonicity is the observable elitism guarantee.
        log.generations.push_back(GenerationStats{gen, best, sum / mu, ms});
    };

    record(0);

    for (int gen = 1; gen <= config.max_generations; ++gen) {
        RngStream gen_rng = master.fork(static_cast<std::uint64_t>(gen));
        population = step(population, ctx, config, gen_rng);
        record(gen);

        if (config.stagnation_epsilon > 0.0 && gen >= config.stagnation_window) {
            const double now = log.generations[gen].best_fitness;
            const double before = log.generations[gen - config.stagnation_window].best_fitness;
            const double rel = (now - before) / std::max(before, 1e-12);
            if (rel < config.stagnation_epsilon) break;
        }
    }
    return result;
}

std::string EvolutionLog::to_csv(bool with_timing) const {
    std::string out = "generation,best_fitness,mean_fitness,millis\n";
    char buf[160];
    for (const GenerationStats& g : generations) {
        if (with_timing) {
            std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g,%.3f\n", g.generation, g.best_fitness,
                          g.mean_fitness, g.millis);
        } else {
            std::snprintf(buf, sizeof buf, "%d,%.17g,%.17g,0\n", g.generation, g.best_fitness,
                          g.mean_fitness);
        }
        out += buf;
    }
    return out;
}

} // namespace stereogen
