// stereogen command-line front end: run the GA matcher, the SAD baseline,
// score disparity maps, or print the fitness of a stored map.
//
// Exit codes: 0 success, 1 usage error, 2 I/O or parse error,
// 3 dimension/config error.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "stereogen/evaluation.hpp"
#include "stereogen/evolution.hpp"
#include "stereogen/fitness.hpp"
#include "stereogen/image.hpp"

namespace {

using namespace stereogen;

GrayImage disparity_to_image(const Chromosome& map, int scale) {
    GrayImage img(map.width, map.height);
    for (std::size_t i = 0; i < map.disparities.size(); ++i) {
        const int v = map.disparities[i] * scale;
        img.pixels[i] = static_cast<std::uint8_t>(std::min(v, 255));
    }
    return img;
}

Chromosome image_to_disparity(const GrayImage& img, double scale) {
    Chromosome map(img.width, img.height);
    for (std::size_t i = 0; i < img.pixels.size(); ++i) {
        map.disparities[i] = static_cast<disp_t>(std::lround(img.pixels[i] / scale));
    }
    return map;
}

void write_text_file(const std::string& path, const std::string& content) {
    std::FILE* f = std::fopen(path.c_str(), "wb");
    if (!f) throw IoError("cannot open '" + path + "' for writing");
    const bool ok = std::fwrite(content.data(), 1, content.size(), f) == content.size();
    std::fclose(f);
    if (!ok) throw IoError("write failure on '" + path + "'");
}

struct MatchArgs {
    std::string ref_path, tgt_path, gt_path, out_path = "disparity.pgm", log_path;
    GaConfig config;
    int out_scale = 4;
    double gt_scale = 1.0;
    int gt_unknown = -1; // <0: no unknown marker
    double threshold = 1.0;
    bool timing = false;
};

void add_ga_options(CLI::App* cmd, MatchArgs& args) {
    cmd->add_option("--dmax", args.config.d_max, "Maximum disparity (inclusive)")->required();
    cmd->add_option("--pop", args.config.population_size, "Population size")->capture_default_str();
    cmd->add_option("--gens", args.config.max_generations, "Maximum generations")->capture_default_str();
    cmd->add_option("--offspring", args.config.offspring_count,
                    "Children per generation (0 = same as --pop)")->capture_default_str();
    cmd->add_option("--mutation-rate", args.config.mutation_rate, "Per-offspring mutation probability")->capture_default_str();
    cmd->add_option("--elite-frac", args.config.elite_fraction, "Fraction retained deterministically")->capture_default_str();
    cmd->add_option("--radius", args.config.neighborhood_radius, "Fitness neighborhood radius")->capture_default_str();
    cmd->add_option("--patch-radius", args.config.mutation_patch_radius, "Mutation patch radius")->capture_default_str();
    cmd->add_option("--sigma", args.config.sigma, "Grey-class standard deviation")->capture_default_str();
    cmd->add_option("--seed", args.config.seed, "Random seed")->capture_default_str();
    cmd->add_option("--stagnation-window", args.config.stagnation_window,
                    "Generations compared by the stagnation stop")->capture_default_str();
    cmd->add_option("--stagnation-eps", args.config.stagnation_epsilon,
                    "Relative best-fitness improvement regarded as progress (0 disables)")->capture_default_str();
}

int run_match(const MatchArgs& args) {
    const StereoPair pair = make_stereo_pair(load_pgm_file(args.ref_path), load_pgm_file(args.tgt_path));

    const auto start = std::chrono::steady_clock::now();
    const EvolveResult result = evolve(pair, args.config);
    const double elapsed =
        std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();

    save_pgm_file(disparity_to_image(result.best, args.out_scale), args.out_path);
    if (!args.log_path.empty()) {
        write_text_file(args.log_path,
                        "# scale=" + std::to_string(args.out_scale) + "\n" + result.log.to_csv(args.timing));
    }
    std::printf("best_fitness=%.17g elapsed_ms=%.1f generations=%zu\n", result.best_fitness, elapsed,
                result.log.generations.size() - 1);

    if (!args.gt_path.empty()) {
        GroundTruth gt{load_pgm_file(args.gt_path), args.gt_scale,
                       args.gt_unknown >= 0 ? std::optional<int>(args.gt_unknown) : std::nullopt};
        const EvalReport report = bad_pixel_rate(result.best, gt, args.threshold);
        std::printf("%s\n", report.to_csv().c_str());
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Dense stereo matching with a genetic search over whole disparity maps"};
    app.require_subcommand(1);
    app.set_config("--config", "",
                   "Key=value config file; put flags under a [<subcommand>] section. "
                   "Command-line flags override the file.");

    MatchArgs match_args;
    CLI::App* match = app.add_subcommand("match", "Evolve a disparity map for a rectified pair");
    match->add_option("--ref", match_args.ref_path, "Reference (right) image, PGM")->required();
    match->add_option("--tgt", match_args.tgt_path, "Target (left) image, PGM")->required();
    match->add_option("--gt", match_args.gt_path, "Optional ground-truth disparity PGM");
    match->add_option("--gt-scale", match_args.gt_scale, "Ground-truth disparity scale")->capture_default_str();
    match->add_option("--unknown", match_args.gt_unknown, "Ground-truth value meaning 'no data'");
    match->add_option("--threshold", match_args.threshold, "Bad-pixel threshold")->capture_default_str();
    match->add_option("--out", match_args.out_path, "Output disparity PGM")->capture_default_str();
    match->add_option("--log", match_args.log_path, "Convergence log CSV");
    match->add_option("--scale", match_args.out_scale, "Stored value = disparity * scale")->capture_default_str();
    match->add_flag("--timing", match_args.timing, "Record measured per-generation wall time in the log");
    add_ga_options(match, match_args);

    struct {
        std::string est_path, gt_path;
        double gt_scale = 1.0, est_scale = 1.0, threshold = 1.0;
        int unknown = -1;
    } eval_args;
    CLI::App* eval = app.add_subcommand("eval", "Score a disparity map against ground truth");
    eval->add_option("--est", eval_args.est_path, "Estimated disparity PGM")->required();
    eval->add_option("--gt", eval_args.gt_path, "Ground-truth disparity PGM")->required();
    eval->add_option("--scale", eval_args.gt_scale, "Ground-truth disparity scale")->capture_default_str();
    eval->add_option("--est-scale", eval_args.est_scale, "Estimate disparity scale")->capture_default_str();
    eval->add_option("--unknown", eval_args.unknown, "Ground-truth value meaning 'no data'");
    eval->add_option("--threshold", eval_args.threshold, "Bad-pixel threshold")->capture_default_str();

    struct {
        std::string ref_path, tgt_path, out_path = "baseline.pgm";
        int d_max = 0, window = 3, out_scale = 4;
    } base_args;
    CLI::App* baseline = app.add_subcommand("baseline", "SAD winner-take-all disparity map");
    baseline->add_option("--ref", base_args.ref_path, "Reference (right) image, PGM")->required();
    baseline->add_option("--tgt", base_args.tgt_path, "Target (left) image, PGM")->required();
    baseline->add_option("--dmax", base_args.d_max, "Maximum disparity (inclusive)")->required();
    baseline->add_option("--window", base_args.window, "SAD window radius")->capture_default_str();
    baseline->add_option("--out", base_args.out_path, "Output disparity PGM")->capture_default_str();
    baseline->add_option("--scale", base_args.out_scale, "Stored value = disparity * scale")->capture_default_str();

    struct {
        std::string chrom_path, ref_path, tgt_path;
        int d_max = 0, radius = 1;
        double sigma = 42.5, scale = 1.0;
    } fit_args;
    CLI::App* fit = app.add_subcommand("fitness", "Print the fitness of a stored disparity map");
    fit->add_option("--chrom", fit_args.chrom_path, "Disparity PGM to score")->required();
    fit->add_option("--ref", fit_args.ref_path, "Reference (right) image, PGM")->required();
    fit->add_option("--tgt", fit_args.tgt_path, "Target (left) image, PGM")->required();
    fit->add_option("--dmax", fit_args.d_max, "Maximum disparity (inclusive)")->required();
    fit->add_option("--radius", fit_args.radius, "Fitness neighborhood radius")->capture_default_str();
    fit->add_option("--sigma", fit_args.sigma, "Grey-class standard deviation")->capture_default_str();
    fit->add_option("--scale", fit_args.scale, "Stored value = disparity * scale")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (*match) return run_match(match_args);

        if (*eval) {
            const GrayImage est_img = load_pgm_file(eval_args.est_path);
            GroundTruth gt{load_pgm_file(eval_args.gt_path), eval_args.gt_scale,
                           eval_args.unknown >= 0 ? std::optional<int>(eval_args.unknown) : std::nullopt};
            const Chromosome est = image_to_disparity(est_img, eval_args.est_scale);
            std::printf("%s\n", bad_pixel_rate(est, gt, eval_args.threshold).to_csv().c_str());
            return 0;
        }

        if (*baseline) {
            const StereoPair pair =
                make_stereo_pair(load_pgm_file(base_args.ref_path), load_pgm_file(base_args.tgt_path));
            const Chromosome map = sad_block_match(pair, base_args.d_max, base_args.window);
            save_pgm_file(disparity_to_image(map, base_args.out_scale), base_args.out_path);
            return 0;
        }

        if (*fit) {
            const StereoPair pair =
                make_stereo_pair(load_pgm_file(fit_args.ref_path), load_pgm_file(fit_args.tgt_path));
            const Chromosome chrom = image_to_disparity(load_pgm_file(fit_args.chrom_path), fit_args.scale);
            if (chrom.width != pair.reference.width || chrom.height != pair.reference.height) {
                throw DimensionError("disparity map does not match the image pair");
            }
            for (disp_t d : chrom.disparities) {
                if (d > fit_args.d_max) {
                    throw ConfigError("stored disparity " + std::to_string(d) + " exceeds --dmax " +
                                      std::to_string(fit_args.d_max));
                }
            }
            MembershipParams params;
            params.sigmas = {fit_args.sigma, fit_args.sigma, fit_args.sigma};
            const FitnessContext ctx = make_fitness_context(pair, fit_args.d_max, params, fit_args.radius);
            std::printf("%.17g\n", fitness(chrom, ctx));
            return 0;
        }
    } catch (const PgmError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const IoError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    } catch (const DimensionError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 3;
    }
    return 1;
}
