// Batch front-end for the spectral diagnostics laboratory.
//
//   nlskdv-lab run <config.json> [--jobs N] [--output DIR] [--seed S]
//   nlskdv-lab thresholds --branch {resonant|nonresonant}
//
// Exit codes: 0 success, 2 validation failure, 3 numerical instability.
// Logging via NLSKDV_LAB_LOG in {error, info, debug}.

#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "nlskdv/continuation.hpp"
#include "nlskdv/experiments.hpp"
#include "nlskdv/log.hpp"

int main(int argc, char** argv) {
    CLI::App app{"spectral diagnostics laboratory for the periodic NLS-KdV system"};
    app.require_subcommand(1);

    std::string config_path;
    int jobs = 0;
    std::string output_dir;
    std::int64_t seed = -1;
    auto* run = app.add_subcommand("run", "execute an experiment described by a JSON config");
    run->add_option("config", config_path, "path to the JSON configuration")->required();
    run->add_option("--jobs", jobs, "worker pool size for sweep points");
    run->add_option("--output", output_dir, "output directory (overrides config)");
    run->add_option("--seed", seed, "seed (overrides config)");

    std::string branch = "nonresonant";
    auto* thresholds = app.add_subcommand("thresholds", "print the exact regularity thresholds");
    thresholds->add_option("--branch", branch, "resonant or nonresonant")
        ->check(CLI::IsMember({"resonant", "nonresonant"}));

    CLI11_PARSE(app, argc, argv);

    if (thresholds->parsed()) {
        try {
            const auto rep = nlskdv::gwp_threshold(
                branch == "resonant" ? nlskdv::Branch::resonant : nlskdv::Branch::nonresonant);
            std::printf("branch: %s (delta exponent %s)\n", rep.branch.c_str(),
                        rep.p_delta.str().c_str());
            for (const auto& e : rep.entries) {
                std::printf("  %-4s s > %-7s (%.6f)  [%s]\n", e.label.c_str(),
                            e.threshold.str().c_str(), e.threshold.value(),
                            e.delta_exponent_note.c_str());
            }
            std::printf("binding: s > %s (%.6f)\n", rep.binding.str().c_str(),
                        rep.binding.value());
            return 0;
        } catch (const std::exception& e) {
            nlskdv::log_error(e.what());
            std::fprintf(stderr, "error: %s\n", e.what());
            return 2;
        }
    }

    try {
        nlskdv::ExperimentConfig config = nlskdv::parse_config_file(config_path);
        if (jobs > 0) config.jobs = jobs;
        if (!output_dir.empty()) config.output_dir = output_dir;
        if (seed >= 0) config.seed = static_cast<std::uint64_t>(seed);
        const nlskdv::RunOutcome outcome = nlskdv::run_experiment(config);
        if (outcome.exit_code == 0) {
            nlskdv::log_info("wrote results under " + config.output_dir);
        } else {
            std::fprintf(stderr, "error: %s\n", outcome.message.c_str());
        }
        return outcome.exit_code;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 2;
    }
}
