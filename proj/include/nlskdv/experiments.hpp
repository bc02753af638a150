#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "nlskdv/bourgain.hpp"
#include "nlskdv/continuation.hpp"
#include "nlskdv/random_fields.hpp"
#include "nlskdv/solver.hpp"

namespace nlskdv {

/// Parsed batch configuration. The raw JSON document is kept for the manifest
/// echo; all knobs have defaults so minimal configs stay small.
struct ExperimentConfig {
    std::string experiment;
    std::uint64_t seed = 1;
    std::string output_dir = ".";
    int jobs = 1;

    std::size_t grid_m = 64;
    SystemParams system;
    SolverConfig solver;
    double i_N = 16.0;
    double i_s = 0.9;
    SymbolVariant i_variant = SymbolVariant::smooth;
    FieldSpec data_u;
    FieldSpec data_v;

    // simulate
    double simulate_T = 1.0;
    std::size_t simulate_stride = 10;

    // almost_conservation_sweep
    double sweep_delta = 0.1;
    double sweep_dt = 0.0;  // 0: auto (min(1e-4, 0.5/K^3))
    std::vector<double> sweep_N;

    // identity_residual
    double residual_dt = 2.5e-6;
    std::vector<std::size_t> residual_h_steps = {100, 200, 400};

    // lemma_ratios
    std::size_t ratios_m_t = 64;
    std::size_t ratios_samples = 100;
    struct LemmaSpec {
        std::string name;  // u2u, dv2, uv, du2, time_loc, strichartz
        LemmaParams params;
    };
    std::vector<LemmaSpec> lemmas;

    // thresholds
    Branch thresholds_branch = Branch::nonresonant;

    // continuation
    ContinuationConfig continuation;

    nlohmann::json raw;

    IOperatorSpec i_spec() const { return IOperatorSpec::from_regularity(i_N, i_s, i_variant); }
};

ExperimentConfig parse_config_json(const nlohmann::json& j);
ExperimentConfig parse_config_file(const std::string& path);

/// The valid experiment names, in the order reported by validation errors.
const std::vector<std::string>& experiment_names();

struct RunOutcome {
    int exit_code = 0;  // 0 ok, 2 validation failure, 3 numerical instability
    std::string message;
    std::vector<std::string> outputs;
};

/// Execute the named experiment, writing results.csv (plus plot.svg for
/// sweeps and time series) and manifest.json under config.output_dir.
/// manifest.json is written even when the run fails.
RunOutcome run_experiment(const ExperimentConfig& config);

}  // namespace nlskdv

#include <atomic>
#include <thread>

namespace nlskdv {

/// Ordered parallel map: applies fn(i) for i in [0, n) on up to `jobs`
/// workers and returns results in index order regardless of scheduling.
/// Exceptions from workers are rethrown on the caller thread.
template <typename R, typename Fn>
std::vector<R> parallel_map(int jobs, std::size_t n, Fn&& fn) {
    std::vector<R> results(n);
    if (n == 0) return results;
    const int workers = std::max(1, std::min<int>(jobs, static_cast<int>(n)));
    if (workers == 1) {
        for (std::size_t i = 0; i < n; ++i) results[i] = fn(i);
        return results;
    }
    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> errors(static_cast<std::size_t>(workers));
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(workers));
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&, w] {
            try {
                for (std::size_t i = next.fetch_add(1); i < n; i = next.fetch_add(1)) {
                    results[i] = fn(i);
                }
            } catch (...) {
                errors[static_cast<std::size_t>(w)] = std::current_exception();
            }
        });
    }
    for (auto& t : pool) t.join();
    for (const auto& e : errors) {
        if (e) std::rethrow_exception(e);
    }
    return results;
}

}  // namespace nlskdv
