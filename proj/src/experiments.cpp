#include "nlskdv/experiments.hpp"

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <stdexcept>

#include "nlskdv/commutators.hpp"
#include "nlskdv/csv.hpp"
#include "nlskdv/functionals.hpp"
#include "nlskdv/log.hpp"
#include "nlskdv/svg.hpp"

namespace nlskdv {

namespace fs = std::filesystem;
using nlohmann::json;

const std::vector<std::string>& experiment_names() {
    static const std::vector<std::string> names = {
        "simulate",        "almost_conservation_sweep", "identity_residual",
        "lemma_ratios",    "thresholds",                "continuation"};
    return names;
}

namespace {

[[noreturn]] void fail(const std::string& msg) { throw std::invalid_argument(msg); }

double get_num(const json& j, const std::string& key, double fallback) {
    if (!j.contains(key)) return fallback;
    if (!j.at(key).is_number()) fail("config: " + key + " must be a number");
    return j.at(key).get<double>();
}

FieldSpec parse_field_spec(const json& j, const FieldSpec& fallback) {
    FieldSpec spec = fallback;
    if (j.contains("law")) {
        const std::string law = j.at("law").get<std::string>();
        if (law == "exponential") spec.law = DecayLaw::exponential;
        else if (law == "polynomial") spec.law = DecayLaw::polynomial;
        else fail("config: data law must be exponential or polynomial");
    }
    spec.rate = get_num(j, "rate", spec.rate);
    spec.amplitude = get_num(j, "amplitude", spec.amplitude);
    spec.band = static_cast<int>(get_num(j, "band", spec.band));
    return spec;
}

LemmaId lemma_from_name(const std::string& name) {
    if (name == "u2u") return LemmaId::u2u;
    if (name == "dv2") return LemmaId::dv2;
    if (name == "uv") return LemmaId::uv;
    if (name == "du2") return LemmaId::du2;
    if (name == "time_loc") return LemmaId::time_loc;
    fail("config: unknown lemma '" + name + "' (valid: u2u, dv2, uv, du2, time_loc, strichartz)");
}

}  // namespace

ExperimentConfig parse_config_json(const json& j) {
    ExperimentConfig c;
    c.raw = j;
    if (!j.contains("experiment") || !j.at("experiment").is_string()) {
        fail("config: missing string field 'experiment'");
    }
    c.experiment = j.at("experiment").get<std::string>();
    bool known = false;
    for (const auto& name : experiment_names()) known = known || name == c.experiment;
    if (!known) {
        std::string valid;
        for (const auto& name : experiment_names()) valid += (valid.empty() ? "" : ", ") + name;
        fail("config: unknown experiment '" + c.experiment + "' (valid: " + valid + ")");
    }

    if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("output_dir")) c.output_dir = j.at("output_dir").get<std::string>();
    if (j.contains("jobs")) c.jobs = j.at("jobs").get<int>();
    if (c.jobs < 1) fail("config: jobs must be >= 1");

    if (j.contains("grid")) c.grid_m = static_cast<std::size_t>(get_num(j.at("grid"), "M", 64));
    if (c.grid_m < 8 || c.grid_m % 2 != 0) fail("config: grid.M must be even and >= 8");

    if (j.contains("system")) {
        const auto& sys = j.at("system");
        c.system.alpha = get_num(sys, "alpha", c.system.alpha);
        c.system.beta = get_num(sys, "beta", c.system.beta);
        c.system.gamma = get_num(sys, "gamma", c.system.gamma);
    }
    if (j.contains("solver")) {
        const auto& s = j.at("solver");
        c.solver.dt = get_num(s, "dt", c.solver.dt);
        if (s.contains("scheme")) {
            const std::string scheme = s.at("scheme").get<std::string>();
            if (scheme == "strang") c.solver.scheme = Scheme::strang;
            else if (scheme == "oracle_rk4") c.solver.scheme = Scheme::oracle_rk4;
            else fail("config: solver.scheme must be strang or oracle_rk4");
        }
        if (!(c.solver.dt > 0.0)) fail("config: solver.dt must be positive");
    }
    if (j.contains("i_operator")) {
        const auto& io = j.at("i_operator");
        c.i_N = get_num(io, "N", c.i_N);
        c.i_s = get_num(io, "s", c.i_s);
        if (io.contains("variant")) {
            const std::string v = io.at("variant").get<std::string>();
            if (v == "smooth") c.i_variant = SymbolVariant::smooth;
            else if (v == "sharp") c.i_variant = SymbolVariant::sharp;
            else fail("config: i_operator.variant must be smooth or sharp");
        }
        if (!(c.i_N >= 1.0)) fail("config: i_operator.N must be >= 1");
    }
    if (j.contains("data")) {
        const auto& d = j.at("data");
        if (d.contains("u")) c.data_u = parse_field_spec(d.at("u"), c.data_u);
        if (d.contains("v")) c.data_v = parse_field_spec(d.at("v"), c.data_v);
    }
    if (j.contains("simulate")) {
        const auto& s = j.at("simulate");
        c.simulate_T = get_num(s, "T", c.simulate_T);
        c.simulate_stride = static_cast<std::size_t>(get_num(s, "stride", 10));
        if (!(c.simulate_T > 0.0)) fail("config: simulate.T must be positive");
    }
    if (j.contains("sweep")) {
        const auto& s = j.at("sweep");
        c.sweep_delta = get_num(s, "delta", c.sweep_delta);
        c.sweep_dt = get_num(s, "dt", c.sweep_dt);
        if (s.contains("N_values")) {
            c.sweep_N.clear();
            for (const auto& n : s.at("N_values")) c.sweep_N.push_back(n.get<double>());
        }
    }
    if (c.sweep_N.empty()) c.sweep_N = {8, 16, 32, 64};
    if (j.contains("residual")) {
        const auto& r = j.at("residual");
        c.residual_dt = get_num(r, "dt", c.residual_dt);
        if (r.contains("h_steps")) {
            c.residual_h_steps.clear();
            for (const auto& h : r.at("h_steps")) {
                c.residual_h_steps.push_back(h.get<std::size_t>());
            }
        }
        if (c.residual_h_steps.empty()) fail("config: residual.h_steps must be nonempty");
    }
    if (j.contains("lemma_ratios")) {
        const auto& lr = j.at("lemma_ratios");
        c.ratios_m_t = static_cast<std::size_t>(get_num(lr, "m_t", 64));
        c.ratios_samples = static_cast<std::size_t>(get_num(lr, "sample_count", 100));
        if (lr.contains("lemmas")) {
            for (const auto& item : lr.at("lemmas")) {
                ExperimentConfig::LemmaSpec spec;
                spec.name = item.at("lemma").get<std::string>();
                if (spec.name != "strichartz") lemma_from_name(spec.name);  // validate
                spec.params.k = get_num(item, "k", 0.0);
                spec.params.s = get_num(item, "s", 0.0);
                spec.params.b = get_num(item, "b", 0.5);
                spec.params.bp = get_num(item, "bp", 0.375);
                c.lemmas.push_back(spec);
            }
        }
    }
    if (c.lemmas.empty()) {
        c.lemmas = {{"strichartz", {}},
                    {"u2u", {1.0, 0.0, 0.5, 0.375}},
                    {"dv2", {0.0, 0.5, 0.5, 0.375}},
                    {"uv", {1.0, 1.0, 0.5, 0.375}},
                    {"du2", {1.0, 1.0, 0.5, 0.375}},
                    {"time_loc", {0.0, 0.0, 0.5, 0.375}}};
    }
    if (j.contains("thresholds")) {
        const std::string branch = j.at("thresholds").value("branch", "nonresonant");
        if (branch == "nonresonant") c.thresholds_branch = Branch::nonresonant;
        else if (branch == "resonant") c.thresholds_branch = Branch::resonant;
        else fail("config: thresholds.branch must be resonant or nonresonant");
    }
    if (j.contains("continuation")) {
        const auto& cc = j.at("continuation");
        c.continuation.s = get_num(cc, "s", c.continuation.s);
        c.continuation.N = get_num(cc, "N", c.continuation.N);
        c.continuation.T_goal = get_num(cc, "T_goal", c.continuation.T_goal);
        c.continuation.c_delta = get_num(cc, "c_delta", c.continuation.c_delta);
        c.continuation.eps = get_num(cc, "eps", c.continuation.eps);
        c.continuation.budget_multiplier =
            get_num(cc, "budget_multiplier", c.continuation.budget_multiplier);
        if (cc.contains("beta_zero")) c.continuation.beta_zero = cc.at("beta_zero").get<bool>();
        c.continuation.variant = c.i_variant;
    }
    return c;
}

ExperimentConfig parse_config_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) fail("config: cannot open " + path);
    json j;
    try {
        f >> j;
    } catch (const json::exception& e) {
        fail("config: JSON parse error in " + path + ": " + e.what());
    }
    return parse_config_json(j);
}

namespace {

struct ExperimentResult {
    CsvRow header;
    std::vector<CsvRow> rows;
    std::optional<SvgSeries> plot;
};

std::pair<SpectralField, SpectralField> initial_data(const ExperimentConfig& c, const Grid& grid) {
    Rng rng_u = Rng::substream(c.seed, 1000);
    Rng rng_v = Rng::substream(c.seed, 1001);
    SpectralField u = c.data_u.amplitude == 0.0 ? SpectralField(grid, false)
                                                : random_complex_field(grid, c.data_u, rng_u);
    SpectralField v = c.data_v.amplitude == 0.0 ? SpectralField(grid, true)
                                                : random_real_field(grid, c.data_v, rng_v);
    v = v.project_zero_mean();
    v.set_real_tag(true);
    return {std::move(u), std::move(v)};
}

ExperimentResult run_simulate(const ExperimentConfig& c) {
    const Grid grid(c.grid_m);
    auto [u0, v0] = initial_data(c, grid);
    SystemState state(0.0, u0, v0);
    std::vector<FunctionalReport> reports;
    const IOperatorSpec spec = c.i_spec();
    integrate(state, c.simulate_T, c.solver, c.system,
              make_functional_observer(reports, spec, c.system), c.simulate_stride);

    ExperimentResult out;
    out.header = {"t", "mass", "momentum_L", "energy_E", "modified_L", "modified_E",
                  "h1_u", "h1_v"};
    SvgSeries plot;
    for (const auto& r : reports) {
        out.rows.push_back({format_double(r.t), format_double(r.mass),
                            format_double(r.momentum_L), format_double(r.energy_E),
                            format_double(r.modified_L), format_double(r.modified_E),
                            format_double(r.h1_u), format_double(r.h1_v)});
        plot.x.push_back(r.t);
        plot.y.push_back(r.modified_E);
    }
    plot.x_label = "t";
    plot.y_label = "modified_E";
    plot.title = "E(Iu, Iv) along the flow";
    out.plot = plot;
    return out;
}

double fit_slope(const std::vector<double>& xs, const std::vector<double>& ys) {
    const double n = static_cast<double>(xs.size());
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
        sx += xs[i];
        sy += ys[i];
        sxx += xs[i] * xs[i];
        sxy += xs[i] * ys[i];
    }
    return (n * sxy - sx * sy) / (n * sxx - sx * sx);
}

ExperimentResult run_sweep(const ExperimentConfig& c) {
    const Grid grid(c.grid_m);
    const double k = static_cast<double>(grid.max_mode());
    double dt = c.sweep_dt;
    if (dt <= 0.0) dt = std::min(1e-4, 0.5 / (k * k * k));

    auto [u0, v0] = initial_data(c, grid);
    SystemState state(0.0, u0, v0);
    SolverConfig solver{dt, Scheme::strang};
    log_info("sweep: integrating to delta = " + std::to_string(c.sweep_delta) +
             " at dt = " + std::to_string(dt));
    // sample the trajectory across the window: the endpoint increment is an
    // oscillatory signed integral that can nearly cancel at a single time, so
    // the decay fit uses the max increment over the samples (same theoretical
    // bound, immune to accidental zeros)
    std::vector<SystemState> samples;
    const std::size_t nsteps = static_cast<std::size_t>(std::ceil(c.sweep_delta / dt - 1e-9));
    const std::size_t stride = std::max<std::size_t>(1, nsteps / 8);
    integrate(state, c.sweep_delta, solver, c.system,
              [&](const SystemState& s) { samples.push_back(s); }, stride);

    struct Row {
        double n, dl, de, max_dl, max_de;
    };
    auto rows = parallel_map<Row>(c.jobs, c.sweep_N.size(), [&](std::size_t i) {
        const IOperatorSpec spec = IOperatorSpec::from_regularity(c.sweep_N[i], c.i_s, c.i_variant);
        auto [l0, e0] = modified_functionals(u0, v0, spec, c.system);
        Row row{c.sweep_N[i], 0.0, 0.0, 0.0, 0.0};
        for (std::size_t j = 1; j < samples.size(); ++j) {
            auto [l1, e1] = modified_functionals(samples[j].u, samples[j].v, spec, c.system);
            row.max_dl = std::max(row.max_dl, std::abs(l1 - l0));
            row.max_de = std::max(row.max_de, std::abs(e1 - e0));
            if (j + 1 == samples.size()) {
                row.dl = std::abs(l1 - l0);
                row.de = std::abs(e1 - e0);
            }
        }
        return row;
    });

    ExperimentResult out;
    out.header = {"kind", "N", "increment_L", "increment_E", "max_increment_L",
                  "max_increment_E", "slope_L", "slope_E"};
    std::vector<double> ln, ll, le;
    SvgSeries plot;
    for (const auto& r : rows) {
        out.rows.push_back({"point", format_double(r.n), format_double(r.dl),
                            format_double(r.de), format_double(r.max_dl),
                            format_double(r.max_de), "", ""});
        if (r.max_dl > 0.0 && r.max_de > 0.0) {
            ln.push_back(std::log(r.n));
            ll.push_back(std::log(r.max_dl));
            le.push_back(std::log(r.max_de));
        }
        plot.x.push_back(r.n);
        plot.y.push_back(r.max_dl);
    }
    if (ln.size() >= 3) {  // slopes only when enough points succeed
        out.rows.push_back({"fit", "", "", "", "", "", format_double(fit_slope(ln, ll)),
                            format_double(fit_slope(ln, le))});
    }
    plot.x_label = "N";
    plot.y_label = "max |increment of L(Iu,Iv)|";
    plot.title = "almost-conservation decay";
    plot.log_x = true;
    plot.log_y = true;
    out.plot = plot;
    return out;
}

ExperimentResult run_identity_residual(const ExperimentConfig& c) {
    const Grid grid(c.grid_m);
    auto [u0, v0] = initial_data(c, grid);
    const IOperatorSpec spec = c.i_spec();

    std::size_t max_steps = 0;
    for (std::size_t h : c.residual_h_steps) max_steps = std::max(max_steps, h);

    Trajectory traj;
    traj.add(SystemState(0.0, u0, v0));
    SystemState fwd(0.0, u0, v0);
    for (std::size_t i = 1; i <= max_steps; ++i) {
        fwd = step_rk4(fwd, c.residual_dt, c.system);
        fwd.t = static_cast<double>(i) * c.residual_dt;
        traj.add(fwd);
    }
    SystemState bwd(0.0, u0, v0);
    for (std::size_t i = 1; i <= max_steps; ++i) {
        bwd = step_rk4(bwd, -c.residual_dt, c.system);
        bwd.t = -static_cast<double>(i) * c.residual_dt;
        traj.add(bwd);
    }

    ExperimentResult out;
    out.header = {"kind", "h", "res_L", "res_E", "order_L", "order_E"};
    std::vector<double> lh, ll, le;
    SvgSeries plot;
    for (std::size_t hs : c.residual_h_steps) {
        const double h = static_cast<double>(hs) * c.residual_dt;
        const ResidualPair res = derivative_identity_residual(traj, 0.0, h, spec, c.system);
        out.rows.push_back({"point", format_double(h), format_double(res.res_L),
                            format_double(res.res_E), "", ""});
        lh.push_back(std::log(h));
        ll.push_back(std::log(res.res_L));
        le.push_back(std::log(res.res_E));
        plot.x.push_back(h);
        plot.y.push_back(res.res_E);
    }
    if (lh.size() >= 2) {
        out.rows.push_back({"fit", "", "", "", format_double(fit_slope(lh, ll)),
                            format_double(fit_slope(lh, le))});
    }
    plot.x_label = "h";
    plot.y_label = "res_E";
    plot.title = "derivative identity residual";
    plot.log_x = true;
    plot.log_y = true;
    out.plot = plot;
    return out;
}

ExperimentResult run_lemma_ratios(const ExperimentConfig& c) {
    const Grid grid(c.grid_m);
    auto rows = parallel_map<std::vector<CsvRow>>(c.jobs, c.lemmas.size(), [&](std::size_t i) {
        const auto& spec = c.lemmas[i];
        const std::uint64_t seed = c.seed + 7919 * i;
        std::vector<CsvRow> result;
        if (spec.name == "strichartz") {
            const StrichartzReport rep = strichartz_ratio(c.ratios_samples, grid, c.ratios_m_t, seed);
            result.push_back({"strichartz_schrodinger", "", "", "", "",
                              format_double(rep.schrodinger.max),
                              format_double(rep.schrodinger.median),
                              format_double(rep.schrodinger.q90), ""});
            result.push_back({"strichartz_airy", "", "", "", "", format_double(rep.airy.max),
                              format_double(rep.airy.median), format_double(rep.airy.q90), ""});
        } else {
            const LemmaRatioReport rep = estimate_ratio(lemma_from_name(spec.name), spec.params,
                                                        c.ratios_samples, grid, c.ratios_m_t, seed);
            result.push_back({spec.name, format_double(spec.params.k),
                              format_double(spec.params.s), format_double(spec.params.b),
                              format_double(spec.params.bp), format_double(rep.ratios.max),
                              format_double(rep.ratios.median), format_double(rep.ratios.q90),
                              rep.time_loc ? format_double(rep.time_loc->exponent_median) : ""});
        }
        return result;
    });

    ExperimentResult out;
    out.header = {"lemma", "k", "s", "b", "bp", "max", "median", "q90", "fitted_exponent"};
    for (const auto& group : rows) {
        for (const auto& row : group) out.rows.push_back(row);
    }
    return out;
}

ExperimentResult run_thresholds(const ExperimentConfig& c) {
    const ThresholdReport rep = gwp_threshold(c.thresholds_branch);
    ExperimentResult out;
    out.header = {"inequality", "threshold", "threshold_decimal", "delta_exponent_note"};
    for (const auto& e : rep.entries) {
        out.rows.push_back({e.label, e.threshold.str(), format_double(e.threshold.value()),
                            e.delta_exponent_note});
    }
    out.rows.push_back({"binding", rep.binding.str(), format_double(rep.binding.value()), ""});
    return out;
}

ExperimentResult run_continuation(const ExperimentConfig& c) {
    const Grid grid(c.grid_m);
    auto [u0, v0] = initial_data(c, grid);
    const ContinuationReport rep = continuation_run(u0, v0, c.continuation, c.system, c.solver);

    ExperimentResult out;
    out.header = {"leg", "t_start", "delta", "mass", "modified_L", "modified_E",
                  "increment_L", "increment_E", "usage_L", "usage_E", "breached"};
    SvgSeries plot;
    for (const auto& leg : rep.legs) {
        const bool breached = rep.breach_leg && *rep.breach_leg == leg.index;
        out.rows.push_back({std::to_string(leg.index), format_double(leg.t_start),
                            format_double(leg.delta), format_double(leg.mass),
                            format_double(leg.modified_L), format_double(leg.modified_E),
                            format_double(leg.increment_L), format_double(leg.increment_E),
                            format_double(leg.usage_L), format_double(leg.usage_E),
                            breached ? "1" : "0"});
        plot.x.push_back(leg.t_start + leg.delta);
        plot.y.push_back(leg.modified_E);
    }
    plot.x_label = "t";
    plot.y_label = "E(Iu,Iv)";
    plot.title = "continuation run";
    out.plot = plot;
    return out;
}

json config_echo(const ExperimentConfig& c) {
    json j = c.raw;
    j["resolved"] = {{"experiment", c.experiment}, {"seed", c.seed},
                     {"output_dir", c.output_dir}, {"jobs", c.jobs}, {"grid_M", c.grid_m}};
    return j;
}

void write_manifest(const ExperimentConfig& c, const RunOutcome& outcome, double wall_ms,
                    const std::optional<double>& instability_t) {
    json m;
    m["experiment"] = c.experiment;
    m["seed"] = c.seed;
    m["version"] = "nlskdv-lab 1.0";
    m["status"] = outcome.exit_code == 0 ? "ok"
                  : outcome.exit_code == 3 ? "instability" : "validation_failure";
    m["message"] = outcome.message;
    m["wall_ms"] = wall_ms;
    m["outputs"] = outcome.outputs;
    m["config"] = config_echo(c);
    if (instability_t) m["instability_time"] = *instability_t;
    std::ofstream f(fs::path(c.output_dir) / "manifest.json");
    if (f) f << m.dump(2) << "\n";
}

}  // namespace

RunOutcome run_experiment(const ExperimentConfig& config) {
    const auto start = std::chrono::steady_clock::now();
    RunOutcome outcome;
    std::optional<double> instability_t;
    std::error_code ec;
    fs::create_directories(config.output_dir, ec);

    try {
        ExperimentResult result;
        if (config.experiment == "simulate") result = run_simulate(config);
        else if (config.experiment == "almost_conservation_sweep") result = run_sweep(config);
        else if (config.experiment == "identity_residual") result = run_identity_residual(config);
        else if (config.experiment == "lemma_ratios") result = run_lemma_ratios(config);
        else if (config.experiment == "thresholds") result = run_thresholds(config);
        else result = run_continuation(config);

        const fs::path dir(config.output_dir);
        emit_csv(result.header, result.rows, (dir / "results.csv").string());
        outcome.outputs.push_back("results.csv");
        if (result.plot) {
            emit_svg(*result.plot, (dir / "plot.svg").string());
            outcome.outputs.push_back("plot.svg");
        }
        outcome.message = "ok";
    } catch (const InstabilityError& e) {
        outcome.exit_code = 3;
        outcome.message = e.what();
        instability_t = e.time();
        log_error(e.what());
    } catch (const std::invalid_argument& e) {
        outcome.exit_code = 2;
        outcome.message = e.what();
        log_error(e.what());
    } catch (const std::domain_error& e) {
        outcome.exit_code = 2;
        outcome.message = e.what();
        log_error(e.what());
    }

    const double wall_ms = std::chrono::duration<double, std::milli>(
                               std::chrono::steady_clock::now() - start).count();
    write_manifest(config, outcome, wall_ms, instability_t);
    return outcome;
}

}  // namespace nlskdv
