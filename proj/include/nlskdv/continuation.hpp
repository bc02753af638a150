#pragma once

#include <optional>
#include <string>
#include <vector>

#include "nlskdv/functionals.hpp"
#include "nlskdv/i_operator.hpp"
#include "nlskdv/rational.hpp"
#include "nlskdv/solver.hpp"

namespace nlskdv {

struct ContinuationConfig {
    double s = 0.9;        // regularity, 1/3 <= s <= 1
    double N = 32.0;       // multiplier parameter
    double T_goal = 1.0;
    double c_delta = 1.0;  // proportionality constant in the delta law
    double eps = 0.0;      // the "-" loss in the exponent
    bool beta_zero = false;  // resonance flag; must match params.beta == 0
    double budget_multiplier = 4.0;
    SymbolVariant variant = SymbolVariant::smooth;

    void validate() const;
    IOperatorSpec i_spec() const { return IOperatorSpec::from_regularity(N, s, variant); }
    double delta_exponent() const { return (beta_zero ? 8.0 : 16.0 / 3.0) + eps; }
};

/// Local step-size law: delta = min(1, c_delta * proxy^{-p-eps}) with
/// proxy = ||Iu||_{H1} + ||Iv||_{H1} and p = 16/3 (beta != 0) or 8 (beta = 0).
/// A zero proxy yields delta = 1.
double local_delta(const SpectralField& u, const SpectralField& v,
                   const ContinuationConfig& config);

struct LegRecord {
    std::size_t index = 0;
    double t_start = 0.0;
    double delta = 0.0;
    double mass = 0.0;
    double modified_L = 0.0;
    double modified_E = 0.0;
    double increment_L = 0.0;  // change of L(Iu, Iv) over the leg
    double increment_E = 0.0;
    double usage_L = 0.0;  // |L(Iu, Iv)| / N^{1-s}
    double usage_E = 0.0;  // |E(Iu, Iv)| / N^{2(1-s)}
};

struct ContinuationReport {
    std::vector<LegRecord> legs;
    double target_L = 0.0;  // N^{1-s}
    double target_E = 0.0;  // N^{2(1-s)}
    bool completed = false;
    bool budget_breached = false;
    std::optional<std::size_t> breach_leg;
    double cumulative_increment_L = 0.0;  // sum of |per-leg increments|
    double cumulative_increment_E = 0.0;
    double final_time = 0.0;
};

/// Iterate the local existence interval until T_goal: per leg, compute delta
/// from the current state, integrate over it, and record the modified
/// functionals and budget usage. A budget breach (usage beyond
/// budget_multiplier times max(initial usage, 1)) is recorded with its leg
/// index and the run continues. Requires alpha*gamma > 0; v0 is projected to
/// zero mean.
ContinuationReport continuation_run(const SpectralField& u0, const SpectralField& v0,
                                    const ContinuationConfig& config, const SystemParams& params,
                                    const SolverConfig& solver_config);

/// One inequality of the exponent bookkeeping: a + q*p*(1-s) + r*(1-s) <
/// w*(1-s), solved exactly for the threshold s > 1 + a/(q*p + r - w).
struct ThresholdEntry {
    std::string label;
    Rational a, q, r, w;
    Rational threshold;
    std::string delta_exponent_note;  // provenance of q
};

struct ThresholdReport {
    Rational p_delta;
    std::string branch;
    std::vector<ThresholdEntry> entries;
    Rational binding;
};

enum class Branch { nonresonant, resonant };

/// Exact-rational solution of the seven continuation inequalities for
/// p_delta in {16/3 (nonresonant), 8 (resonant)}.
ThresholdReport gwp_threshold(const Rational& p_delta, Branch branch);
ThresholdReport gwp_threshold(Branch branch);

}  // namespace nlskdv
