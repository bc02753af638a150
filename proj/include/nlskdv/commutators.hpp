#pragma once

#include <array>
#include <vector>

#include "nlskdv/functionals.hpp"
#include "nlskdv/i_operator.hpp"
#include "nlskdv/solver.hpp"

namespace nlskdv {

/// Which reading of the eleventh energy term to use. The `adopted` reading is
/// Iv Iu (I(|u|^2 ubar) - Iu (I ubar)^2); the `alternate` reading squares the
/// whole bracket, Iv Iu (I(|u|^2 ubar) - Iu I(ubar))^2. The derivative
/// identity residual adjudicates between them (the adopted one drives the
/// residual to zero, the alternate does not).
enum class E11Reading { adopted, alternate };

struct CommutatorConfig {
    E11Reading e11 = E11Reading::adopted;
};

/// The exact decomposition terms of d/dt L(Iu, Iv) and d/dt E(Iu, Iv) along
/// the dealiased spectral flow. Every inner I(..) acts on a dealiased product
/// and every outer integral is evaluated alias-free, so all terms vanish
/// identically when I is the identity (N >= K or alpha = 0).
std::array<double, 4> l_terms(const SpectralField& u, const SpectralField& v,
                              const IOperatorSpec& spec, const SystemParams& params);

std::array<double, 12> e_terms(const SpectralField& u, const SpectralField& v,
                               const IOperatorSpec& spec, const SystemParams& params,
                               const CommutatorConfig& config = {});

struct CommutatorBreakdown {
    double t = 0.0;
    std::array<double, 4> l = {};
    std::array<double, 12> e = {};
    double l_sum = 0.0;
    double e_sum = 0.0;
};

CommutatorBreakdown commutator_breakdown(const SystemState& state, const IOperatorSpec& spec,
                                         const SystemParams& params,
                                         const CommutatorConfig& config = {});

/// A time-ordered list of states, queried at exact sample times.
class Trajectory {
  public:
    void add(const SystemState& state) { states_.push_back(state); }
    const SystemState& at_time(double t, double tol = 1e-9) const;
    std::size_t size() const { return states_.size(); }

  private:
    std::vector<SystemState> states_;
};

/// Centered-difference certification of the decompositions: compares
/// (F(t+h) - F(t-h)) / 2h against the term sums at t, normalized by
/// max(1, |sum|). Requires the trajectory to hold states at t-h, t, t+h.
struct ResidualPair {
    double res_L = 0.0;
    double res_E = 0.0;
};
ResidualPair derivative_identity_residual(const Trajectory& traj, double t, double h,
                                          const IOperatorSpec& spec, const SystemParams& params,
                                          const CommutatorConfig& config = {});

}  // namespace nlskdv
