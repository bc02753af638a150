#pragma once

#include <array>
#include <string>
#include <utility>
#include <vector>

#include "nlskdv/i_operator.hpp"
#include "nlskdv/solver.hpp"
#include "nlskdv/spectral_field.hpp"

namespace nlskdv {

/// M(u) = ||u||_{L2}.
double mass(const SpectralField& u);

/// L(u, v) = alpha ||v||_{L2}^2 + 2 gamma Int Im(u conj(u_x)) dx.
double momentum_L(const SpectralField& u, const SpectralField& v, const SystemParams& params);

/// E(u, v) = alpha gamma Int v |u|^2 + gamma ||u_x||^2 + (alpha/2) ||v_x||^2
///           - (alpha/6) Int v^3 + (beta gamma / 2) Int |u|^4,
/// all integrals evaluated alias-free. Returns the real value; the imaginary
/// residue of the complex evaluation is available for diagnostics.
double energy_E(const SpectralField& u, const SpectralField& v, const SystemParams& params);
std::pair<double, double> energy_E_with_residual(const SpectralField& u, const SpectralField& v,
                                                 const SystemParams& params);

/// (L(Iu, Iv), E(Iu, Iv)).
std::pair<double, double> modified_functionals(const SpectralField& u, const SpectralField& v,
                                               const IOperatorSpec& spec,
                                               const SystemParams& params);

/// LHS/RHS ratios for the six a-priori inequality families; the E2/E3 family
/// carries both displayed variants, so seven numbers are reported. A ratio is
/// 0 whenever its LHS is 0. Requires alpha*gamma > 0.
struct AprioriReport {
    double l1, l2, e1, e2, e3, e4, e5;

    std::array<std::pair<std::string, double>, 7> entries() const {
        return {{{"e.L1", l1}, {"e.L2", l2}, {"e.E1", e1}, {"e.E2", e2},
                 {"e.E3", e3}, {"e.E4", e4}, {"e.E5", e5}}};
    }
    double max_ratio() const;
};
AprioriReport apriori_ratios(const SpectralField& u, const SpectralField& v,
                             const SystemParams& params);

/// One sampled row of conserved-quantity diagnostics.
struct FunctionalReport {
    double t = 0.0;
    double mass = 0.0;
    double momentum_L = 0.0;
    double energy_E = 0.0;
    double modified_L = 0.0;
    double modified_E = 0.0;
    double h1_u = 0.0;
    double h1_v = 0.0;
};

FunctionalReport functional_report(const SystemState& state, const IOperatorSpec& spec,
                                   const SystemParams& params);

/// Observer that appends a FunctionalReport per sample.
Observer make_functional_observer(std::vector<FunctionalReport>& out, const IOperatorSpec& spec,
                                  const SystemParams& params);

}  // namespace nlskdv
