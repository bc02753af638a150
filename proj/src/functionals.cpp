#include "nlskdv/functionals.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace nlskdv {

double mass(const SpectralField& u) { return u.sobolev_norm(0.0); }

double momentum_L(const SpectralField& u, const SpectralField& v, const SystemParams& params) {
    const double v_l2_sq = l2_pairing(v, v).real();
    const SpectralField ux = u.derivative(1);
    const double im_u_ux = l2_pairing(u, ux).imag();  // Int Im(u conj(u_x))
    return params.alpha * v_l2_sq + 2.0 * params.gamma * im_u_ux;
}

std::pair<double, double> energy_E_with_residual(const SpectralField& u, const SpectralField& v,
                                                 const SystemParams& params) {
    const SpectralField ubar = u.conjugate();
    const SpectralField ux = u.derivative(1);
    const SpectralField vx = v.derivative(1);

    cplx total(0.0, 0.0);
    total += params.alpha * params.gamma * integral_of_product({&v, &u, &ubar});
    total += params.gamma * l2_pairing(ux, ux);
    total += 0.5 * params.alpha * l2_pairing(vx, vx);
    total -= params.alpha / 6.0 * integral_of_product({&v, &v, &v});
    total += 0.5 * params.beta * params.gamma * integral_of_product({&u, &ubar, &u, &ubar});
    return {total.real(), total.imag()};
}

double energy_E(const SpectralField& u, const SpectralField& v, const SystemParams& params) {
    return energy_E_with_residual(u, v, params).first;
}

std::pair<double, double> modified_functionals(const SpectralField& u, const SpectralField& v,
                                               const IOperatorSpec& spec,
                                               const SystemParams& params) {
    const SpectralField iu = apply_I(u, spec);
    const SpectralField iv = apply_I(v, spec);
    return {momentum_L(iu, iv, params), energy_E(iu, iv, params)};
}

namespace {
double safe_ratio(double lhs, double rhs) { return lhs == 0.0 ? 0.0 : lhs / rhs; }
}  // namespace

double AprioriReport::max_ratio() const {
    double m = 0.0;
    for (const auto& [name, value] : entries()) m = std::max(m, value);
    return m;
}

AprioriReport apriori_ratios(const SpectralField& u, const SpectralField& v,
                             const SystemParams& params) {
    if (!params.energy_coercive()) {
        throw std::invalid_argument("apriori_ratios: requires alpha*gamma > 0");
    }
    const double M = mass(u);
    const double L = std::abs(momentum_L(u, v, params));
    const double E = std::abs(energy_E(u, v, params));
    const double ux2 = l2_pairing(u.derivative(1), u.derivative(1)).real();
    const double vx2 = l2_pairing(v.derivative(1), v.derivative(1)).real();
    const double v2 = l2_pairing(v, v).real();
    const double uh1 = u.sobolev_norm(1.0);
    const double vh1 = v.sobolev_norm(1.0);

    const double l53 = std::pow(L, 5.0 / 3.0);
    const double m8 = std::pow(M, 8.0);

    AprioriReport r{};
    r.l1 = safe_ratio(L, v2 + M * std::sqrt(ux2));
    r.l2 = safe_ratio(v2, L + M * std::sqrt(ux2));
    r.e1 = safe_ratio(ux2 + vx2, E + l53 + m8 + 1.0);
    r.e2 = safe_ratio(E, ux2 + vx2 + l53 + m8 + 1.0);
    r.e3 = safe_ratio(E, ux2 + vx2 + std::pow(v2, 5.0 / 3.0) + std::pow(M, 10.0) + 1.0);
    r.e4 = safe_ratio(v2, L + M * std::sqrt(E) + std::pow(M, 6.0) + 1.0);
    r.e5 = safe_ratio(uh1 * uh1 + vh1 * vh1, E + l53 + m8 + 1.0);
    return r;
}

FunctionalReport functional_report(const SystemState& state, const IOperatorSpec& spec,
                                   const SystemParams& params) {
    FunctionalReport row;
    row.t = state.t;
    row.mass = mass(state.u);
    row.momentum_L = momentum_L(state.u, state.v, params);
    row.energy_E = energy_E(state.u, state.v, params);
    auto [ml, me] = modified_functionals(state.u, state.v, spec, params);
    row.modified_L = ml;
    row.modified_E = me;
    row.h1_u = state.u.sobolev_norm(1.0);
    row.h1_v = state.v.sobolev_norm(1.0);
    return row;
}

Observer make_functional_observer(std::vector<FunctionalReport>& out, const IOperatorSpec& spec,
                                  const SystemParams& params) {
    return [&out, spec, params](const SystemState& state) {
        out.push_back(functional_report(state, spec, params));
    };
}

}  // namespace nlskdv
