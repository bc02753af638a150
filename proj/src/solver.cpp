#include "nlskdv/solver.hpp"

#include <cmath>
#include <utility>

namespace nlskdv {

SystemState::SystemState(double time, SpectralField u_in, SpectralField v_in)
    : t(time), u(std::move(u_in)), v(std::move(v_in)) {
    validate();
}

void SystemState::validate() const {
    if (!(u.grid() == v.grid())) throw std::invalid_argument("SystemState: u, v on mixed grids");
    if (!v.real_tagged()) throw std::invalid_argument("SystemState: v must be real-tagged");
    if (v.coeff(0) != cplx(0.0, 0.0)) {
        throw std::invalid_argument("SystemState: v must have zero mean");
    }
}

void SolverConfig::validate() const {
    if (!(dt > 0.0)) throw std::invalid_argument("SolverConfig: dt must be positive");
}

InstabilityError::InstabilityError(double t)
    : std::runtime_error("numerical instability at t = " + std::to_string(t)), t_(t) {}

namespace {

struct Deriv {
    SpectralField du;
    SpectralField dv;
};

Deriv nonlinear_rhs(const SpectralField& u, const SpectralField& v, const SystemParams& p) {
    const SpectralField ubar = u.conjugate();
    SpectralField uv = dealiased_product({&u, &v});
    SpectralField u2u = dealiased_product({&u, &u, &ubar});
    SpectralField du = cplx(0.0, -p.alpha) * uv + cplx(0.0, -p.beta) * u2u;

    SpectralField v2 = dealiased_product({&v, &v});
    SpectralField uu = squared_modulus(u);
    SpectralField dv = (cplx(-0.5, 0.0) * v2 + cplx(p.gamma, 0.0) * uu).derivative(1);
    dv.set_real_tag(true);
    return {std::move(du), std::move(dv)};
}

Deriv full_rhs(const SpectralField& u, const SpectralField& v, const SystemParams& p) {
    Deriv nl = nonlinear_rhs(u, v, p);
    nl.du += cplx(0.0, 1.0) * u.derivative(2);
    nl.du.set_real_tag(false);
    SpectralField v3 = v.derivative(3);
    nl.dv -= v3;
    nl.dv.set_real_tag(true);
    return nl;
}

using RhsFn = Deriv (*)(const SpectralField&, const SpectralField&, const SystemParams&);

// Classical 4-stage explicit step for either the nonlinear-only or the full
// vector field.
std::pair<SpectralField, SpectralField> rk4_step(const SpectralField& u, const SpectralField& v,
                                                 double dt, const SystemParams& p, RhsFn f) {
    Deriv k1 = f(u, v, p);
    Deriv k2 = f(u + cplx(dt / 2) * k1.du, v + cplx(dt / 2) * k1.dv, p);
    Deriv k3 = f(u + cplx(dt / 2) * k2.du, v + cplx(dt / 2) * k2.dv, p);
    Deriv k4 = f(u + cplx(dt) * k3.du, v + cplx(dt) * k3.dv, p);
    const cplx w(dt / 6.0);
    SpectralField un = u + w * (k1.du + cplx(2.0) * k2.du + cplx(2.0) * k3.du + k4.du);
    SpectralField vn = v + w * (k1.dv + cplx(2.0) * k2.dv + cplx(2.0) * k3.dv + k4.dv);
    vn.set_real_tag(true);
    return {std::move(un), std::move(vn)};
}

SpectralField half_linear_u(const SpectralField& u, double dt) {
    SpectralField out(u.grid(), false);
    const int k = u.grid().max_mode();
    for (int n = -k; n <= k; ++n) {
        const double phase = -static_cast<double>(n) * static_cast<double>(n) * dt;
        out.set_coeff(n, std::polar(1.0, phase) * u.coeff(n));
    }
    return out;
}

SpectralField half_linear_v(const SpectralField& v, double dt) {
    SpectralField out(v.grid(), v.real_tagged());
    const int k = v.grid().max_mode();
    for (int n = -k; n <= k; ++n) {
        const double nd = static_cast<double>(n);
        out.set_coeff(n, std::polar(1.0, nd * nd * nd * dt) * v.coeff(n));
    }
    return out;
}

void check_step(const SpectralField& u, const SpectralField& v, double t) {
    if (!u.all_finite() || !v.all_finite()) throw InstabilityError(t);
    // every dv/dt term is an exact x-derivative, so this holds bit-exactly
    if (v.coeff(0) != cplx(0.0, 0.0)) {
        throw std::logic_error("solver: v zero mode left 0 at t = " + std::to_string(t));
    }
}

}  // namespace

RhsValue rhs(const SystemState& state, const SystemParams& params) {
    Deriv d = full_rhs(state.u, state.v, params);
    return {std::move(d.du), std::move(d.dv)};
}

SystemState linear_propagate(const SystemState& state, double dt) {
    return SystemState(state.t + dt, half_linear_u(state.u, dt), half_linear_v(state.v, dt));
}

SystemState step_strang(const SystemState& state, double dt, const SystemParams& params) {
    SpectralField u = half_linear_u(state.u, dt / 2.0);
    SpectralField v = half_linear_v(state.v, dt / 2.0);
    auto [un, vn] = rk4_step(u, v, dt, params, nonlinear_rhs);
    un = half_linear_u(un, dt / 2.0);
    vn = half_linear_v(vn, dt / 2.0);
    check_step(un, vn, state.t + dt);
    return SystemState(state.t + dt, std::move(un), std::move(vn));
}

SystemState step_rk4(const SystemState& state, double dt, const SystemParams& params) {
    auto [un, vn] = rk4_step(state.u, state.v, dt, params, full_rhs);
    check_step(un, vn, state.t + dt);
    return SystemState(state.t + dt, std::move(un), std::move(vn));
}

SystemState integrate(const SystemState& state, double T, const SolverConfig& config,
                      const SystemParams& params, const Observer& observer, std::size_t stride) {
    config.validate();
    state.validate();
    if (!(T > 0.0)) throw std::invalid_argument("integrate: T must be positive");
    if (T / config.dt > 1e8) throw std::invalid_argument("integrate: T/dt exceeds 1e8");
    if (config.scheme == Scheme::oracle_rk4) {
        const double k = static_cast<double>(state.u.grid().max_mode());
        if (config.dt * k * k * k > 50.0) {
            throw std::invalid_argument("integrate: oracle stability envelope dt*K^3 <= 50 violated");
        }
    }
    const std::size_t nsteps = static_cast<std::size_t>(std::ceil(T / config.dt - 1e-9));
    const double h = T / static_cast<double>(nsteps);
    if (stride == 0) stride = 1;

    SystemState current = state;
    if (observer) observer(current);
    for (std::size_t i = 1; i <= nsteps; ++i) {
        current = config.scheme == Scheme::strang ? step_strang(current, h, params)
                                                  : step_rk4(current, h, params);
        // uniform-step time to avoid drift in t bookkeeping
        current.t = state.t + static_cast<double>(i) * h;
        if (observer && (i % stride == 0 || i == nsteps)) observer(current);
    }
    return current;
}

}  // namespace nlskdv
