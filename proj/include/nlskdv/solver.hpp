#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "nlskdv/spectral_field.hpp"

namespace nlskdv {

/// Coupling constants of the short-wave/long-wave system
///   i u_t + u_xx = alpha u v + beta |u|^2 u
///   v_t + v_xxx + (1/2)(v^2)_x = gamma (|u|^2)_x
struct SystemParams {
    double alpha = 1.0;
    double beta = 1.0;
    double gamma = 1.0;

    bool energy_coercive() const { return alpha * gamma > 0.0; }
    bool resonant() const { return beta == 0.0; }
};

/// State at one time: complex short wave u, real mean-zero long wave v.
struct SystemState {
    double t = 0.0;
    SpectralField u;
    SpectralField v;

    SystemState(double time, SpectralField u_in, SpectralField v_in);
    void validate() const;
};

enum class Scheme { strang, oracle_rk4 };

struct SolverConfig {
    double dt = 1e-4;
    Scheme scheme = Scheme::strang;

    void validate() const;
};

/// Thrown when a step produces non-finite coefficients.
class InstabilityError : public std::runtime_error {
  public:
    explicit InstabilityError(double t);
    double time() const { return t_; }

  private:
    double t_;
};

/// Right-hand side of the evolution with dealiased nonlinear products:
///   du/dt = i u_xx - i (alpha uv + beta |u|^2 u)
///   dv/dt = -v_xxx - (1/2)(v^2)_x + gamma (|u|^2)_x
/// Every dv/dt term is an exact x-derivative, so its zero mode is exactly 0.
struct RhsValue {
    SpectralField du;
    SpectralField dv;
};
RhsValue rhs(const SystemState& state, const SystemParams& params);

/// Exact linear flow: u-hat(n) *= e^{-i n^2 dt}, v-hat(n) *= e^{+i n^3 dt}.
SystemState linear_propagate(const SystemState& state, double dt);

/// Strang step: half linear flow, classical 4-stage explicit substep on the
/// nonlinear-only vector field, half linear flow.
SystemState step_strang(const SystemState& state, double dt, const SystemParams& params);

/// Classical 4-stage explicit step on the full right-hand side (the
/// brute-force oracle; accurate only with tiny dt on the stiff n^3 phases).
SystemState step_rk4(const SystemState& state, double dt, const SystemParams& params);

using Observer = std::function<void(const SystemState&)>;

/// Repeated stepping over [t, t+T] in ceil(T/dt) uniform steps of size <= dt.
/// The observer, when given, fires on the initial state, every `stride`-th
/// step, and the final state. The oracle scheme enforces the documented
/// stability envelope dt * K^3 <= 50.
SystemState integrate(const SystemState& state, double T, const SolverConfig& config,
                      const SystemParams& params, const Observer& observer = nullptr,
                      std::size_t stride = 1);

}  // namespace nlskdv
