#include "nlskdv/i_operator.hpp"

#include <cmath>
#include <stdexcept>

namespace nlskdv {

void IOperatorSpec::validate() const {
    if (!(N >= 1.0)) throw std::invalid_argument("IOperatorSpec: N must be >= 1");
    if (!std::isfinite(alpha)) throw std::invalid_argument("IOperatorSpec: alpha must be finite");
}

double symbol_m(double xi, SymbolVariant variant) {
    const double a = std::abs(xi);
    if (a <= 1.0) return 1.0;
    if (a >= 2.0) return 1.0 / a;
    if (variant == SymbolVariant::sharp) return 1.0 / a;
    // log-log blend: m = exp(-h(L) L) with L = log|xi| and h the cubic
    // Hermite on [0, log 2] with h(0)=0, h(log2)=1, h'=0 at both ends.
    const double L = std::log(a);
    const double tau = L / std::log(2.0);
    const double h = tau * tau * (3.0 - 2.0 * tau);
    return std::exp(-h * L);
}

SpectralField apply_I(const SpectralField& f, const IOperatorSpec& spec) {
    spec.validate();
    SpectralField out(f.grid(), f.real_tagged());
    const int k = f.grid().max_mode();
    for (int n = -k; n <= k; ++n) {
        const double m = symbol_m(static_cast<double>(n) / spec.N, spec.variant);
        const double factor = spec.alpha == 0.0 ? 1.0 : std::pow(m, spec.alpha);
        out.set_coeff(n, factor * f.coeff(n));
    }
    return out;
}

}  // namespace nlskdv
