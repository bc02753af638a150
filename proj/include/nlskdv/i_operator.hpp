#pragma once

#include "nlskdv/spectral_field.hpp"

namespace nlskdv {

enum class SymbolVariant { smooth, sharp };

/// The smoothing Fourier multiplier I_N^alpha: coeff(n) <- m(n/N)^alpha.
/// The symbol m equals 1 on |xi| <= 1 and |xi|^{-1} on |xi| >= 2; on the
/// transition band the smooth variant uses a monotone C^1 log-log cubic
/// Hermite blend, the sharp variant min(1, 1/|xi|).
struct IOperatorSpec {
    double N = 1.0;
    double alpha = 0.0;  // the continuation setup uses alpha = 1 - s
    SymbolVariant variant = SymbolVariant::smooth;

    void validate() const;
    bool inverse_regime() const { return alpha < 0.0; }

    static IOperatorSpec from_regularity(double N, double s,
                                         SymbolVariant variant = SymbolVariant::smooth) {
        return IOperatorSpec{N, 1.0 - s, variant};
    }
};

/// m(xi), even in xi, nonincreasing in |xi|, values in (0, 1].
double symbol_m(double xi, SymbolVariant variant = SymbolVariant::smooth);

/// Apply I_N^alpha to a field. Reality and zero-mean are preserved (the
/// symbol is even and m(0) = 1).
SpectralField apply_I(const SpectralField& f, const IOperatorSpec& spec);

}  // namespace nlskdv
