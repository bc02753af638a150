#include "nlskdv/random_fields.hpp"

#include <cmath>
#include <stdexcept>

namespace nlskdv {

std::uint64_t Rng::next_u64() {
    // splitmix64
    std::uint64_t z = (state_ += 0x9e3779b97f4a7c15ULL);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double Rng::uniform() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

Rng Rng::substream(std::uint64_t seed, std::uint64_t index) {
    Rng mix(seed ^ (0x632be59bd9b4e019ULL * (index + 1)));
    mix.next_u64();
    return mix;
}

namespace {

double profile(const FieldSpec& spec, int n) {
    const double a = std::abs(n);
    return spec.law == DecayLaw::exponential ? std::exp(-spec.rate * a)
                                             : std::pow(1.0 + a, -spec.rate);
}

}  // namespace

SpectralField random_complex_field(const Grid& grid, const FieldSpec& spec, Rng& rng) {
    SpectralField f(grid, false);
    const int k = spec.band >= 0 ? std::min(spec.band, grid.max_mode()) : grid.max_mode();
    for (int n = -k; n <= k; ++n) {
        const double amp = spec.amplitude * profile(spec, n) * (0.5 + 0.5 * rng.uniform());
        const double phase = kTwoPi * rng.uniform();
        f.set_coeff(n, std::polar(amp, phase));
    }
    return f;
}

SpectralField random_real_field(const Grid& grid, const FieldSpec& spec, Rng& rng) {
    SpectralField f(grid, true);
    const int k = spec.band >= 0 ? std::min(spec.band, grid.max_mode()) : grid.max_mode();
    for (int n = 1; n <= k; ++n) {
        const double amp = spec.amplitude * profile(spec, n) * (0.5 + 0.5 * rng.uniform());
        const double phase = kTwoPi * rng.uniform();
        const cplx c = std::polar(amp, phase);
        f.set_coeff(n, c);
        f.set_coeff(-n, std::conj(c));
    }
    return f;
}

SpectralField normalize_hs(const SpectralField& f, double s, double target) {
    const double norm = f.sobolev_norm(s);
    if (norm == 0.0) throw std::invalid_argument("normalize_hs: zero field");
    SpectralField out = f;
    out *= cplx(target / norm, 0.0);
    return out;
}

}  // namespace nlskdv
