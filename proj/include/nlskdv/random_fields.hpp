#pragma once

#include <cstdint>

#include "nlskdv/spectral_field.hpp"

namespace nlskdv {

/// Deterministic 64-bit generator (splitmix64). Distribution helpers are
/// hand-rolled so streams are stable across standard libraries; experiment
/// results must be byte-identical for a fixed seed.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next_u64();
    double uniform();  // [0, 1)
    double uniform(double lo, double hi);

    /// Independent substream for worker `index` of a seeded ensemble.
    static Rng substream(std::uint64_t seed, std::uint64_t index);

  private:
    std::uint64_t state_;
};

enum class DecayLaw { exponential, polynomial };

/// Random fields with |coeff(n)| = amplitude * profile(n) * jitter and
/// uniform phases; profile is e^{-rate |n|} or <n>^{-rate}.
struct FieldSpec {
    DecayLaw law = DecayLaw::exponential;
    double rate = 0.5;
    double amplitude = 1.0;
    int band = -1;  // restrict to |n| <= band when >= 0
};

SpectralField random_complex_field(const Grid& grid, const FieldSpec& spec, Rng& rng);

/// Real-valued (Hermitian) zero-mean field.
SpectralField random_real_field(const Grid& grid, const FieldSpec& spec, Rng& rng);

/// Scale a field so its H^s norm equals `target`.
SpectralField normalize_hs(const SpectralField& f, double s, double target = 1.0);

}  // namespace nlskdv
