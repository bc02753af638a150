#include <doctest.h>

#include <cmath>
#include <string>
#include <vector>

#include "nlskdv/bourgain.hpp"

using namespace nlskdv;

namespace {

SpaceTimeField single_harmonic(const Grid& grid, std::size_t m_t, int n0, int k0,
                               Dispersion tag) {
    std::vector<cplx> spec(m_t * grid.size(), cplx(0.0, 0.0));
    const std::size_t row = static_cast<std::size_t>(k0 >= 0 ? k0 : k0 + static_cast<int>(m_t));
    const std::size_t col =
        static_cast<std::size_t>(n0 >= 0 ? n0 : n0 + static_cast<int>(grid.size()));
    spec[row * grid.size() + col] = 1.0;
    return SpaceTimeField::from_spectrum(grid, m_t, spec, 1.0, tag);
}

SpaceTimeField random_field(const Grid& grid, std::size_t m_t, std::uint64_t seed,
                            Dispersion tag) {
    Rng rng(seed);
    std::vector<cplx> spec(m_t * grid.size(), cplx(0.0, 0.0));
    const int kx = grid.max_mode();
    const int kt = static_cast<int>(m_t) / 2 - 1;
    for (int k = -kt; k <= kt; ++k) {
        const std::size_t row =
            static_cast<std::size_t>(k >= 0 ? k : k + static_cast<int>(m_t));
        for (int n = -kx; n <= kx; ++n) {
            const std::size_t col =
                static_cast<std::size_t>(n >= 0 ? n : n + static_cast<int>(grid.size()));
            const double amp = std::pow(1.0 + std::abs(n), -1.0) *
                               std::pow(1.0 + kTwoPi * std::abs(k), -1.0);
            spec[row * grid.size() + col] = std::polar(amp * (0.5 + 0.5 * rng.uniform()),
                                                       kTwoPi * rng.uniform());
        }
    }
    return SpaceTimeField::from_spectrum(grid, m_t, spec, 1.0, tag);
}

}  // namespace

TEST_CASE("xt_norm at b = reg = 0 is the lattice L2 norm") {
    const Grid grid(16);
    SpaceTimeField f = random_field(grid, 32, 7, Dispersion::schrodinger);
    double mean = 0.0;
    for (const auto& z : f.samples()) mean += std::norm(z);
    mean /= static_cast<double>(f.samples().size());
    const double l2 = std::sqrt(kTwoPi * 1.0 * mean);
    CHECK(xt_norm(f, 0.0, 0.0) == doctest::Approx(l2).epsilon(1e-12));
}

TEST_CASE("xt_norm requires a dispersion tag") {
    const Grid grid(16);
    SpaceTimeField f(grid, 16);
    CHECK_THROWS_AS(xt_norm(f, 0.0, 0.5), std::invalid_argument);
}

TEST_CASE("single-harmonic closed forms for xt and companion norms") {
    const Grid grid(16);
    const std::size_t m_t = 32;
    const int n0 = 3, k0 = -2;
    const double tau0 = kTwoPi * k0;

    SpaceTimeField fs = single_harmonic(grid, m_t, n0, k0, Dispersion::schrodinger);
    const double ws = 1.0 + std::abs(tau0 + n0 * n0);
    const double amp = std::sqrt(kTwoPi);
    for (double reg : {0.0, 1.0}) {
        for (double b : {-0.5, 0.375, 0.5}) {
            const double expect = amp * std::pow(1.0 + std::abs(n0), reg) * std::pow(ws, b);
            CHECK(xt_norm(fs, reg, b) == doctest::Approx(expect).epsilon(1e-10));
        }
    }
    const double comp = amp * std::pow(1.0 + std::abs(n0), 1.0) *
                        (std::pow(ws, -0.5) + 1.0 / ws);
    CHECK(companion_norm(fs, 1.0, CompanionSpace::Z) == doctest::Approx(comp).epsilon(1e-10));

    SpaceTimeField fa = single_harmonic(grid, m_t, n0, k0, Dispersion::airy);
    const double wa = 1.0 + std::abs(tau0 - static_cast<double>(n0) * n0 * n0);
    CHECK(xt_norm(fa, 0.0, 0.5) == doctest::Approx(amp * std::sqrt(wa)).epsilon(1e-10));
    const double compw = amp * (std::pow(wa, -0.5) + 1.0 / wa);
    CHECK(companion_norm(fa, 0.0, CompanionSpace::W) == doctest::Approx(compw).epsilon(1e-10));

    CHECK(companion_norm(fs, 1.0, CompanionSpace::Z) >= xt_norm(fs, 1.0, -0.5));
}

TEST_CASE("norm homogeneity and monotonicity in the exponents") {
    const Grid grid(16);
    SpaceTimeField f = random_field(grid, 32, 9, Dispersion::schrodinger);
    SpaceTimeField g = f;
    for (auto& z : g.samples()) z *= 2.0;
    CHECK(xt_norm(g, 0.7, 0.3) == doctest::Approx(2.0 * xt_norm(f, 0.7, 0.3)).epsilon(1e-13));
    CHECK(l4_norm(g) == doctest::Approx(2.0 * l4_norm(f)).epsilon(1e-13));

    double prev = xt_norm(f, 0.0, -0.5);
    for (double b : {-0.25, 0.0, 0.25, 0.5}) {
        const double cur = xt_norm(f, 0.0, b);
        CHECK(cur >= prev);
        prev = cur;
    }
    prev = xt_norm(f, -1.0, 0.375);
    for (double reg : {-0.5, 0.0, 0.5, 1.0}) {
        const double cur = xt_norm(f, reg, 0.375);
        CHECK(cur >= prev);
        prev = cur;
    }
}

TEST_CASE("cutoff profile shape") {
    const CutoffProfile psi{1.0};
    CHECK(psi(0.0) == 1.0);
    CHECK(psi(1.0) == 1.0);
    CHECK(psi(-0.7) == 1.0);
    CHECK(psi(2.0) == 0.0);
    CHECK(psi(2.4) == 0.0);
    const double mid = psi(1.5);
    CHECK(mid > 0.0);
    CHECK(mid < 1.0);
    CHECK(psi(1.5) == psi(-1.5));
    const CutoffProfile half{0.5};
    CHECK(half(0.4) == 1.0);
    CHECK(half(1.1) == 0.0);
}

TEST_CASE("modulated free evolution matches a direct 1-d transform oracle") {
    const Grid grid(16);
    const std::size_t m_t = 64;
    SpectralField u0(grid);
    u0.set_coeff(1, 1.0);

    SpaceTimeField f = apply_cutoff(free_evolution(u0, Dispersion::schrodinger, m_t),
                                    CutoffProfile{1.0});

    // oracle: the scalar time signal psi(t~) e^{-i t} transformed by a direct
    // O(M_t^2) DFT, then the weighted sum assembled by hand
    const double b = 0.375;
    const CutoffProfile psi{1.0};
    double expect_sq = 0.0;
    for (int k = -static_cast<int>(m_t) / 2 + 1; k <= static_cast<int>(m_t) / 2 - 1; ++k) {
        cplx g(0.0, 0.0);
        for (std::size_t l = 0; l < m_t; ++l) {
            const double t = static_cast<double>(l) / static_cast<double>(m_t);
            const double tc = t >= 0.5 ? t - 1.0 : t;
            g += psi(tc) * std::polar(1.0, -t) *
                 std::polar(1.0, -kTwoPi * static_cast<double>(k) * t);
        }
        g /= static_cast<double>(m_t);
        const double w = 1.0 + std::abs(kTwoPi * static_cast<double>(k) + 1.0);
        expect_sq += std::pow(w, 2.0 * b) * std::norm(g);
    }
    const double expect = std::sqrt(kTwoPi * expect_sq);
    CHECK(xt_norm(f, 0.0, b) == doctest::Approx(expect).epsilon(1e-6));
}

TEST_CASE("strichartz ratios: deterministic, finite, stable under refinement") {
    const Grid grid(16);
    const StrichartzReport a = strichartz_ratio(40, grid, 32, 123);
    const StrichartzReport b = strichartz_ratio(40, grid, 32, 123);
    CHECK(a.schrodinger.max == b.schrodinger.max);
    CHECK(a.airy.median == b.airy.median);
    CHECK(a.schrodinger.max > 0.0);
    CHECK(std::isfinite(a.schrodinger.max));
    CHECK(a.schrodinger.q90 <= a.schrodinger.max);

    // 200 draws: the max ratio stays within a factor 2 when both lattice
    // dimensions double
    const StrichartzReport base = strichartz_ratio(200, Grid(32), 64, 123);
    const StrichartzReport fine = strichartz_ratio(200, Grid(64), 128, 123);
    const double grow_s = fine.schrodinger.max / base.schrodinger.max;
    const double grow_a = fine.airy.max / base.airy.max;
    CHECK(grow_s < 2.0);
    CHECK(grow_s > 0.5);
    CHECK(grow_a < 2.0);
    CHECK(grow_a > 0.5);
}

TEST_CASE("a deterministic single harmonic yields a finite reproducible ratio") {
    const Grid grid(16);
    SpaceTimeField f = single_harmonic(grid, 32, 2, 1, Dispersion::schrodinger);
    const double r1 = l4_norm(apply_cutoff(f, CutoffProfile{1.0})) / xt_norm(f, 0.0, 0.375);
    const double r2 = l4_norm(apply_cutoff(f, CutoffProfile{1.0})) / xt_norm(f, 0.0, 0.375);
    CHECK(r1 == r2);
    CHECK(r1 > 0.0);
    CHECK(std::isfinite(r1));
}

TEST_CASE("estimate_ratio: in-hypothesis runs are bounded and deterministic") {
    const Grid grid(16);
    for (LemmaId id : {LemmaId::u2u, LemmaId::dv2, LemmaId::uv, LemmaId::du2}) {
        LemmaParams p{1.0, 1.0, 0.5, 0.375};
        const LemmaRatioReport rep = estimate_ratio(id, p, 30, grid, 32, 99);
        CHECK(rep.ratios.count == 30);
        CHECK(rep.ratios.max > 0.0);
        CHECK(rep.ratios.max < 1e3);
        const LemmaRatioReport again = estimate_ratio(id, p, 30, grid, 32, 99);
        CHECK(rep.ratios.max == again.ratios.max);
    }

    // k = s = 1 sits inside the uv hypothesis k - s <= 3/2: 100 draws bounded
    const LemmaRatioReport uv100 =
        estimate_ratio(LemmaId::uv, {1.0, 1.0, 0.5, 0.375}, 100, grid, 32, 7);
    CHECK(uv100.ratios.count == 100);
    CHECK(std::isfinite(uv100.ratios.max));
    CHECK(uv100.ratios.max < 1e3);
}

TEST_CASE("estimate_ratio rejects out-of-hypothesis parameters by name") {
    const Grid grid(16);
    auto expect_reject = [&](LemmaId id, LemmaParams p, const std::string& needle) {
        try {
            estimate_ratio(id, p, 5, grid, 32, 1);
            FAIL("expected rejection");
        } catch (const std::invalid_argument& e) {
            CHECK(std::string(e.what()).find(needle) != std::string::npos);
        }
    };
    expect_reject(LemmaId::uv, {3.0, 1.0, 0.5, 0.375}, "k - s <= 3/2");
    expect_reject(LemmaId::uv, {0.5, -0.1, 0.5, 0.375}, "s >= 0");
    expect_reject(LemmaId::u2u, {-0.5, 0.0, 0.5, 0.375}, "k >= 0");
    expect_reject(LemmaId::dv2, {0.0, -0.6, 0.5, 0.375}, "s >= -1/2");
    expect_reject(LemmaId::du2, {0.2, 1.0, 0.5, 0.375}, "1 + s <= 4k");
    expect_reject(LemmaId::du2, {1.0, 1.8, 0.5, 0.375}, "k - s >= -1/2");
    expect_reject(LemmaId::time_loc, {0.0, 0.0, 0.375, 0.5}, "b' <= b");
}

TEST_CASE("time localization gains a positive power of T") {
    const Grid grid(16);
    LemmaParams p{0.0, 0.0, 0.5, 0.375};
    const LemmaRatioReport rep = estimate_ratio(LemmaId::time_loc, p, 20, grid, 64, 7);
    REQUIRE(rep.time_loc.has_value());
    CHECK(rep.time_loc->exponent_median >= 0.025);  // theory predicts 1/8
    CHECK(rep.time_loc->windows.size() == 6);
    CHECK(rep.time_loc->median_ratios.size() == 6);
    // ratios shrink as the window shrinks
    CHECK(rep.time_loc->median_ratios.back() < rep.time_loc->median_ratios.front());
}
