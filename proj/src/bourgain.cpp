#include "nlskdv/bourgain.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace nlskdv {

namespace {

double angle_bracket(double x) { return 1.0 + std::abs(x); }

// dispersion distance tau + n^2 (schrodinger), tau - n^3 (airy), tau (none)
double dispersion_distance(Dispersion tag, double tau, int n) {
    const double nd = static_cast<double>(n);
    switch (tag) {
        case Dispersion::schrodinger: return tau + nd * nd;
        case Dispersion::airy: return tau - nd * nd * nd;
        case Dispersion::none: return tau;
    }
    return tau;
}

}  // namespace

SpaceTimeField::SpaceTimeField(const Grid& grid, std::size_t m_t, double t_window,
                               std::optional<Dispersion> tag)
    : grid_(grid), m_t_(m_t), t_window_(t_window), tag_(tag),
      samples_(m_t * grid.size(), cplx(0.0, 0.0)) {
    if (m_t < 4 || m_t % 2 != 0) {
        throw std::invalid_argument("SpaceTimeField: M_t must be even and >= 4");
    }
    if (!(t_window > 0.0)) throw std::invalid_argument("SpaceTimeField: window must be positive");
}

SpaceTimeField SpaceTimeField::from_spectrum(const Grid& grid, std::size_t m_t,
                                             const std::vector<cplx>& coeffs, double t_window,
                                             std::optional<Dispersion> tag) {
    SpaceTimeField f(grid, m_t, t_window, tag);
    if (coeffs.size() != f.samples_.size()) {
        throw std::invalid_argument("SpaceTimeField: spectrum size mismatch");
    }
    f.samples_ = coeffs;
    const std::size_t m = grid.size();
    for (std::size_t j = 0; j < m; ++j) f.samples_[(m_t / 2) * m + j] = 0.0;
    for (std::size_t l = 0; l < m_t; ++l) f.samples_[l * m + m / 2] = 0.0;
    fft_inverse_2d(f.samples_, m_t, grid.size());
    return f;
}

std::vector<cplx> SpaceTimeField::spectrum() const {
    std::vector<cplx> c = samples_;
    fft_forward_2d(c, m_t_, grid_.size());
    const std::size_t m = grid_.size();
    for (std::size_t j = 0; j < m; ++j) c[(m_t_ / 2) * m + j] = 0.0;  // time Nyquist
    for (std::size_t l = 0; l < m_t_; ++l) c[l * m + m / 2] = 0.0;    // space Nyquist
    return c;
}

double CutoffProfile::operator()(double t) const {
    const double a = std::abs(t / scale);
    if (a <= 1.0) return 1.0;
    if (a >= 2.0) return 0.0;
    const double r = a - 1.0;
    return std::exp(1.0 - 1.0 / (1.0 - r * r));
}

SpaceTimeField apply_cutoff(const SpaceTimeField& f, const CutoffProfile& psi) {
    SpaceTimeField out = f;
    const double tw = f.window();
    for (std::size_t l = 0; l < f.time_size(); ++l) {
        double t = f.time_node(l);
        if (t >= tw / 2.0) t -= tw;  // center the window
        const double w = psi(t);
        for (std::size_t j = 0; j < f.grid().size(); ++j) out.at(l, j) *= w;
    }
    return out;
}

namespace {

// shared iteration over active lattice modes
template <typename Fn>
void for_active_modes(const SpaceTimeField& f, const std::vector<cplx>& spec, Fn&& fn) {
    const std::size_t m = f.grid().size();
    const int kx = f.grid().max_mode();
    const int kt = static_cast<int>(f.time_size()) / 2 - 1;
    for (int k = -kt; k <= kt; ++k) {
        const std::size_t row =
            static_cast<std::size_t>(k >= 0 ? k : k + static_cast<int>(f.time_size()));
        const double tau = kTwoPi * static_cast<double>(k) / f.window();
        for (int n = -kx; n <= kx; ++n) {
            const std::size_t col = static_cast<std::size_t>(n >= 0 ? n : n + static_cast<int>(m));
            fn(n, tau, spec[row * m + col]);
        }
    }
}

double xt_norm_with(const SpaceTimeField& f, double reg, double b, Dispersion tag) {
    const std::vector<cplx> spec = f.spectrum();
    double sum = 0.0;
    for_active_modes(f, spec, [&](int n, double tau, cplx c) {
        const double wn = std::pow(angle_bracket(n), 2.0 * reg);
        const double wt = std::pow(angle_bracket(dispersion_distance(tag, tau, n)), 2.0 * b);
        sum += wn * wt * std::norm(c);
    });
    return std::sqrt(kTwoPi * f.window() * sum);
}

}  // namespace

double xt_norm(const SpaceTimeField& f, double reg, double b) {
    if (!f.dispersion()) throw std::invalid_argument("xt_norm: dispersion tag not set");
    return xt_norm_with(f, reg, b, *f.dispersion());
}

double companion_norm(const SpaceTimeField& f, double reg, CompanionSpace space) {
    const Dispersion tag = space == CompanionSpace::Z ? Dispersion::schrodinger : Dispersion::airy;
    const double xt_part = xt_norm_with(f, reg, -0.5, tag);

    const std::vector<cplx> spec = f.spectrum();
    const int kx = f.grid().max_mode();
    std::vector<double> per_mode(static_cast<std::size_t>(2 * kx + 1), 0.0);
    for_active_modes(f, spec, [&](int n, double tau, cplx c) {
        const double w = std::pow(angle_bracket(n), reg) /
                         angle_bracket(dispersion_distance(tag, tau, n));
        per_mode[static_cast<std::size_t>(n + kx)] += w * std::abs(c);
    });
    double sum = 0.0;
    for (double s : per_mode) sum += s * s;
    return xt_part + std::sqrt(kTwoPi * f.window() * sum);
}

double l4_norm(const SpaceTimeField& f) {
    double sum = 0.0;
    for (const auto& z : f.samples()) {
        const double a2 = std::norm(z);
        sum += a2 * a2;
    }
    const double mean = sum / static_cast<double>(f.samples().size());
    return std::pow(kTwoPi * f.window() * mean, 0.25);
}

SpaceTimeField free_evolution(const SpectralField& data, Dispersion tag, std::size_t m_t,
                              double t_window) {
    SpaceTimeField f(data.grid(), m_t, t_window, tag);
    const int kx = data.grid().max_mode();
    for (std::size_t l = 0; l < m_t; ++l) {
        const double t = f.time_node(l);
        for (std::size_t j = 0; j < data.grid().size(); ++j) {
            cplx val(0.0, 0.0);
            const double x = data.grid().node(j);
            for (int n = -kx; n <= kx; ++n) {
                const double nd = static_cast<double>(n);
                const double phase = tag == Dispersion::schrodinger ? -nd * nd * t
                                                                    : nd * nd * nd * t;
                val += data.coeff(n) * std::polar(1.0, nd * x + phase);
            }
            f.at(l, j) = val;
        }
    }
    return f;
}

namespace {

RatioStats stats_from(std::vector<double> values) {
    RatioStats s;
    s.count = values.size();
    if (values.empty()) return s;
    std::sort(values.begin(), values.end());
    s.max = values.back();
    s.median = values[values.size() / 2];
    s.q90 = values[static_cast<std::size_t>(0.9 * static_cast<double>(values.size() - 1))];
    return s;
}

// Random field with |c(n,k)| ~ <n>^{-a} <tau_k>^{-c}, uniform phases; decay
// exponents drawn per field from [0.6, 1.5].
SpaceTimeField random_st_field(const Grid& grid, std::size_t m_t, Rng& rng, Dispersion tag,
                               bool zero_x_mean) {
    const double a = rng.uniform(0.6, 1.5);
    const double c = rng.uniform(0.6, 1.5);
    const std::size_t m = grid.size();
    std::vector<cplx> spec(m_t * m, cplx(0.0, 0.0));
    const int kx = grid.max_mode();
    const int kt = static_cast<int>(m_t) / 2 - 1;
    for (int k = -kt; k <= kt; ++k) {
        const std::size_t row = static_cast<std::size_t>(k >= 0 ? k : k + static_cast<int>(m_t));
        const double tau = kTwoPi * static_cast<double>(k);
        for (int n = -kx; n <= kx; ++n) {
            if (zero_x_mean && n == 0) continue;
            const std::size_t col = static_cast<std::size_t>(n >= 0 ? n : n + static_cast<int>(m));
            const double amp = std::pow(angle_bracket(n), -a) * std::pow(angle_bracket(tau), -c) *
                               (0.5 + 0.5 * rng.uniform());
            spec[row * m + col] = std::polar(amp, kTwoPi * rng.uniform());
        }
    }
    return SpaceTimeField::from_spectrum(grid, m_t, spec, 1.0, tag);
}

SpaceTimeField pointwise_product(const SpaceTimeField& a, const SpaceTimeField& b,
                                 std::optional<Dispersion> tag) {
    SpaceTimeField out = a;
    for (std::size_t i = 0; i < out.samples().size(); ++i) out.samples()[i] *= b.samples()[i];
    if (tag) out.set_dispersion(*tag);
    return out;
}

SpaceTimeField conj_field(const SpaceTimeField& a) {
    SpaceTimeField out = a;
    for (auto& z : out.samples()) z = std::conj(z);
    return out;
}

SpaceTimeField x_derivative(const SpaceTimeField& f) {
    std::vector<cplx> spec = f.samples();
    fft_forward_2d(spec, f.time_size(), f.grid().size());
    const std::size_t m = f.grid().size();
    const int kx = f.grid().max_mode();
    std::vector<cplx> out(spec.size(), cplx(0.0, 0.0));
    for (std::size_t l = 0; l < f.time_size(); ++l) {
        for (int n = -kx; n <= kx; ++n) {
            const std::size_t col = static_cast<std::size_t>(n >= 0 ? n : n + static_cast<int>(m));
            out[l * m + col] = cplx(0.0, static_cast<double>(n)) * spec[l * m + col];
        }
    }
    fft_inverse_2d(out, f.time_size(), f.grid().size());
    SpaceTimeField g = f;
    g.samples() = std::move(out);
    return g;
}

void reject(const std::string& lemma, const std::string& constraint) {
    throw std::invalid_argument("estimate_ratio(" + lemma + "): hypothesis violated: " +
                                constraint);
}

}  // namespace

StrichartzReport strichartz_ratio(std::size_t sample_count, const Grid& grid, std::size_t m_t,
                                  std::uint64_t seed) {
    if (sample_count < 1) throw std::invalid_argument("strichartz_ratio: sample_count >= 1");
    std::vector<double> rs, ra;
    const CutoffProfile psi{1.0};
    for (std::size_t i = 0; i < sample_count; ++i) {
        Rng rng = Rng::substream(seed, i);
        SpaceTimeField f = random_st_field(grid, m_t, rng, Dispersion::schrodinger, false);
        rs.push_back(l4_norm(apply_cutoff(f, psi)) / xt_norm(f, 0.0, 0.375));
        SpaceTimeField g = random_st_field(grid, m_t, rng, Dispersion::airy, false);
        ra.push_back(l4_norm(apply_cutoff(g, psi)) / xt_norm(g, 0.0, 1.0 / 3.0));
    }
    return {stats_from(std::move(rs)), stats_from(std::move(ra))};
}

std::string lemma_name(LemmaId id) {
    switch (id) {
        case LemmaId::u2u: return "u2u";
        case LemmaId::dv2: return "dv2";
        case LemmaId::uv: return "uv";
        case LemmaId::du2: return "du2";
        case LemmaId::time_loc: return "time_loc";
    }
    return "?";
}

LemmaRatioReport estimate_ratio(LemmaId lemma, const LemmaParams& p, std::size_t sample_count,
                                const Grid& grid, std::size_t m_t, std::uint64_t seed) {
    if (sample_count < 1) throw std::invalid_argument("estimate_ratio: sample_count >= 1");
    LemmaRatioReport report{lemma, p, {}, std::nullopt};
    std::vector<double> ratios;

    switch (lemma) {
        case LemmaId::u2u: {
            if (!(p.k >= 0.0)) reject("u2u", "k >= 0");
            for (std::size_t i = 0; i < sample_count; ++i) {
                Rng rng = Rng::substream(seed, i);
                auto u = random_st_field(grid, m_t, rng, Dispersion::schrodinger, false);
                auto v = random_st_field(grid, m_t, rng, Dispersion::schrodinger, false);
                auto w = random_st_field(grid, m_t, rng, Dispersion::schrodinger, false);
                auto prod = pointwise_product(pointwise_product(u, v, std::nullopt),
                                              conj_field(w), Dispersion::schrodinger);
                const double lhs = companion_norm(prod, p.k, CompanionSpace::Z);
                const double rhs = xt_norm(u, p.k, 0.375) * xt_norm(v, p.k, 0.375) *
                                   xt_norm(w, p.k, 0.375);
                ratios.push_back(lhs / rhs);
            }
            break;
        }
        case LemmaId::dv2: {
            if (!(p.s >= -0.5)) reject("dv2", "s >= -1/2");
            for (std::size_t i = 0; i < sample_count; ++i) {
                Rng rng = Rng::substream(seed, i);
                auto v1 = random_st_field(grid, m_t, rng, Dispersion::airy, true);
                auto v2 = random_st_field(grid, m_t, rng, Dispersion::airy, true);
                auto prod = x_derivative(pointwise_product(v1, v2, Dispersion::airy));
                const double lhs = companion_norm(prod, p.s, CompanionSpace::W);
                const double rhs = xt_norm(v1, p.s, 1.0 / 3.0) * xt_norm(v2, p.s, 0.5) +
                                   xt_norm(v1, p.s, 0.5) * xt_norm(v2, p.s, 1.0 / 3.0);
                ratios.push_back(lhs / rhs);
            }
            break;
        }
        case LemmaId::uv: {
            if (!(p.s >= 0.0)) reject("uv", "s >= 0");
            if (!(p.k - p.s <= 1.5)) reject("uv", "k - s <= 3/2");
            for (std::size_t i = 0; i < sample_count; ++i) {
                Rng rng = Rng::substream(seed, i);
                auto u = random_st_field(grid, m_t, rng, Dispersion::schrodinger, false);
                auto v = random_st_field(grid, m_t, rng, Dispersion::airy, false);
                auto prod = pointwise_product(u, v, Dispersion::schrodinger);
                const double lhs = companion_norm(prod, p.k, CompanionSpace::Z);
                const double rhs = xt_norm(u, p.k, 0.375) * xt_norm(v, p.s, 0.5) +
                                   xt_norm(u, p.k, 0.5) * xt_norm(v, p.s, 1.0 / 3.0);
                ratios.push_back(lhs / rhs);
            }
            break;
        }
        case LemmaId::du2: {
            if (!(1.0 + p.s <= 4.0 * p.k)) reject("du2", "1 + s <= 4k");
            if (!(p.k - p.s >= -0.5)) reject("du2", "k - s >= -1/2");
            for (std::size_t i = 0; i < sample_count; ++i) {
                Rng rng = Rng::substream(seed, i);
                auto u1 = random_st_field(grid, m_t, rng, Dispersion::schrodinger, false);
                auto u2 = random_st_field(grid, m_t, rng, Dispersion::schrodinger, false);
                auto prod = x_derivative(
                    pointwise_product(u1, conj_field(u2), Dispersion::airy));
                const double lhs = companion_norm(prod, p.s, CompanionSpace::W);
                const double rhs = xt_norm(u1, p.k, 0.375) * xt_norm(u2, p.k, 0.5) +
                                   xt_norm(u1, p.k, 0.5) * xt_norm(u2, p.k, 0.375);
                ratios.push_back(lhs / rhs);
            }
            break;
        }
        case LemmaId::time_loc: {
            // b = 1/2 is admitted as the boundary case the experiments use
            if (!(p.bp > -0.5 && p.bp <= p.b && p.b <= 0.5)) {
                reject("time_loc", "-1/2 < b' <= b <= 1/2");
            }
            TimeLocFit fit;
            for (int j = 1; j <= 6; ++j) fit.windows.push_back(std::pow(2.0, -j));
            std::vector<std::vector<double>> per_window(fit.windows.size());
            std::vector<double> exponents;
            for (std::size_t i = 0; i < sample_count; ++i) {
                Rng rng = Rng::substream(seed, i);
                auto f = random_st_field(grid, m_t, rng, Dispersion::schrodinger, false);
                const double denom = xt_norm(f, p.k, p.b);
                double sx = 0, sy = 0, sxx = 0, sxy = 0;
                for (std::size_t w = 0; w < fit.windows.size(); ++w) {
                    const double T = fit.windows[w];
                    const double lhs = xt_norm(apply_cutoff(f, CutoffProfile{T}), p.k, p.bp);
                    const double raw = lhs / denom;
                    per_window[w].push_back(raw);
                    ratios.push_back(raw / std::pow(T, p.b - p.bp));
                    const double lx = std::log(T), ly = std::log(raw);
                    sx += lx; sy += ly; sxx += lx * lx; sxy += lx * ly;
                }
                const double nw = static_cast<double>(fit.windows.size());
                exponents.push_back((nw * sxy - sx * sy) / (nw * sxx - sx * sx));
            }
            std::sort(exponents.begin(), exponents.end());
            fit.exponent_min = exponents.front();
            fit.exponent_median = exponents[exponents.size() / 2];
            for (auto& w : per_window) {
                std::sort(w.begin(), w.end());
                fit.median_ratios.push_back(w[w.size() / 2]);
            }
            report.time_loc = fit;
            break;
        }
    }
    report.ratios = stats_from(std::move(ratios));
    return report;
}

}  // namespace nlskdv
