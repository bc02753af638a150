#include "nlskdv/spectral_field.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace nlskdv {

Grid::Grid(std::size_t m) : m_(m) {
    if (m < 8 || m % 2 != 0) {
        throw std::invalid_argument("Grid: point count must be even and >= 8");
    }
}

SpectralField::SpectralField(const Grid& grid, bool real_tag)
    : grid_(grid), real_tag_(real_tag), c_(grid.size(), cplx(0.0, 0.0)) {}

std::size_t SpectralField::index_of(int n) const {
    const int m = static_cast<int>(grid_.size());
    if (std::abs(n) > grid_.max_mode()) {
        throw std::out_of_range("SpectralField: mode outside active range");
    }
    return static_cast<std::size_t>(n >= 0 ? n : n + m);
}

cplx SpectralField::coeff(int n) const { return c_[index_of(n)]; }

void SpectralField::set_coeff(int n, cplx value) { c_[index_of(n)] = value; }

SpectralField SpectralField::from_samples(const Grid& grid, std::span<const cplx> samples,
                                          bool real_tag) {
    if (samples.size() != grid.size()) {
        throw std::invalid_argument("forward_transform: samples length does not match grid");
    }
    SpectralField f(grid, real_tag);
    f.c_.assign(samples.begin(), samples.end());
    fft_forward(f.c_);
    f.c_[grid.size() / 2] = 0.0;  // Nyquist excluded
    return f;
}

SpectralField SpectralField::from_real_samples(const Grid& grid, std::span<const double> samples) {
    if (samples.size() != grid.size()) {
        throw std::invalid_argument("forward_transform: samples length does not match grid");
    }
    std::vector<cplx> buf(samples.size());
    std::transform(samples.begin(), samples.end(), buf.begin(),
                   [](double x) { return cplx(x, 0.0); });
    return from_samples(grid, buf, /*real_tag=*/true);
}

std::vector<cplx> SpectralField::samples() const {
    std::vector<cplx> buf = c_;
    fft_inverse(buf);
    return buf;
}

SpectralField SpectralField::derivative(int order) const {
    if (order < 1) throw std::invalid_argument("derivative: order must be positive");
    SpectralField out(grid_, real_tag_);
    const int k = grid_.max_mode();
    for (int n = -k; n <= k; ++n) {
        cplx mult = 1.0;
        const cplx in(0.0, static_cast<double>(n));
        for (int j = 0; j < order; ++j) mult *= in;
        out.c_[out.index_of(n)] = mult * c_[index_of(n)];
    }
    return out;
}

SpectralField SpectralField::conjugate() const {
    SpectralField out(grid_, real_tag_);
    const int k = grid_.max_mode();
    for (int n = -k; n <= k; ++n) {
        out.c_[out.index_of(n)] = std::conj(c_[index_of(-n)]);
    }
    return out;
}

SpectralField SpectralField::project_zero_mean() const {
    SpectralField out = *this;
    out.c_[0] = 0.0;
    return out;
}

double SpectralField::sobolev_norm(double s) const {
    const int k = grid_.max_mode();
    double sum = 0.0;
    for (int n = -k; n <= k; ++n) {
        const double w = std::pow(1.0 + std::abs(n), 2.0 * s);
        sum += w * std::norm(c_[index_of(n)]);
    }
    return std::sqrt(kTwoPi * sum);
}

cplx SpectralField::integral() const { return kTwoPi * c_[0]; }

bool SpectralField::all_finite() const {
    for (const auto& z : c_) {
        if (!std::isfinite(z.real()) || !std::isfinite(z.imag())) return false;
    }
    return true;
}

double SpectralField::max_abs_coeff() const {
    double m = 0.0;
    for (const auto& z : c_) m = std::max(m, std::abs(z));
    return m;
}

SpectralField& SpectralField::operator+=(const SpectralField& other) {
    if (!(grid_ == other.grid_)) throw std::invalid_argument("field arithmetic: mixed grids");
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] += other.c_[i];
    real_tag_ = real_tag_ && other.real_tag_;
    return *this;
}

SpectralField& SpectralField::operator-=(const SpectralField& other) {
    if (!(grid_ == other.grid_)) throw std::invalid_argument("field arithmetic: mixed grids");
    for (std::size_t i = 0; i < c_.size(); ++i) c_[i] -= other.c_[i];
    real_tag_ = real_tag_ && other.real_tag_;
    return *this;
}

SpectralField& SpectralField::operator*=(cplx scalar) {
    for (auto& z : c_) z *= scalar;
    if (scalar.imag() != 0.0) real_tag_ = false;
    return *this;
}

namespace {

// Zero-pad a bandwidth-K field onto a p-point grid and return physical samples.
std::vector<cplx> padded_samples(const SpectralField& f, std::size_t p) {
    const std::size_t m = f.grid().size();
    const int k = f.grid().max_mode();
    std::vector<cplx> big(p, cplx(0.0, 0.0));
    const auto& c = f.raw();
    for (int n = -k; n <= k; ++n) {
        const std::size_t src = static_cast<std::size_t>(n >= 0 ? n : n + static_cast<int>(m));
        const std::size_t dst = static_cast<std::size_t>(n >= 0 ? n : n + static_cast<int>(p));
        big[dst] = c[src];
    }
    fft_inverse(big);
    return big;
}

void check_same_grid(std::span<const SpectralField* const> factors) {
    if (factors.empty()) throw std::invalid_argument("product: no factors");
    for (const auto* f : factors) {
        if (!(f->grid() == factors[0]->grid())) {
            throw std::invalid_argument("product: fields on mixed grids");
        }
    }
}

}  // namespace

SpectralField dealiased_product(std::span<const SpectralField* const> factors) {
    check_same_grid(factors);
    if (factors.size() < 2 || factors.size() > 3) {
        throw std::invalid_argument("dealiased_product: expected 2 or 3 factors");
    }
    const Grid& grid = factors[0]->grid();
    const std::size_t m = grid.size();
    const std::size_t p = 2 * m;  // covers quadratic and cubic products exactly

    bool all_real = true;
    for (const auto* f : factors) all_real = all_real && f->real_tagged();

    std::vector<cplx> acc(p, cplx(1.0, 0.0));
    for (const auto* f : factors) {
        std::vector<cplx> s = padded_samples(*f, p);
        if (all_real) {
            // imaginary parts of real-tagged factors are pure rounding
            for (std::size_t j = 0; j < p; ++j) acc[j] *= s[j].real();
        } else {
            for (std::size_t j = 0; j < p; ++j) acc[j] *= s[j];
        }
    }
    fft_forward(acc);

    SpectralField out(grid, all_real);
    const int k = grid.max_mode();
    for (int n = -k; n <= k; ++n) {
        const std::size_t src = static_cast<std::size_t>(n >= 0 ? n : n + static_cast<int>(p));
        out.set_coeff(n, acc[src]);
    }
    return out;
}

SpectralField dealiased_product(std::initializer_list<const SpectralField*> factors) {
    std::vector<const SpectralField*> v(factors);
    return dealiased_product(std::span<const SpectralField* const>(v));
}

SpectralField squared_modulus(const SpectralField& u) {
    const Grid& grid = u.grid();
    const std::size_t p = 2 * grid.size();
    std::vector<cplx> s = padded_samples(u, p);
    for (auto& z : s) z = cplx(std::norm(z), 0.0);
    fft_forward(s);
    SpectralField out(grid, /*real_tag=*/true);
    const int k = grid.max_mode();
    for (int n = -k; n <= k; ++n) {
        const std::size_t src = static_cast<std::size_t>(n >= 0 ? n : n + static_cast<int>(p));
        out.set_coeff(n, s[src]);
    }
    return out;
}

cplx integral_of_product(std::span<const SpectralField* const> factors) {
    check_same_grid(factors);
    if (factors.size() > 6) throw std::invalid_argument("integral_of_product: too many factors");
    const Grid& grid = factors[0]->grid();
    const std::size_t m = grid.size();
    const int k = grid.max_mode();
    // smallest multiple of M whose size exceeds q*K, so no true mode of the
    // q-fold convolution aliases onto mode 0
    std::size_t p = m;
    while (p <= factors.size() * static_cast<std::size_t>(k)) p += m;

    std::vector<cplx> acc(p, cplx(1.0, 0.0));
    for (const auto* f : factors) {
        std::vector<cplx> s = padded_samples(*f, p);
        for (std::size_t j = 0; j < p; ++j) acc[j] *= s[j];
    }
    cplx sum(0.0, 0.0);
    for (const auto& z : acc) sum += z;
    return kTwoPi * sum / static_cast<double>(p);
}

cplx integral_of_product(std::initializer_list<const SpectralField*> factors) {
    std::vector<const SpectralField*> v(factors);
    return integral_of_product(std::span<const SpectralField* const>(v));
}

cplx l2_pairing(const SpectralField& f, const SpectralField& g) {
    if (!(f.grid() == g.grid())) throw std::invalid_argument("l2_pairing: mixed grids");
    const int k = f.grid().max_mode();
    cplx sum(0.0, 0.0);
    for (int n = -k; n <= k; ++n) sum += f.coeff(n) * std::conj(g.coeff(n));
    return kTwoPi * sum;
}

}  // namespace nlskdv
