#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

#include "nlskdv/fft.hpp"

namespace nlskdv {

inline constexpr double kTwoPi = 6.283185307179586476925286766559;

/// Uniform periodic grid on the 2*pi torus. M points x_j = 2*pi*j/M, active
/// Fourier modes |n| <= K with K = M/2 - 1; the Nyquist mode M/2 is excluded
/// (its coefficient is forced to zero everywhere).
class Grid {
  public:
    explicit Grid(std::size_t m);

    std::size_t size() const { return m_; }
    int max_mode() const { return static_cast<int>(m_) / 2 - 1; }
    double length() const { return kTwoPi; }
    double node(std::size_t j) const { return kTwoPi * static_cast<double>(j) / static_cast<double>(m_); }

    friend bool operator==(const Grid& a, const Grid& b) { return a.m_ == b.m_; }

  private:
    std::size_t m_;
};

/// One periodic function as truncated Fourier coefficients. Coefficients are
/// stored in FFT index order (mode n at index n for n >= 0, n + M otherwise).
/// Values are immutable in spirit: every operation returns a fresh field, so
/// instances are safe to share read-only across threads.
///
/// A field may carry a reality tag marking functions that are real-valued in
/// physical space (coeff(-n) = conj(coeff(n))). The tag is propagated through
/// operations that preserve it and is used to keep products of real fields
/// exactly Hermitian.
class SpectralField {
  public:
    explicit SpectralField(const Grid& grid, bool real_tag = false);

    /// coeff(n) = (1/M) sum_j samples_j e^{-i n x_j}, Nyquist zeroed.
    static SpectralField from_samples(const Grid& grid, std::span<const cplx> samples,
                                      bool real_tag = false);
    static SpectralField from_real_samples(const Grid& grid, std::span<const double> samples);

    const Grid& grid() const { return grid_; }
    bool real_tagged() const { return real_tag_; }
    void set_real_tag(bool tag) { real_tag_ = tag; }

    cplx coeff(int n) const;
    void set_coeff(int n, cplx value);

    /// samples_j = sum_n coeff(n) e^{i n x_j}.
    std::vector<cplx> samples() const;

    /// coeff(n) <- (i n)^order coeff(n). Hermitian symmetry is preserved for
    /// any order, so real fields stay real.
    SpectralField derivative(int order = 1) const;

    /// Complex conjugate in physical space: coeff(n) <- conj(coeff(-n)).
    SpectralField conjugate() const;

    /// coeff(0) <- 0, all other modes unchanged.
    SpectralField project_zero_mean() const;

    /// (2*pi sum_n <n>^{2s} |coeff(n)|^2)^{1/2} with <n> = 1 + |n|.
    double sobolev_norm(double s) const;

    /// Integral over the torus: 2*pi coeff(0).
    cplx integral() const;

    bool all_finite() const;
    double max_abs_coeff() const;

    SpectralField& operator+=(const SpectralField& other);
    SpectralField& operator-=(const SpectralField& other);
    SpectralField& operator*=(cplx scalar);
    friend SpectralField operator+(SpectralField a, const SpectralField& b) { return a += b; }
    friend SpectralField operator-(SpectralField a, const SpectralField& b) { return a -= b; }
    friend SpectralField operator*(cplx scalar, SpectralField f) { return f *= scalar; }

    /// Raw coefficient storage in FFT order (size M, Nyquist slot zero).
    const std::vector<cplx>& raw() const { return c_; }

  private:
    Grid grid_;
    bool real_tag_;
    std::vector<cplx> c_;

    std::size_t index_of(int n) const;
};

inline SpectralField forward_transform(const Grid& grid, std::span<const cplx> samples,
                                       bool real_tag = false) {
    return SpectralField::from_samples(grid, samples, real_tag);
}

inline std::vector<cplx> inverse_transform(const SpectralField& f) { return f.samples(); }

/// Pointwise product of 2 or 3 fields, computed alias-free by zero-padding to
/// 2M modes and truncating back to |n| <= K. Exact (to rounding) in every
/// retained mode for both quadratic and cubic products of bandwidth-K inputs.
SpectralField dealiased_product(std::initializer_list<const SpectralField*> factors);
SpectralField dealiased_product(std::span<const SpectralField* const> factors);

/// |u|^2 as a real-tagged field (alias-free, like dealiased_product).
SpectralField squared_modulus(const SpectralField& u);

/// Exact integral over the torus of the pointwise product of up to six
/// bandwidth-K fields: the zero mode of the full (unaliased) convolution,
/// evaluated on a grid padded far enough that no true mode wraps onto 0.
cplx integral_of_product(std::span<const SpectralField* const> factors);
cplx integral_of_product(std::initializer_list<const SpectralField*> factors);

/// Exact L2 pairing: integral of f * conj(g) = 2*pi sum_n f(n) conj(g(n)).
cplx l2_pairing(const SpectralField& f, const SpectralField& g);

}  // namespace nlskdv
