#pragma once

#include <complex>
#include <cstddef>
#include <vector>

namespace nlskdv {

using cplx = std::complex<double>;

// Thin FFTW wrapper with a guarded plan cache. Plans are created once per
// (size, direction) under a mutex and executed on caller buffers, so
// concurrent workers can transform independently (FFTW execution is
// thread-safe on distinct arrays; planning is not).
//
// Conventions:
//   fft_forward : c[n] = (1/P) sum_j s[j] e^{-2*pi*i*n*j/P}   (coefficients)
//   fft_inverse : s[j] = sum_n c[n] e^{+2*pi*i*n*j/P}         (samples)
void fft_forward(std::vector<cplx>& data);
void fft_inverse(std::vector<cplx>& data);

// 2-D transforms for space-time lattices, row-major [it][ix] with nt rows of
// length nx. Same normalization: forward divides by nt*nx.
void fft_forward_2d(std::vector<cplx>& data, std::size_t nt, std::size_t nx);
void fft_inverse_2d(std::vector<cplx>& data, std::size_t nt, std::size_t nx);

}  // namespace nlskdv
