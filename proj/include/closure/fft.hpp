#pragma once

// Iterative radix-2 complex FFT.
//
// Convention (load-bearing for every spectral quantity in this project):
//   forward:  u_hat[k] = (1/N) * sum_j u[j] * exp(-2*pi*i*j*k/N)
//   inverse:  u[j]     =         sum_k u_hat[k] * exp(+2*pi*i*j*k/N)
// so the forward output holds Fourier-series coefficients of the periodic
// field sampled at x_j = 2*pi*j/N. Bins follow standard FFT order: index i
// carries wavenumber k = i for i < N/2 and k = i - N for i >= N/2.

#include <numbers>
#include <vector>

#include "closure/types.hpp"

namespace closure {

inline bool is_power_of_two(Index n) { return n > 0 && (n & (n - 1)) == 0; }

inline int fft_wavenumber(Index bin, Index n) {
  return bin < n / 2 ? static_cast<int>(bin) : static_cast<int>(bin - n);
}

inline Index fft_bin(int k, Index n) {
  return k >= 0 ? static_cast<Index>(k) : static_cast<Index>(k + n);
}

namespace detail {

// Twiddle table e^{-2*pi*i*j/n}, j < n/2, computed once per size.
inline const std::vector<Complex>& twiddles(Index n) {
  thread_local Index cached_n = 0;
  thread_local std::vector<Complex> table;
  if (cached_n != n) {
    table.resize(static_cast<size_t>(n / 2));
    for (Index j = 0; j < n / 2; ++j) {
      double ang = -2.0 * std::numbers::pi * static_cast<double>(j) /
                   static_cast<double>(n);
      table[static_cast<size_t>(j)] = std::polar(1.0, ang);
    }
    cached_n = n;
  }
  return table;
}

inline void fft_inplace(ComplexVector& a, bool inverse) {
  const Index n = a.size();
  if (n == 1) return;
  if (!is_power_of_two(n)) throw InvalidGrid("fft size must be a power of two");

  for (Index i = 1, j = 0; i < n; ++i) {
    Index bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }

  const auto& tw = twiddles(n);
  for (Index len = 2; len <= n; len <<= 1) {
    const Index stride = n / len;
    for (Index i = 0; i < n; i += len) {
      for (Index j = 0; j < len / 2; ++j) {
        Complex w = tw[static_cast<size_t>(j * stride)];
        if (inverse) w = std::conj(w);
        Complex u = a[i + j];
        Complex v = a[i + j + len / 2] * w;
        a[i + j] = u + v;
        a[i + j + len / 2] = u - v;
      }
    }
  }
}

}  // namespace detail

inline ComplexVector fft_forward(const ComplexVector& u) {
  ComplexVector a = u;
  detail::fft_inplace(a, false);
  a /= static_cast<double>(u.size());
  return a;
}

inline ComplexVector fft_inverse(const ComplexVector& u_hat) {
  ComplexVector a = u_hat;
  detail::fft_inplace(a, true);
  return a;
}

// O(N^2) reference transform; test oracle only.
inline ComplexVector dft_forward_reference(const ComplexVector& u) {
  const Index n = u.size();
  ComplexVector out(n);
  for (Index k = 0; k < n; ++k) {
    Complex acc{0.0, 0.0};
    for (Index j = 0; j < n; ++j) {
      double ang = -2.0 * std::numbers::pi * static_cast<double>(j * k) /
                   static_cast<double>(n);
      acc += u[j] * std::polar(1.0, ang);
    }
    out[k] = acc / static_cast<double>(n);
  }
  return out;
}

}  // namespace closure
