#pragma once
// Radix-2 in-place FFT for power-of-two lengths. Forward transform uses
// e^{-i 2 pi k n / K}; inverse applies the conjugate and the 1/K factor.

#include <complex>
#include <stdexcept>
#include <vector>

namespace nsk {

inline bool is_pow2(size_t n) { return n != 0 && (n & (n - 1)) == 0; }

inline void fft_inplace(std::vector<std::complex<double>>& a, bool inverse) {
  const size_t n = a.size();
  if (!is_pow2(n)) throw std::invalid_argument("fft: length must be a power of two");
  for (size_t i = 1, j = 0; i < n; ++i) {
    size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (size_t len = 2; len <= n; len <<= 1) {
    const double ang = (inverse ? 2.0 : -2.0) * M_PI / static_cast<double>(len);
    const std::complex<double> wl = std::polar(1.0, ang);
    for (size_t i = 0; i < n; i += len) {
      std::complex<double> w(1.0, 0.0);
      for (size_t k = 0; k < len / 2; ++k) {
        const auto u = a[i + k];
        const auto v = a[i + k + len / 2] * w;
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
        w *= wl;
      }
    }
  }
  if (inverse)
    for (auto& x : a) x /= static_cast<double>(n);
}

inline std::vector<std::complex<double>> fft(std::vector<std::complex<double>> a) {
  fft_inplace(a, false);
  return a;
}

inline std::vector<std::complex<double>> ifft(std::vector<std::complex<double>> a) {
  fft_inplace(a, true);
  return a;
}

}  // namespace nsk
