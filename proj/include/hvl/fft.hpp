// Radix-2 FFT, just enough for coefficient convolutions and for sampling a
// truncated Taylor series on uniform circle grids.

#ifndef HVL_FFT_HPP
#define HVL_FFT_HPP

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "hvl/core.hpp"

namespace hvl {

/// In-place iterative FFT; data.size() must be a power of two.
/// Computes X_j = sum_n x_n e^{+2 pi i j n / N} (no normalization);
/// pass inverse = true for the e^{-...} kernel with 1/N applied.
inline void fft_inplace(std::vector<cd>& data, bool inverse = false) {
  const std::size_t n = data.size();
  if (n == 0 || (n & (n - 1)) != 0)
    throw std::invalid_argument("fft_inplace: size must be a power of two");
  // bit reversal
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(data[i], data[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    const double ang = (inverse ? -two_pi : two_pi) / double(len);
    const cd wlen = expi(ang);
    for (std::size_t i = 0; i < n; i += len) {
      cd w{1.0, 0.0};
      for (std::size_t k = 0; k < len / 2; ++k) {
        const cd u = data[i + k];
        const cd v = data[i + k + len / 2] * w;
        data[i + k] = u + v;
        data[i + k + len / 2] = u - v;
        w *= wlen;
      }
    }
  }
  if (inverse)
    for (auto& x : data) x /= double(n);
}

/// Linear convolution of two coefficient vectors.  Small products are done
/// directly (exact for the polynomial identities the tests pin down); large
/// ones go through the FFT.
inline std::vector<cd> convolve(const std::vector<cd>& a, const std::vector<cd>& b) {
  if (a.empty() || b.empty()) return {};
  const std::size_t out = a.size() + b.size() - 1;
  if (a.size() * b.size() <= (std::size_t(1) << 22)) {
    std::vector<cd> c(out, cd{0.0, 0.0});
    for (std::size_t i = 0; i < a.size(); ++i)
      for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
    return c;
  }
  std::size_t m = 1;
  while (m < out) m <<= 1;
  std::vector<cd> fa(a.begin(), a.end()), fb(b.begin(), b.end());
  fa.resize(m);
  fb.resize(m);
  fft_inplace(fa);
  fft_inplace(fb);
  for (std::size_t i = 0; i < m; ++i) fa[i] *= fb[i];
  fft_inplace(fa, true);
  fa.resize(out);
  return fa;
}

}  // namespace hvl

#endif  // HVL_FFT_HPP
