#include "fft.hpp"

#include <cmath>

#include "errors.hpp"
#include "special.hpp"

namespace pmclt {

void fft_inplace(std::vector<std::complex<double>>& a) {
  const size_t n = a.size();
  require(n >= 2 && (n & (n - 1)) == 0, errc::invalid_argument,
          "FFT length must be a power of two");

  for (size_t i = 1, j = 0; i < n; ++i) {
    size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j |= bit;
    if (i < j) std::swap(a[i], a[j]);
  }

  // Exact-angle twiddles: each entry from std::polar, no recurrence drift.
  std::vector<std::complex<double>> w(n / 2);
  for (size_t r = 0; r < n / 2; ++r)
    w[r] = std::polar(1.0, -2.0 * kPi * static_cast<double>(r) / static_cast<double>(n));

  for (size_t len = 2; len <= n; len <<= 1) {
    const size_t step = n / len;
    for (size_t i = 0; i < n; i += len) {
      for (size_t k = 0; k < len / 2; ++k) {
        const std::complex<double> u = a[i + k];
        const std::complex<double> v = a[i + k + len / 2] * w[k * step];
        a[i + k] = u + v;
        a[i + k + len / 2] = u - v;
      }
    }
  }
}

}  // namespace pmclt
