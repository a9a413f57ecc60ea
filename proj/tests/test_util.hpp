#ifndef QLTF_TESTS_TEST_UTIL_HPP
#define QLTF_TESTS_TEST_UTIL_HPP

#include <cmath>
#include <complex>
#include <random>
#include <vector>

namespace testutil {

using Complex = std::complex<double>;

inline double rel_err(Complex got, Complex want) {
  const double scale = std::max(std::abs(want), 1e-300);
  return std::abs(got - want) / scale;
}

inline double rel_err(double got, double want) {
  const double scale = std::max(std::abs(want), 1e-300);
  return std::abs(got - want) / scale;
}

inline bool close(Complex got, Complex want, double rel) {
  return std::abs(got - want) <= rel * std::max(1e-300, std::abs(want));
}

// Strictly increasing tone frequencies with a comfortable mutual gap.
inline std::vector<double> random_freqs(std::mt19937& rng, int count,
                                        double lo = 0.5, double hi = 20.0) {
  std::uniform_real_distribution<double> dist(lo, hi);
  std::vector<double> w(count);
  for (;;) {
    for (auto& v : w) v = dist(rng);
    std::sort(w.begin(), w.end());
    bool ok = true;
    for (int i = 1; i < count; ++i) {
      if (w[i] - w[i - 1] < 0.05) ok = false;
    }
    if (ok) return w;
  }
}

}  // namespace testutil

#endif  // QLTF_TESTS_TEST_UTIL_HPP
