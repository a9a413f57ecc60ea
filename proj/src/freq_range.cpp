#include "qltf/freq_range.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qltf {

namespace {

void validate_band(const Band& band) {
  if (!std::isfinite(band.a) || !std::isfinite(band.b)) {
    throw std::invalid_argument("band edges must be finite");
  }
  if (!(band.a >= 0.0 && band.a <= band.b)) {
    throw std::invalid_argument("band must satisfy 0 <= a <= b");
  }
}

void validate_tones(const std::vector<double>& W) {
  if (W.empty()) throw std::invalid_argument("tone frequency list is empty");
  for (std::size_t i = 0; i < W.size(); ++i) {
    if (!std::isfinite(W[i]) || !(W[i] > 0.0)) {
      throw std::invalid_argument("tone frequencies must be positive");
    }
    if (i > 0 && !(W[i] > W[i - 1])) {
      throw std::invalid_argument(
          "tone frequencies must be sorted strictly ascending");
    }
  }
}

constexpr double kTupleGuard = 1e7;

// Keep values >= 0 under tolerance; snap near-zero representatives to 0.
FrequencySet nonneg_filter(const FrequencySet& all, double tol) {
  std::vector<double> keep;
  keep.reserve(all.values().size());
  for (double v : all.values()) {
    if (v < -tol) continue;
    keep.push_back(std::abs(v) <= tol ? 0.0 : v);
  }
  return FrequencySet(std::move(keep), tol);
}

}  // namespace

IntervalUnion band_output_range(const Band& band, int n) {
  validate_band(band);
  if (n < 1) throw std::invalid_argument("order must be >= 1");
  std::vector<Interval> raw;
  raw.reserve(n + 1);
  for (int k = 0; k <= n; ++k) {
    raw.push_back({k * band.a - (n - k) * band.b,
                   k * band.b - (n - k) * band.a});
  }
  return normalize_interval_union(std::move(raw));
}

IntervalUnion band_output_range_nonneg(const Band& band, int n,
                                       bool paper_literal) {
  validate_band(band);
  if (n < 1) throw std::invalid_argument("order must be >= 1");
  std::vector<Interval> raw;
  if (paper_literal) {
    // Historical index range k = 0..n-1 with endpoints clipped by max(0, .);
    // loses the top interval (kept for auditing only).
    for (int k = 0; k < n; ++k) {
      raw.push_back({std::max(0.0, k * band.a - (n - k) * band.b),
                     std::max(0.0, k * band.b - (n - k) * band.a)});
    }
  } else {
    const IntervalUnion full = band_output_range(band, n);
    for (const Interval& iv : full.intervals()) {
      if (iv.hi >= 0.0) raw.push_back({std::max(iv.lo, 0.0), iv.hi});
    }
  }
  return normalize_interval_union(std::move(raw));
}

GammaVector multitone_gamma(const std::vector<double>& W, int n) {
  validate_tones(W);
  if (n < 2) throw std::invalid_argument("gamma recursion needs order >= 2");
  const std::size_t K = W.size();
  if (static_cast<double>(K) * std::pow(2.0 * K, n - 1) > kTupleGuard) {
    throw std::length_error("gamma vector length exceeds enumeration guard");
  }
  std::vector<double> V(2 * K);
  for (std::size_t i = 0; i < K; ++i) {
    V[i] = -W[K - 1 - i];
    V[K + i] = W[i];
  }
  GammaVector cur(W);
  for (int level = 2; level <= n; ++level) {
    GammaVector next;
    next.reserve(cur.size() * V.size());
    for (double g : cur) {
      for (double v : V) next.push_back(g + v);
    }
    cur.swap(next);
  }
  return cur;
}

FrequencySet multitone_output_freqs(const std::vector<double>& W, int n,
                                    double tol) {
  validate_tones(W);
  if (n < 1) throw std::invalid_argument("order must be >= 1");
  const double t = tol > 0.0 ? tol : freq_tol(n * W.back());
  if (n == 1) return FrequencySet(W, t);
  return nonneg_filter(FrequencySet(multitone_gamma(W, n), t), t);
}

FrequencySet multitone_output_freqs_full(const std::vector<double>& W, int n,
                                         double tol) {
  FrequencySet pos = multitone_output_freqs(W, n, tol);
  std::vector<double> mirrored;
  mirrored.reserve(2 * pos.values().size());
  for (double v : pos.values()) {
    mirrored.push_back(v);
    if (v > pos.tolerance()) mirrored.push_back(-v);
  }
  return FrequencySet(std::move(mirrored), pos.tolerance());
}

FrequencySet brute_force_multitone_freqs(const std::vector<double>& W, int n,
                                         double tol) {
  validate_tones(W);
  if (n < 1) throw std::invalid_argument("order must be >= 1");
  const std::size_t K = W.size();
  if (std::pow(2.0 * K, n) > kTupleGuard) {
    throw std::length_error("signed tuple count exceeds enumeration guard");
  }
  const double t = tol > 0.0 ? tol : freq_tol(n * W.back());
  std::vector<double> signed_freqs(2 * K);
  for (std::size_t i = 0; i < K; ++i) {
    signed_freqs[i] = -W[K - 1 - i];
    signed_freqs[K + i] = W[i];
  }
  std::vector<double> sums;
  sums.reserve(static_cast<std::size_t>(std::pow(2.0 * K, n)));
  std::vector<std::size_t> idx(n, 0);
  while (true) {
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += signed_freqs[idx[i]];
    sums.push_back(s);
    int pos = n - 1;
    while (pos >= 0 && ++idx[pos] == signed_freqs.size()) {
      idx[pos] = 0;
      --pos;
    }
    if (pos < 0) break;
  }
  return nonneg_filter(FrequencySet(std::move(sums), t), t);
}

}  // namespace qltf
