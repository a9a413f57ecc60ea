#pragma once

#include <vector>

#include "qltf/spectral_core.hpp"

namespace qltf {

// Band-limited input support: a <= |w| <= b with 0 <= a <= b.
struct Band {
  double a = 0.0;
  double b = 0.0;
};

// Flat vector of signed n-fold tone-frequency sums, first addend restricted
// to positive tones; length K*(2K)^(n-1).
using GammaVector = std::vector<double>;

// Order-n output range for a band-limited input: union over k = 0..n of
// [k*a - (n-k)*b, k*b - (n-k)*a], normalized.
IntervalUnion band_output_range(const Band& band, int n);

// Non-negative part. Default: the full union clipped to [0, inf).
// paper_literal: union over k = 0..n-1 of [max(0, ka-(n-k)b), max(0, kb-(n-k)a)]
// only, kept for auditing; it loses the top interval for n = 2.
IntervalUnion band_output_range_nonneg(const Band& band, int n,
                                       bool paper_literal = false);

// Kronecker-style recursion Gamma_n = Gamma_{n-1} (x) ones + ones (x) V over
// V = [-w_K..-w_1, w_1..w_K], Gamma_1 = W. Requires n >= 2, W sorted positive.
GammaVector multitone_gamma(const std::vector<double>& W, int n);

// Distinct non-negative order-n output frequencies of a K-tone input.
// n = 1 returns W itself.
FrequencySet multitone_output_freqs(const std::vector<double>& W, int n,
                                    double tol = 0.0);

// The full symmetric set: the non-negative set mirrored about 0.
FrequencySet multitone_output_freqs_full(const std::vector<double>& W, int n,
                                         double tol = 0.0);

// Oracle: enumerate all (2K)^n signed index tuples and collect non-negative
// sums. Guarded at 1e7 tuples.
FrequencySet brute_force_multitone_freqs(const std::vector<double>& W, int n,
                                         double tol = 0.0);

}  // namespace qltf
