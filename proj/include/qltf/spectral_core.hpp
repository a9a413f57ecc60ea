#pragma once

#include <complex>
#include <map>
#include <vector>

namespace qltf {

using Complex = std::complex<double>;

// Absolute frequency tolerance for key matching and dedup.
// scale: largest |omega| the computation can produce (tone sums, band edges).
double freq_tol(double scale);

// One cosine component: magnitude*cos(frequency*t + phase).
struct Tone {
  double magnitude = 0.0;  // |A_i| >= 0
  double phase = 0.0;      // rad
  double frequency = 0.0;  // rad/s, > 0

  Complex amplitude() const;  // A_i = magnitude * e^{j*phase}
};

// Finite sum of cosines with distinct positive frequencies. The conjugate
// extension A_{-i} = conj(A_i) at -w_i (and A_0 = 0) is implied, never stored.
class MultitoneSignal {
 public:
  // Tones are sorted by frequency; frequencies must be positive and pairwise
  // distinct beyond the tolerance (tol <= 0 selects the default).
  explicit MultitoneSignal(std::vector<Tone> tones, double tol = 0.0);

  const std::vector<Tone>& tones() const { return tones_; }
  int size() const { return static_cast<int>(tones_.size()); }  // K
  double max_frequency() const { return tones_.back().frequency; }
  double tolerance() const { return tol_; }

  // Scales every amplitude by the nonzero real c: magnitudes by |c|, with a
  // pi phase shift when c < 0 (so A_i -> c*A_i exactly as complex numbers).
  MultitoneSignal scaled(double c) const;

 private:
  std::vector<Tone> tones_;
  double tol_;
};

// Discrete measure on the frequency axis: coefficient per spectral line.
// Keys are matched within the tolerance; the first-seen frequency of a
// tolerance cluster is the canonical key.
class LineSpectrum {
 public:
  explicit LineSpectrum(double tol) : tol_(tol) {}

  void add(double freq, Complex coeff);     // accumulates into a matching key
  Complex at(double freq) const;            // 0 if no line within tolerance
  bool has(double freq) const;
  const std::map<double, Complex>& lines() const { return lines_; }
  double tolerance() const { return tol_; }

 private:
  std::map<double, Complex> lines_;
  double tol_;
};

// Sorted distinct frequencies under a shared tolerance.
class FrequencySet {
 public:
  FrequencySet() = default;
  FrequencySet(std::vector<double> values, double tol);  // sorts and dedups

  const std::vector<double>& values() const { return values_; }
  double tolerance() const { return tol_; }
  bool contains(double f) const;
  bool same_as(const FrequencySet& other) const;  // set equality under tol

 private:
  std::vector<double> values_;
  double tol_ = 0.0;
};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

// Sorted union of disjoint, non-adjacent closed intervals.
class IntervalUnion {
 public:
  IntervalUnion() = default;

  const std::vector<Interval>& intervals() const { return iv_; }
  bool empty() const { return iv_.empty(); }
  bool contains(double x, double slack = 0.0) const;

  friend IntervalUnion normalize_interval_union(std::vector<Interval> raw);

 private:
  std::vector<Interval> iv_;
};

// Canonical form: sorted by lo, overlapping or touching intervals merged.
// Rejects intervals with lo > hi.
IntervalUnion normalize_interval_union(std::vector<Interval> raw);

// Line spectrum of a multitone signal: coefficient pi*A_i at +w_i and the
// conjugate at -w_i (2K lines).
LineSpectrum line_spectrum(const MultitoneSignal& signal);

}  // namespace qltf
