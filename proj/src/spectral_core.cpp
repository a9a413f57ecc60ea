#include "qltf/spectral_core.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace qltf {

double freq_tol(double scale) {
  return 1e-9 * std::max(1.0, std::abs(scale));
}

Complex Tone::amplitude() const { return std::polar(magnitude, phase); }

MultitoneSignal::MultitoneSignal(std::vector<Tone> tones, double tol)
    : tones_(std::move(tones)) {
  if (tones_.empty()) {
    throw std::invalid_argument("multitone signal needs at least one tone");
  }
  for (const Tone& t : tones_) {
    if (!std::isfinite(t.magnitude) || !std::isfinite(t.phase) ||
        !std::isfinite(t.frequency)) {
      throw std::invalid_argument("tone fields must be finite");
    }
    if (!(t.frequency > 0.0)) {
      throw std::invalid_argument("tone frequency must be positive");
    }
    if (t.magnitude < 0.0) {
      throw std::invalid_argument("tone magnitude must be non-negative");
    }
  }
  std::sort(tones_.begin(), tones_.end(),
            [](const Tone& a, const Tone& b) { return a.frequency < b.frequency; });
  tol_ = tol > 0.0 ? tol : freq_tol(tones_.back().frequency);
  for (std::size_t i = 1; i < tones_.size(); ++i) {
    if (tones_[i].frequency - tones_[i - 1].frequency <= tol_) {
      throw std::invalid_argument(
          "tone frequencies must be pairwise distinct beyond tolerance");
    }
  }
}

MultitoneSignal MultitoneSignal::scaled(double c) const {
  if (c == 0.0 || !std::isfinite(c)) {
    throw std::invalid_argument("amplitude scale must be nonzero and finite");
  }
  std::vector<Tone> scaled_tones = tones_;
  for (Tone& t : scaled_tones) {
    t.magnitude *= std::abs(c);
    if (c < 0.0) t.phase += std::acos(-1.0);
  }
  return MultitoneSignal(std::move(scaled_tones), tol_);
}

void LineSpectrum::add(double freq, Complex coeff) {
  auto it = lines_.lower_bound(freq - tol_);
  if (it != lines_.end() && std::abs(it->first - freq) <= tol_) {
    it->second += coeff;
  } else {
    lines_.emplace(freq, coeff);
  }
}

Complex LineSpectrum::at(double freq) const {
  auto it = lines_.lower_bound(freq - tol_);
  if (it != lines_.end() && std::abs(it->first - freq) <= tol_) {
    return it->second;
  }
  return Complex(0.0, 0.0);
}

bool LineSpectrum::has(double freq) const {
  auto it = lines_.lower_bound(freq - tol_);
  return it != lines_.end() && std::abs(it->first - freq) <= tol_;
}

FrequencySet::FrequencySet(std::vector<double> values, double tol)
    : values_(std::move(values)) {
  for (double v : values_) {
    if (!std::isfinite(v)) {
      throw std::invalid_argument("frequency set entries must be finite");
    }
  }
  std::sort(values_.begin(), values_.end());
  double scale = values_.empty() ? 1.0
                                 : std::max(std::abs(values_.front()),
                                            std::abs(values_.back()));
  tol_ = tol > 0.0 ? tol : freq_tol(scale);
  std::vector<double> dedup;
  dedup.reserve(values_.size());
  for (double v : values_) {
    if (dedup.empty() || v - dedup.back() > tol_) dedup.push_back(v);
  }
  values_ = std::move(dedup);
}

bool FrequencySet::contains(double f) const {
  auto it = std::lower_bound(values_.begin(), values_.end(), f - tol_);
  return it != values_.end() && std::abs(*it - f) <= tol_;
}

bool FrequencySet::same_as(const FrequencySet& other) const {
  if (values_.size() != other.values_.size()) return false;
  const double tol = std::max(tol_, other.tol_);
  for (std::size_t i = 0; i < values_.size(); ++i) {
    if (std::abs(values_[i] - other.values_[i]) > tol) return false;
  }
  return true;
}

bool IntervalUnion::contains(double x, double slack) const {
  for (const Interval& iv : iv_) {
    if (x >= iv.lo - slack && x <= iv.hi + slack) return true;
  }
  return false;
}

IntervalUnion normalize_interval_union(std::vector<Interval> raw) {
  for (const Interval& iv : raw) {
    if (!(iv.lo <= iv.hi)) {
      throw std::invalid_argument("interval must satisfy lo <= hi");
    }
  }
  std::sort(raw.begin(), raw.end(),
            [](const Interval& a, const Interval& b) {
              return a.lo < b.lo || (a.lo == b.lo && a.hi < b.hi);
            });
  IntervalUnion out;
  for (const Interval& iv : raw) {
    if (!out.iv_.empty() && iv.lo <= out.iv_.back().hi) {
      out.iv_.back().hi = std::max(out.iv_.back().hi, iv.hi);
    } else {
      out.iv_.push_back(iv);
    }
  }
  return out;
}

LineSpectrum line_spectrum(const MultitoneSignal& signal) {
  const double pi = std::acos(-1.0);
  LineSpectrum ls(signal.tolerance());
  for (const Tone& t : signal.tones()) {
    const Complex coeff = pi * t.amplitude();
    ls.add(t.frequency, coeff);
    ls.add(-t.frequency, std::conj(coeff));
  }
  return ls;
}

}  // namespace qltf
