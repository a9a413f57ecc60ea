#include "qltf/qltf_multitone.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qltf {

namespace {

double wrap_deg(double deg) {
  deg = std::fmod(deg, 360.0);
  if (deg <= -180.0) deg += 360.0;
  if (deg > 180.0) deg -= 360.0;
  return deg;
}

// Sum over all ordered signed index tuples (k_1..k_n), k_i in {+-1..+-K}:
// u adds (pi/2^(n-1)) B(w_k1)...B(w_kn) at the tuple sum, y (if requested)
// adds the same term weighted by H_n at the tuple frequencies. Tuples are
// visited in a fixed lexicographic order, so canonical keys and accumulation
// order are deterministic.
void enumerate_tuples(const MultitoneSignal& signal, int n,
                      const KernelTransferFunction* h, LineSpectrum& u_out,
                      LineSpectrum* y_out) {
  const int K = signal.size();
  const std::size_t M = 2 * static_cast<std::size_t>(K);
  std::vector<double> freq(M);
  std::vector<Complex> amp(M);
  for (int i = 0; i < K; ++i) {
    const Tone& t = signal.tones()[i];
    freq[K - 1 - i] = -t.frequency;
    amp[K - 1 - i] = std::conj(t.amplitude());
    freq[K + i] = t.frequency;
    amp[K + i] = t.amplitude();
  }
  const double prefactor = std::ldexp(std::acos(-1.0), -(n - 1));  // pi/2^(n-1)
  std::vector<std::size_t> idx(n, 0);
  std::vector<double> wtuple(n);
  while (true) {
    double sum = 0.0;
    Complex prod(1.0, 0.0);
    for (int i = 0; i < n; ++i) {
      sum += freq[idx[i]];
      prod *= amp[idx[i]];
    }
    u_out.add(sum, prefactor * prod);
    if (y_out != nullptr) {
      for (int i = 0; i < n; ++i) wtuple[i] = freq[idx[i]];
      Complex hv;
      try {
        hv = (*h)(wtuple);
      } catch (const PoleError& e) {
        std::ostringstream msg;
        msg << e.what() << " [tuple (";
        for (int i = 0; i < n; ++i) msg << (i ? ", " : "") << wtuple[i];
        msg << ")]";
        throw PoleError(msg.str());
      }
      y_out->add(sum, prefactor * prod * hv);
    }
    int pos = n - 1;
    while (pos >= 0 && ++idx[pos] == M) {
      idx[pos] = 0;
      --pos;
    }
    if (pos < 0) break;
  }
}

double max_abs(const LineSpectrum& ls) {
  double m = 0.0;
  for (const auto& [freq, coeff] : ls.lines()) m = std::max(m, std::abs(coeff));
  return m;
}

}  // namespace

BMap::BMap(const MultitoneSignal& signal) : tol_(signal.tolerance()) {
  freqs_.reserve(signal.size());
  amps_.reserve(signal.size());
  for (const Tone& t : signal.tones()) {
    freqs_.push_back(t.frequency);
    amps_.push_back(t.amplitude());
  }
}

Complex BMap::at(double w) const {
  const double aw = std::abs(w);
  auto it = std::lower_bound(freqs_.begin(), freqs_.end(), aw - tol_);
  if (it == freqs_.end() || std::abs(*it - aw) > tol_) return Complex(0.0, 0.0);
  const Complex a = amps_[it - freqs_.begin()];
  return w >= 0.0 ? a : std::conj(a);
}

const QltfRow* QltfTable::find(double omega, double tol) const {
  for (const QltfRow& r : rows) {
    if (std::abs(r.omega - omega) <= tol) return &r;
  }
  return nullptr;
}

LineSpectrum input_spectral_coeffs(const MultitoneSignal& signal, int n) {
  if (n < 1) throw std::invalid_argument("order must be >= 1");
  LineSpectrum u(freq_tol(n * signal.max_frequency()));
  enumerate_tuples(signal, n, nullptr, u, nullptr);
  return u;
}

LineSpectrum output_spectral_coeffs(const MultitoneSignal& signal,
                                    const KernelTransferFunction& h) {
  const int n = h.order();
  const double tol = freq_tol(n * signal.max_frequency());
  LineSpectrum u(tol);
  LineSpectrum y(tol);
  enumerate_tuples(signal, n, &h, u, &y);
  return y;
}

QltfTable qltf(const MultitoneSignal& signal, const KernelTransferFunction& h,
               double cancel_tau) {
  const int n = h.order();
  const double tol = freq_tol(n * signal.max_frequency());
  LineSpectrum u(tol);
  LineSpectrum y(tol);
  enumerate_tuples(signal, n, &h, u, &y);

  QltfTable table;
  table.order = n;
  const double u_floor = cancel_tau * max_abs(u);
  const double y_floor = cancel_tau * max_abs(y);
  for (const auto& [omega, uc] : u.lines()) {
    const Complex yc = y.at(omega);
    if (std::abs(uc) > u_floor) {
      table.rows.push_back({omega, uc, yc, yc / uc});
    } else if (std::abs(yc) > y_floor) {
      table.diagnostics.push_back(
          {omega,
           "QLTF undefined: input spectral cancellation (|U_n| below "
           "threshold, |Y_n| significant)"});
    }
  }
  return table;
}

OutputSpectrum output_spectrum(const MultitoneSignal& signal,
                               const std::vector<KernelTransferFunction>& hs) {
  if (hs.empty()) throw std::invalid_argument("need kernels for orders 1..N");
  for (std::size_t i = 0; i < hs.size(); ++i) {
    if (hs[i].order() != static_cast<int>(i) + 1) {
      throw std::invalid_argument(
          "kernels must cover orders 1..N, each exactly once");
    }
  }
  const int N = static_cast<int>(hs.size());
  OutputSpectrum total(freq_tol(N * signal.max_frequency()));
  for (const KernelTransferFunction& h : hs) {
    const LineSpectrum yn = output_spectral_coeffs(signal, h);
    for (const auto& [freq, coeff] : yn.lines()) total.add(freq, coeff);
  }
  return total;
}

CompareReport compare_fingerprints(const QltfTable& baseline,
                                   const QltfTable& probe) {
  if (baseline.order != probe.order) {
    throw std::invalid_argument("cannot compare tables of different orders");
  }
  double scale = 1.0;
  for (const QltfRow& r : baseline.rows) scale = std::max(scale, std::abs(r.omega));
  for (const QltfRow& r : probe.rows) scale = std::max(scale, std::abs(r.omega));
  const double tol = freq_tol(scale);
  if (baseline.rows.size() != probe.rows.size()) {
    throw std::invalid_argument("tables cover different frequency sets");
  }
  const double rad2deg = 180.0 / std::acos(-1.0);
  CompareReport report;
  report.rows.reserve(baseline.rows.size());
  for (const QltfRow& b : baseline.rows) {
    const QltfRow* p = probe.find(b.omega, tol);
    if (p == nullptr) {
      throw std::invalid_argument("tables cover different frequency sets");
    }
    CompareRow row;
    row.omega = b.omega;
    row.mag_ratio = std::abs(p->g) / std::abs(b.g);
    row.phase_delta_deg =
        wrap_deg((std::arg(p->g) - std::arg(b.g)) * rad2deg);
    report.max_mag_ratio_dev =
        std::max(report.max_mag_ratio_dev, std::abs(row.mag_ratio - 1.0));
    report.max_phase_delta_deg =
        std::max(report.max_phase_delta_deg, std::abs(row.phase_delta_deg));
    report.rows.push_back(row);
  }
  return report;
}

}  // namespace qltf
