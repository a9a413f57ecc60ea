#pragma once

#include <string>
#include <vector>

#include "qltf/gfrf.hpp"
#include "qltf/spectral_core.hpp"

namespace qltf {

// The line-amplitude map B(w): A_k at +w_k, conj(A_k) at -w_k, 0 elsewhere
// (matching within the signal tolerance).
class BMap {
 public:
  explicit BMap(const MultitoneSignal& signal);
  Complex at(double w) const;

 private:
  std::vector<double> freqs_;
  std::vector<Complex> amps_;
  double tol_;
};

struct QltfRow {
  double omega = 0.0;
  Complex u;  // U_n(jw)
  Complex y;  // Y_n(jw)
  Complex g;  // G_n(jw) = y/u
};

struct QltfDiagnostic {
  double omega = 0.0;
  std::string message;
};

// Per-order table over the valid domain: rows sorted by omega, every row with
// |u| above the cancellation threshold; excluded frequencies that still carry
// significant |y| are listed in diagnostics.
struct QltfTable {
  int order = 0;
  std::vector<QltfRow> rows;
  std::vector<QltfDiagnostic> diagnostics;

  const QltfRow* find(double omega, double tol) const;
};

// Order-n input spectral function: coefficient at each achievable tone sum,
// (pi / 2^(n-1)) * sum over ordered signed tuples of B(w_k1)...B(w_kn).
LineSpectrum input_spectral_coeffs(const MultitoneSignal& signal, int n);

// Same enumeration with each tuple weighted by H_n(w_k1, ..., w_kn).
LineSpectrum output_spectral_coeffs(const MultitoneSignal& signal,
                                    const KernelTransferFunction& h);

// QLTF of order h.order(): g = y/u wherever |u| > cancel_tau * max|u|.
QltfTable qltf(const MultitoneSignal& signal, const KernelTransferFunction& h,
               double cancel_tau = 1e-10);

// Total output spectrum: per-frequency sum of Y_n over orders 1..N.
using OutputSpectrum = LineSpectrum;
OutputSpectrum output_spectrum(const MultitoneSignal& signal,
                               const std::vector<KernelTransferFunction>& hs);

struct CompareRow {
  double omega = 0.0;
  double mag_ratio = 0.0;        // |g_probe| / |g_baseline|
  double phase_delta_deg = 0.0;  // wrapped into (-180, 180]
};

struct CompareReport {
  std::vector<CompareRow> rows;
  double max_mag_ratio_dev = 0.0;   // max |mag_ratio - 1|
  double max_phase_delta_deg = 0.0; // max |phase_delta_deg|
};

// Row-by-row deviation of probe against baseline. Orders and row frequency
// sets must match (under tolerance).
CompareReport compare_fingerprints(const QltfTable& baseline,
                                   const QltfTable& probe);

}  // namespace qltf
