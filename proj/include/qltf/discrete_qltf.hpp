#pragma once

#include <string>
#include <vector>

#include "qltf/gfrf.hpp"
#include "qltf/spectral_core.hpp"

namespace qltf {

// Uniformly sampled real signal: samples[k] = x(k*T).
struct SampledSignal {
  std::vector<double> samples;
  double sample_interval = 1.0;  // T, seconds, > 0
};

// Finite-support order-n kernel h[i_1..i_n], indices 0..L-1, row-major.
class DiscreteKernel {
 public:
  DiscreteKernel(int order, int memory, std::vector<double> values);

  int order() const { return order_; }
  int memory() const { return memory_; }
  const std::vector<double>& values() const { return values_; }

  // H_n at a DFT bin tuple: sum over taps of h[i..] e^{-j 2 pi (m.i)/N}.
  Complex bin_response(const std::vector<int>& bins, int N) const;

  // Continuous-frequency tap-delay evaluator with sample interval T:
  // H_n(w_1..w_n) = sum h[i..] e^{-j T (w.i)}.
  KernelTransferFunction dtft_evaluator(double T) const;

 private:
  int order_;
  int memory_;
  std::vector<double> values_;
};

using Spectrum = std::vector<Complex>;

// Direct-sum DFT pair: X[m] = sum_k x[k] e^{-j2pi mk/N}, x[k] = (1/N) sum_m.
Spectrum dft(const std::vector<double>& x);
Spectrum dft(const std::vector<Complex>& x);
std::vector<Complex> idft(const Spectrum& X);

// Real frequency of bin m: 2 pi m' / (N T), with m' = m - N when m > N/2.
double bin_frequency(int m, int N, double T);

// Time-domain order-n response with u extended N-periodically:
// y[k] = sum over taps of h[i_1..i_n] u[k-i_1]...u[k-i_n]. Requires L <= N.
std::vector<double> volterra_response(const DiscreteKernel& kernel,
                                      const SampledSignal& u);

// U_n[m]: DFT of the pointwise nth power of u (equals the circular
// (n-1)-fold self-convolution of dft(u) scaled by 1/N^(n-1)).
Spectrum input_spectral_dft(const SampledSignal& u, int n);

// Y_n[m] = (1/N^(n-1)) sum over (m_1..m_{n-1}) of
//   H_n[m_1,..,m_{n-1}, (m - sum) mod N] * U[m_1]...U[(m - sum) mod N].
// Kernel-backed H_n comes from bin_response; evaluator-backed H_n is sampled
// at the bin frequencies. Guarded at N^(n-1) <= 1e7 tuples.
Spectrum output_spectral_dft(const DiscreteKernel& kernel,
                             const SampledSignal& u);
Spectrum output_spectral_dft(const KernelTransferFunction& h,
                             const SampledSignal& u);

struct DqltfRow {
  int m = 0;
  double omega = 0.0;  // rad/s, negative for bins above N/2
  Complex u;
  Complex y;
  Complex g;
};

struct DqltfTable {
  int order = 0;
  double tau = 0.0;  // valid-bin threshold used
  std::vector<DqltfRow> rows;
  std::vector<std::string> diagnostics;
};

// G_n[m] = Y_n[m]/U_n[m] at bins with |U_n[m]| > tau * max|U_n|; excluded
// bins that still carry significant |Y_n| are reported in diagnostics.
DqltfTable dqltf(const DiscreteKernel& kernel, const SampledSignal& u,
                 double tau = 1e-8);
DqltfTable dqltf(const KernelTransferFunction& h, const SampledSignal& u,
                 double tau = 1e-8);

// Distance from w to the nearest DFT bin frequency (leakage check).
double bin_misalignment(double w, int N, double T);

}  // namespace qltf
