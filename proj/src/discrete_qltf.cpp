#include "qltf/discrete_qltf.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

namespace qltf {

namespace {

constexpr double kTupleGuard = 1e7;

void validate_signal(const SampledSignal& u) {
  if (u.samples.empty()) throw std::invalid_argument("signal has no samples");
  if (!(u.sample_interval > 0.0) || !std::isfinite(u.sample_interval)) {
    throw std::invalid_argument("sample interval must be positive");
  }
  for (double s : u.samples) {
    if (!std::isfinite(s)) throw std::invalid_argument("samples must be finite");
  }
}

Complex unit_phasor(long long num, long long N) {
  // e^{-j 2 pi num / N}, with num reduced mod N to keep the angle accurate
  const double two_pi = 2.0 * std::acos(-1.0);
  long long r = num % N;
  if (r < 0) r += N;
  return std::polar(1.0, -two_pi * static_cast<double>(r) /
                             static_cast<double>(N));
}

}  // namespace

DiscreteKernel::DiscreteKernel(int order, int memory,
                               std::vector<double> values)
    : order_(order), memory_(memory), values_(std::move(values)) {
  if (order_ < 1) throw std::invalid_argument("kernel order must be >= 1");
  if (memory_ < 1) throw std::invalid_argument("kernel memory must be >= 1");
  double expected = 1.0;
  for (int i = 0; i < order_; ++i) expected *= memory_;
  if (expected > 1e8 ||
      values_.size() != static_cast<std::size_t>(expected)) {
    throw std::invalid_argument(
        "kernel needs memory^order values (row-major)");
  }
  for (double v : values_) {
    if (!std::isfinite(v)) {
      throw std::invalid_argument("kernel values must be finite");
    }
  }
}

Complex DiscreteKernel::bin_response(const std::vector<int>& bins,
                                     int N) const {
  if (static_cast<int>(bins.size()) != order_) {
    throw std::invalid_argument("bin tuple arity must equal kernel order");
  }
  Complex sum(0.0, 0.0);
  std::vector<int> tap(order_, 0);
  std::size_t flat = 0;
  while (true) {
    long long phase_num = 0;
    for (int d = 0; d < order_; ++d) {
      phase_num += static_cast<long long>(bins[d]) * tap[d];
    }
    sum += values_[flat] * unit_phasor(phase_num, N);
    ++flat;
    int pos = order_ - 1;
    while (pos >= 0 && ++tap[pos] == memory_) {
      tap[pos] = 0;
      --pos;
    }
    if (pos < 0) break;
  }
  return sum;
}

KernelTransferFunction DiscreteKernel::dtft_evaluator(double T) const {
  if (!(T > 0.0)) throw std::invalid_argument("sample interval must be positive");
  DiscreteKernel k(*this);
  return KernelTransferFunction(
      order_, [k, T](const std::vector<double>& w) {
        Complex sum(0.0, 0.0);
        std::vector<int> tap(k.order(), 0);
        std::size_t flat = 0;
        while (true) {
          double phase = 0.0;
          for (int d = 0; d < k.order(); ++d) phase += w[d] * tap[d];
          sum += k.values()[flat] * std::polar(1.0, -T * phase);
          ++flat;
          int pos = k.order() - 1;
          while (pos >= 0 && ++tap[pos] == k.memory()) {
            tap[pos] = 0;
            --pos;
          }
          if (pos < 0) break;
        }
        return sum;
      });
}

Spectrum dft(const std::vector<double>& x) {
  std::vector<Complex> cx(x.begin(), x.end());
  return dft(cx);
}

Spectrum dft(const std::vector<Complex>& x) {
  const long long N = static_cast<long long>(x.size());
  if (N == 0) throw std::invalid_argument("cannot transform empty sequence");
  Spectrum X(N);
  for (long long m = 0; m < N; ++m) {
    Complex acc(0.0, 0.0);
    for (long long k = 0; k < N; ++k) acc += x[k] * unit_phasor(m * k, N);
    X[m] = acc;
  }
  return X;
}

std::vector<Complex> idft(const Spectrum& X) {
  const long long N = static_cast<long long>(X.size());
  if (N == 0) throw std::invalid_argument("cannot transform empty sequence");
  std::vector<Complex> x(N);
  for (long long k = 0; k < N; ++k) {
    Complex acc(0.0, 0.0);
    for (long long m = 0; m < N; ++m) acc += X[m] * std::conj(unit_phasor(m * k, N));
    x[k] = acc / static_cast<double>(N);
  }
  return x;
}

double bin_frequency(int m, int N, double T) {
  const int mm = m > N / 2 ? m - N : m;
  return 2.0 * std::acos(-1.0) * mm / (N * T);
}

std::vector<double> volterra_response(const DiscreteKernel& kernel,
                                      const SampledSignal& u) {
  validate_signal(u);
  const int N = static_cast<int>(u.samples.size());
  const int L = kernel.memory();
  const int n = kernel.order();
  if (L > N) {
    throw std::invalid_argument("kernel memory exceeds signal length");
  }
  std::vector<double> y(N, 0.0);
  for (int k = 0; k < N; ++k) {
    double acc = 0.0;
    std::vector<int> tap(n, 0);
    std::size_t flat = 0;
    while (true) {
      double prod = kernel.values()[flat];
      for (int d = 0; d < n; ++d) {
        int idx = (k - tap[d]) % N;
        if (idx < 0) idx += N;
        prod *= u.samples[idx];
      }
      acc += prod;
      ++flat;
      int pos = n - 1;
      while (pos >= 0 && ++tap[pos] == L) {
        tap[pos] = 0;
        --pos;
      }
      if (pos < 0) break;
    }
    y[k] = acc;
  }
  return y;
}

Spectrum input_spectral_dft(const SampledSignal& u, int n) {
  validate_signal(u);
  if (n < 1) throw std::invalid_argument("order must be >= 1");
  std::vector<double> powered(u.samples.size());
  for (std::size_t k = 0; k < u.samples.size(); ++k) {
    double p = 1.0;
    for (int i = 0; i < n; ++i) p *= u.samples[k];
    powered[k] = p;
  }
  return dft(powered);
}

namespace {

// Shared Y_n core: hb maps a bin tuple of length n to H_n at those bins.
template <typename HBins>
Spectrum output_core(int n, const SampledSignal& u, HBins&& hb) {
  validate_signal(u);
  const int N = static_cast<int>(u.samples.size());
  if (std::pow(static_cast<double>(N), n - 1) > kTupleGuard) {
    throw std::length_error("bin tuple count exceeds enumeration guard");
  }
  const Spectrum U = dft(u.samples);
  const double norm = std::pow(static_cast<double>(N), n - 1);
  Spectrum Y(N);
  std::vector<int> bins(n, 0);
  for (int m = 0; m < N; ++m) {
    Complex acc(0.0, 0.0);
    std::vector<int> idx(n - 1, 0);
    while (true) {
      long long partial = 0;
      Complex uprod(1.0, 0.0);
      for (int d = 0; d < n - 1; ++d) {
        bins[d] = idx[d];
        partial += idx[d];
        uprod *= U[idx[d]];
      }
      int last = static_cast<int>(((m - partial) % N + N) % N);
      bins[n - 1] = last;
      uprod *= U[last];
      acc += hb(bins) * uprod;
      int pos = n - 2;
      while (pos >= 0 && ++idx[pos] == N) {
        idx[pos] = 0;
        --pos;
      }
      if (pos < 0) break;
    }
    Y[m] = acc / norm;
  }
  return Y;
}

}  // namespace

Spectrum output_spectral_dft(const DiscreteKernel& kernel,
                             const SampledSignal& u) {
  const int N = static_cast<int>(u.samples.size());
  return output_core(kernel.order(), u, [&](const std::vector<int>& bins) {
    return kernel.bin_response(bins, N);
  });
}

Spectrum output_spectral_dft(const KernelTransferFunction& h,
                             const SampledSignal& u) {
  const int N = static_cast<int>(u.samples.size());
  const double T = u.sample_interval;
  std::vector<double> w(h.order());
  return output_core(h.order(), u, [&](const std::vector<int>& bins) {
    for (std::size_t d = 0; d < bins.size(); ++d) {
      w[d] = bin_frequency(bins[d], N, T);
    }
    return h(w);
  });
}

namespace {

DqltfTable dqltf_from(int order, double tau, const SampledSignal& u,
                      const Spectrum& Un, const Spectrum& Yn) {
  DqltfTable table;
  table.order = order;
  table.tau = tau;
  const int N = static_cast<int>(u.samples.size());
  double max_u = 0.0;
  double max_y = 0.0;
  for (int m = 0; m < N; ++m) {
    max_u = std::max(max_u, std::abs(Un[m]));
    max_y = std::max(max_y, std::abs(Yn[m]));
  }
  if (max_u == 0.0) {
    table.diagnostics.push_back("input spectrum is zero; no valid bins");
    return table;
  }
  for (int m = 0; m < N; ++m) {
    if (std::abs(Un[m]) > tau * max_u) {
      table.rows.push_back({m, bin_frequency(m, N, u.sample_interval), Un[m],
                            Yn[m], Yn[m] / Un[m]});
    } else if (std::abs(Yn[m]) > tau * max_y) {
      std::ostringstream msg;
      msg << "bin " << m
          << " excluded: |U_n| below threshold but |Y_n| significant";
      table.diagnostics.push_back(msg.str());
    }
  }
  return table;
}

}  // namespace

DqltfTable dqltf(const DiscreteKernel& kernel, const SampledSignal& u,
                 double tau) {
  return dqltf_from(kernel.order(), tau, u,
                    input_spectral_dft(u, kernel.order()),
                    output_spectral_dft(kernel, u));
}

DqltfTable dqltf(const KernelTransferFunction& h, const SampledSignal& u,
                 double tau) {
  return dqltf_from(h.order(), tau, u, input_spectral_dft(u, h.order()),
                    output_spectral_dft(h, u));
}

double bin_misalignment(double w, int N, double T) {
  const double spacing = 2.0 * std::acos(-1.0) / (N * T);
  return std::abs(w - std::round(w / spacing) * spacing);
}

}  // namespace qltf
