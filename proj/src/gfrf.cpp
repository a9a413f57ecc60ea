#include "qltf/gfrf.hpp"

#include <algorithm>
#include <cmath>
#include <utility>

namespace qltf {

KernelTransferFunction::KernelTransferFunction(int order, Evaluator eval)
    : order_(order), eval_(std::move(eval)) {
  if (order_ < 1) throw std::invalid_argument("kernel order must be >= 1");
  if (!eval_) throw std::invalid_argument("kernel evaluator must be callable");
}

Complex KernelTransferFunction::operator()(const std::vector<double>& w) const {
  if (static_cast<int>(w.size()) != order_) {
    throw std::invalid_argument("kernel evaluated with wrong argument count");
  }
  return eval_(w);
}

DuffingParams normalize(const PhysicalParams& p) {
  if (!(p.M > 0.0)) throw std::invalid_argument("mass must be positive");
  if (!(p.K1 > 0.0)) {
    throw std::invalid_argument("linear stiffness must be positive");
  }
  if (p.D < 0.0) throw std::invalid_argument("damping must be non-negative");
  DuffingParams dp;
  dp.wn = std::sqrt(p.K1 / p.M);
  dp.zeta = p.D / (2.0 * std::sqrt(p.M * p.K1));
  dp.eps2 = p.K2 / p.K1;
  dp.eps3 = p.K3 / p.K1;
  return dp;
}

Complex duffing_h1(const DuffingParams& dp, double w) {
  const Complex jw(0.0, w);
  const Complex den = jw * jw + 2.0 * dp.zeta * dp.wn * jw + dp.wn * dp.wn;
  if (std::abs(den) == 0.0) {
    throw PoleError("H1 pole at omega = " + std::to_string(w) +
                    " (undamped resonance)");
  }
  return 1.0 / den;
}

Complex duffing_h2(const DuffingParams& dp, double w1, double w2) {
  return -dp.eps2 * dp.wn * dp.wn * duffing_h1(dp, w1) * duffing_h1(dp, w2) *
         duffing_h1(dp, w1 + w2);
}

Complex duffing_h3(const DuffingParams& dp, double w1, double w2, double w3) {
  // Canonical argument order keeps permutation invariance bit-exact.
  double w[3] = {w1, w2, w3};
  std::sort(w, w + 3);
  const Complex a = duffing_h1(dp, w[0]);
  const Complex b = duffing_h1(dp, w[1]);
  const Complex c = duffing_h1(dp, w[2]);
  const Complex bracket =
      4.0 * dp.eps2 *
          (a * duffing_h2(dp, w[1], w[2]) + b * duffing_h2(dp, w[0], w[2]) +
           c * duffing_h2(dp, w[0], w[1])) +
      6.0 * dp.eps3 * a * b * c;
  return -(dp.wn * dp.wn / 6.0) * bracket *
         duffing_h1(dp, w[0] + w[1] + w[2]);
}

KernelTransferFunction duffing_kernel(const DuffingParams& dp, int order) {
  switch (order) {
    case 1:
      return KernelTransferFunction(
          1, [dp](const std::vector<double>& w) { return duffing_h1(dp, w[0]); });
    case 2:
      return KernelTransferFunction(2, [dp](const std::vector<double>& w) {
        return duffing_h2(dp, w[0], w[1]);
      });
    case 3:
      return KernelTransferFunction(3, [dp](const std::vector<double>& w) {
        return duffing_h3(dp, w[0], w[1], w[2]);
      });
    default:
      throw std::invalid_argument(
          "closed-form oscillator kernels exist for orders 1..3");
  }
}

KernelTransferFunction symmetrize(const KernelTransferFunction& h) {
  return KernelTransferFunction(
      h.order(), [h](const std::vector<double>& w) {
        std::vector<double> p(w);
        std::sort(p.begin(), p.end());
        Complex sum(0.0, 0.0);
        long count = 0;
        // next_permutation over the sorted arguments visits each distinct
        // arrangement once; the average is unchanged by duplicates.
        do {
          sum += h(p);
          ++count;
        } while (std::next_permutation(p.begin(), p.end()));
        return sum / static_cast<double>(count);
      });
}

}  // namespace qltf
