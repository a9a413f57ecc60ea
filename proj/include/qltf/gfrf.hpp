#pragma once

#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "qltf/spectral_core.hpp"

namespace qltf {

// Evaluation hit a pole of a transfer function (undamped resonance).
struct PoleError : std::runtime_error {
  explicit PoleError(const std::string& msg) : std::runtime_error(msg) {}
};

// Order-n frequency-domain kernel H_n: pure evaluator (w_1..w_n) -> complex.
class KernelTransferFunction {
 public:
  using Evaluator = std::function<Complex(const std::vector<double>&)>;

  KernelTransferFunction(int order, Evaluator eval);

  int order() const { return order_; }
  Complex operator()(const std::vector<double>& w) const;

 private:
  int order_;
  Evaluator eval_;
};

// Oscillator in physical form: M y'' + D y' + K1 y + K2 y^2 + K3 y^3 = u.
struct PhysicalParams {
  double M = 1.0;
  double D = 0.0;
  double K1 = 1.0;
  double K2 = 0.0;
  double K3 = 0.0;
};

// Standard form: y'' + 2*zeta*wn y' + wn^2 (y + eps2 y^2 + eps3 y^3) = u.
struct DuffingParams {
  double wn = 1.0;    // rad/s, > 0
  double zeta = 0.0;  // >= 0
  double eps2 = 0.0;
  double eps3 = 0.0;
};

DuffingParams normalize(const PhysicalParams& p);

Complex duffing_h1(const DuffingParams& dp, double w);
Complex duffing_h2(const DuffingParams& dp, double w1, double w2);
Complex duffing_h3(const DuffingParams& dp, double w1, double w2, double w3);

// Closed-form H_n as an evaluator; orders 1..3.
KernelTransferFunction duffing_kernel(const DuffingParams& dp, int order);

// Average of h over all argument permutations (the symmetric representative).
KernelTransferFunction symmetrize(const KernelTransferFunction& h);

}  // namespace qltf
