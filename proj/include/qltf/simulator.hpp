#pragma once

#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "qltf/gfrf.hpp"
#include "qltf/spectral_core.hpp"

namespace qltf {

// |y| crossed the escape guard during integration.
struct BlowUpError : std::runtime_error {
  BlowUpError(const std::string& msg, double t)
      : std::runtime_error(msg), last_stable_time(t) {}
  double last_stable_time;
};

struct SimConfig {
  double t_start = 0.0;
  double t_end = 1.0;
  double step = 0.01;  // h, > 0; (t_end - t_start)/step must be integral
  double y0 = 0.0;
  double v0 = 0.0;
};

struct Trajectory {
  std::vector<double> t;  // uniform grid, t_start..t_end inclusive
  std::vector<double> y;
  std::vector<double> v;
  DuffingParams params;
  SimConfig config;
  std::vector<Tone> forcing;
};

// Classical fixed-step RK4 on y' = v,
// v' = u(t) - 2 zeta wn v - wn^2 (y + eps2 y^2 + eps3 y^3),
// with u(t) evaluated analytically from the tone list at substage times.
// Throws BlowUpError when |y| exceeds 1e6.
Trajectory simulate_duffing(const DuffingParams& dp,
                            const std::vector<Tone>& forcing,
                            const SimConfig& cfg);
Trajectory simulate_duffing(const DuffingParams& dp,
                            const MultitoneSignal& forcing,
                            const SimConfig& cfg);

// (y, v) pairs for phase-portrait plotting, skipping the leading
// floor(skip_fraction * rows) transient samples.
std::vector<std::pair<double, double>> export_phase_portrait(
    const Trajectory& tr, double skip_fraction = 0.0);

}  // namespace qltf
