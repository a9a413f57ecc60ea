#include "qltf/simulator.hpp"

#include <cmath>
#include <sstream>

namespace qltf {

namespace {

constexpr double kEscape = 1e6;

double forcing_at(const std::vector<Tone>& tones, double t) {
  double u = 0.0;
  for (const Tone& tone : tones) {
    u += tone.magnitude * std::cos(tone.frequency * t + tone.phase);
  }
  return u;
}

void validate(const DuffingParams& dp, const std::vector<Tone>& forcing,
              const SimConfig& cfg) {
  if (!(dp.wn > 0.0)) throw std::invalid_argument("wn must be positive");
  if (dp.zeta < 0.0) throw std::invalid_argument("zeta must be non-negative");
  for (const Tone& t : forcing) {
    if (!(t.frequency > 0.0)) {
      throw std::invalid_argument("forcing tone frequency must be positive");
    }
    if (t.magnitude < 0.0) {
      throw std::invalid_argument("forcing tone magnitude must be non-negative");
    }
  }
  if (!(cfg.t_end > cfg.t_start)) {
    throw std::invalid_argument("t_end must exceed t_start");
  }
  if (!(cfg.step > 0.0)) throw std::invalid_argument("step must be positive");
  if (!std::isfinite(cfg.y0) || !std::isfinite(cfg.v0)) {
    throw std::invalid_argument("initial conditions must be finite");
  }
}

}  // namespace

Trajectory simulate_duffing(const DuffingParams& dp,
                            const std::vector<Tone>& forcing,
                            const SimConfig& cfg) {
  validate(dp, forcing, cfg);
  const double span = cfg.t_end - cfg.t_start;
  const double steps_d = span / cfg.step;
  const long long steps = std::llround(steps_d);
  if (steps < 1 || std::abs(steps_d - static_cast<double>(steps)) >
                       1e-6 * std::max(1.0, steps_d)) {
    throw std::invalid_argument(
        "(t_end - t_start)/step must be an integer step count");
  }

  const double wn2 = dp.wn * dp.wn;
  const double damp = 2.0 * dp.zeta * dp.wn;
  auto accel = [&](double t, double y, double v) {
    return forcing_at(forcing, t) - damp * v -
           wn2 * (y + dp.eps2 * y * y + dp.eps3 * y * y * y);
  };

  Trajectory tr;
  tr.params = dp;
  tr.config = cfg;
  tr.forcing = forcing;
  tr.t.reserve(steps + 1);
  tr.y.reserve(steps + 1);
  tr.v.reserve(steps + 1);
  const double h = cfg.step;
  double y = cfg.y0;
  double v = cfg.v0;
  tr.t.push_back(cfg.t_start);
  tr.y.push_back(y);
  tr.v.push_back(v);
  for (long long k = 0; k < steps; ++k) {
    const double t = cfg.t_start + static_cast<double>(k) * h;
    const double k1y = v;
    const double k1v = accel(t, y, v);
    const double k2y = v + 0.5 * h * k1v;
    const double k2v = accel(t + 0.5 * h, y + 0.5 * h * k1y, v + 0.5 * h * k1v);
    const double k3y = v + 0.5 * h * k2v;
    const double k3v = accel(t + 0.5 * h, y + 0.5 * h * k2y, v + 0.5 * h * k2v);
    const double k4y = v + h * k3v;
    const double k4v = accel(t + h, y + h * k3y, v + h * k3v);
    y += h / 6.0 * (k1y + 2.0 * k2y + 2.0 * k3y + k4y);
    v += h / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
    if (!std::isfinite(y) || !std::isfinite(v) || std::abs(y) > kEscape) {
      std::ostringstream msg;
      msg << "trajectory escaped (|y| > 1e6); last stable t = " << t;
      throw BlowUpError(msg.str(), t);
    }
    tr.t.push_back(cfg.t_start + static_cast<double>(k + 1) * h);
    tr.y.push_back(y);
    tr.v.push_back(v);
  }
  return tr;
}

Trajectory simulate_duffing(const DuffingParams& dp,
                            const MultitoneSignal& forcing,
                            const SimConfig& cfg) {
  return simulate_duffing(dp, forcing.tones(), cfg);
}

std::vector<std::pair<double, double>> export_phase_portrait(
    const Trajectory& tr, double skip_fraction) {
  if (tr.t.empty()) throw std::invalid_argument("trajectory is empty");
  if (!(skip_fraction >= 0.0 && skip_fraction < 1.0)) {
    throw std::invalid_argument("skip fraction must be in [0, 1)");
  }
  const std::size_t skip =
      static_cast<std::size_t>(skip_fraction * tr.t.size());
  std::vector<std::pair<double, double>> pairs;
  pairs.reserve(tr.t.size() - skip);
  for (std::size_t i = skip; i < tr.t.size(); ++i) {
    pairs.emplace_back(tr.y[i], tr.v[i]);
  }
  return pairs;
}

}  // namespace qltf
