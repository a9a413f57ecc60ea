#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "qltf/discrete_qltf.hpp"
#include "qltf/qltf_multitone.hpp"
#include "qltf/simulator.hpp"

namespace qltf::io {

// %.{precision}g with -0 normalized to 0; non-finite values print as null.
std::string format_num(double v, int precision = 6);

// Degrees in (-180, 180]; values landing on the boundary report +180.
double phase_deg(Complex z);
double wrap_deg(double deg);

// CSV emitters. Angles are degrees, frequencies rad/s; headers are fixed.
std::string qltf_csv(const QltfTable& t, int precision = 6);
std::string dqltf_csv(const DqltfTable& t, int precision = 6);
std::string trajectory_csv(const Trajectory& tr, int precision = 6);
std::string phase_portrait_csv(
    const std::vector<std::pair<double, double>>& pairs, int precision = 6);
std::string compare_csv(const CompareReport& r, int precision = 6);
std::string intervals_csv(const IntervalUnion& u, int precision = 6);
std::string freq_set_lines(const FrequencySet& s, int precision = 6);

// JSON mirrors with identical field names, numbers at the same precision.
std::string qltf_json(const QltfTable& t, int precision = 6);
std::string dqltf_json(const DqltfTable& t, int precision = 6);
std::string trajectory_json(const Trajectory& tr, int precision = 6);
std::string compare_json(const CompareReport& r, int precision = 6);
std::string intervals_json(const IntervalUnion& u, int precision = 6);
std::string freq_set_json(const FrequencySet& s, int precision = 6);

// Parsers for the formats above (and the input file formats).
QltfTable parse_qltf_csv(std::istream& in);  // order is not recorded in CSV
DqltfTable parse_dqltf_csv(std::istream& in);
Trajectory parse_trajectory_csv(std::istream& in);
std::vector<std::pair<double, double>> parse_phase_portrait_csv(
    std::istream& in);
CompareReport parse_compare_csv(std::istream& in);

// Kernel document: `order N`, `memory L`, optional `sample_interval T`
// (default 1), then `values` followed by L^N row-major numbers.
struct KernelFile {
  DiscreteKernel kernel;
  double sample_interval = 1.0;
};
KernelFile parse_kernel_file(std::istream& in);

// Sampled signal: first line `T=<seconds>`, then one sample per line.
SampledSignal parse_signal_csv(std::istream& in);
std::string signal_csv(const SampledSignal& u, int precision = 12);

// Tone list syntax: `mag@freq:phase_deg` items joined by commas; the phase
// part may be omitted (0). An empty string parses to no tones.
std::vector<Tone> parse_tone_list(const std::string& text);
std::string tone_list_string(const std::vector<Tone>& tones,
                             int precision = 12);

// Structured alternative: {"tones": [{"mag":..., "freq":..., "phase_deg":...}]}
std::vector<Tone> parse_tones_json(std::istream& in);

}  // namespace qltf::io
