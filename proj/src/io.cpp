#include "qltf/io.hpp"

#include <cctype>
#include <cmath>
#include <cstdio>
#include <istream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace qltf::io {

namespace {

double parse_double(const std::string& text, const std::string& what) {
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(text, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument("cannot parse " + what + ": '" + text + "'");
  }
  while (pos < text.size() && std::isspace(static_cast<unsigned char>(text[pos]))) ++pos;
  if (pos != text.size()) {
    throw std::invalid_argument("cannot parse " + what + ": '" + text + "'");
  }
  return v;
}

int parse_int(const std::string& text, const std::string& what) {
  const double v = parse_double(text, what);
  const int i = static_cast<int>(std::llround(v));
  if (v != static_cast<double>(i)) {
    throw std::invalid_argument(what + " must be an integer: '" + text + "'");
  }
  return i;
}

std::string trim(const std::string& s) {
  std::size_t b = 0;
  std::size_t e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> parts;
  std::size_t start = 0;
  while (true) {
    const std::size_t pos = line.find(sep, start);
    if (pos == std::string::npos) {
      parts.push_back(line.substr(start));
      break;
    }
    parts.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
  return parts;
}

// Reads the next non-empty line; strips a trailing '\r'.
bool next_line(std::istream& in, std::string& line) {
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (!trim(line).empty()) return true;
  }
  return false;
}

void expect_header(std::istream& in, const std::string& expected,
                   std::string* leading_comment = nullptr) {
  std::string line;
  while (next_line(in, line)) {
    if (line[0] == '#') {
      if (leading_comment != nullptr) *leading_comment = line;
      continue;
    }
    if (line != expected) {
      throw std::invalid_argument("expected header '" + expected + "', got '" +
                                  line + "'");
    }
    return;
  }
  throw std::invalid_argument("missing header '" + expected + "'");
}

std::vector<std::string> row_fields(const std::string& line,
                                    std::size_t count,
                                    const std::string& what) {
  std::vector<std::string> f = split(line, ',');
  if (f.size() != count) {
    throw std::invalid_argument("malformed " + what + " row: '" + line + "'");
  }
  return f;
}

}  // namespace

std::string format_num(double v, int precision) {
  if (!std::isfinite(v)) return "null";
  if (v == 0.0) v = 0.0;  // drop the sign of -0
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.*g", precision, v);
  return buf;
}

double wrap_deg(double deg) {
  deg = std::fmod(deg, 360.0);
  if (deg <= -180.0) deg += 360.0;
  if (deg > 180.0) deg -= 360.0;
  return deg;
}

double phase_deg(Complex z) {
  double deg = std::atan2(z.imag(), z.real()) * 180.0 / std::acos(-1.0);
  if (deg < -180.0 + 1e-9) deg = 180.0;  // closed boundary reports +180
  return deg;
}

std::string qltf_csv(const QltfTable& t, int precision) {
  std::string out = "omega,mag_U,phase_U_deg,mag_Y,phase_Y_deg,mag_G,phase_G_deg\n";
  for (const QltfRow& r : t.rows) {
    out += format_num(r.omega, precision) + ',' +
           format_num(std::abs(r.u), precision) + ',' +
           format_num(phase_deg(r.u), precision) + ',' +
           format_num(std::abs(r.y), precision) + ',' +
           format_num(phase_deg(r.y), precision) + ',' +
           format_num(std::abs(r.g), precision) + ',' +
           format_num(phase_deg(r.g), precision) + '\n';
  }
  return out;
}

std::string dqltf_csv(const DqltfTable& t, int precision) {
  std::string out = "m,omega_rad_s,mag_U,mag_Y,mag_G,phase_G_deg\n";
  for (const DqltfRow& r : t.rows) {
    out += std::to_string(r.m) + ',' + format_num(r.omega, precision) + ',' +
           format_num(std::abs(r.u), precision) + ',' +
           format_num(std::abs(r.y), precision) + ',' +
           format_num(std::abs(r.g), precision) + ',' +
           format_num(phase_deg(r.g), precision) + '\n';
  }
  return out;
}

std::string trajectory_csv(const Trajectory& tr, int precision) {
  std::string out = "# wn=" + format_num(tr.params.wn, 12) +
                    " zeta=" + format_num(tr.params.zeta, 12) +
                    " eps2=" + format_num(tr.params.eps2, 12) +
                    " eps3=" + format_num(tr.params.eps3, 12) +
                    " t0=" + format_num(tr.config.t_start, 12) +
                    " t1=" + format_num(tr.config.t_end, 12) +
                    " h=" + format_num(tr.config.step, 12) +
                    " y0=" + format_num(tr.config.y0, 12) +
                    " v0=" + format_num(tr.config.v0, 12) +
                    " tones=" + tone_list_string(tr.forcing) + "\n";
  out += "t,y,v\n";
  for (std::size_t i = 0; i < tr.t.size(); ++i) {
    out += format_num(tr.t[i], precision) + ',' +
           format_num(tr.y[i], precision) + ',' +
           format_num(tr.v[i], precision) + '\n';
  }
  return out;
}

std::string phase_portrait_csv(
    const std::vector<std::pair<double, double>>& pairs, int precision) {
  std::string out = "y,v\n";
  for (const auto& [y, v] : pairs) {
    out += format_num(y, precision) + ',' + format_num(v, precision) + '\n';
  }
  return out;
}

std::string compare_csv(const CompareReport& r, int precision) {
  std::string out = "omega,mag_ratio,phase_delta_deg\n";
  for (const CompareRow& row : r.rows) {
    out += format_num(row.omega, precision) + ',' +
           format_num(row.mag_ratio, precision) + ',' +
           format_num(row.phase_delta_deg, precision) + '\n';
  }
  out += "# max_mag_ratio_dev=" + format_num(r.max_mag_ratio_dev, precision) +
         " max_phase_delta_deg=" +
         format_num(r.max_phase_delta_deg, precision) + "\n";
  return out;
}

std::string intervals_csv(const IntervalUnion& u, int precision) {
  std::string out;
  for (const Interval& iv : u.intervals()) {
    out += format_num(iv.lo, precision) + ',' + format_num(iv.hi, precision) +
           '\n';
  }
  return out;
}

std::string freq_set_lines(const FrequencySet& s, int precision) {
  std::string out;
  for (double v : s.values()) out += format_num(v, precision) + '\n';
  return out;
}

std::string qltf_json(const QltfTable& t, int precision) {
  std::string out = "{\n  \"order\": " + std::to_string(t.order) +
                    ",\n  \"rows\": [\n";
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    const QltfRow& r = t.rows[i];
    out += std::string("    {\"omega\": ") + format_num(r.omega, precision) +
           ", \"mag_U\": " + format_num(std::abs(r.u), precision) +
           ", \"phase_U_deg\": " + format_num(phase_deg(r.u), precision) +
           ", \"mag_Y\": " + format_num(std::abs(r.y), precision) +
           ", \"phase_Y_deg\": " + format_num(phase_deg(r.y), precision) +
           ", \"mag_G\": " + format_num(std::abs(r.g), precision) +
           ", \"phase_G_deg\": " + format_num(phase_deg(r.g), precision) + "}" +
           (i + 1 < t.rows.size() ? "," : "") + "\n";
  }
  out += "  ]\n}\n";
  return out;
}

std::string dqltf_json(const DqltfTable& t, int precision) {
  std::string out = "{\n  \"order\": " + std::to_string(t.order) +
                    ",\n  \"tau\": " + format_num(t.tau, precision) +
                    ",\n  \"rows\": [\n";
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    const DqltfRow& r = t.rows[i];
    out += std::string("    {\"m\": ") + std::to_string(r.m) +
           ", \"omega_rad_s\": " + format_num(r.omega, precision) +
           ", \"mag_U\": " + format_num(std::abs(r.u), precision) +
           ", \"mag_Y\": " + format_num(std::abs(r.y), precision) +
           ", \"mag_G\": " + format_num(std::abs(r.g), precision) +
           ", \"phase_G_deg\": " + format_num(phase_deg(r.g), precision) +
           "}" + (i + 1 < t.rows.size() ? "," : "") + "\n";
  }
  out += "  ]\n}\n";
  return out;
}

std::string trajectory_json(const Trajectory& tr, int precision) {
  std::string out = "{\n  \"params\": {\"wn\": " + format_num(tr.params.wn, 12) +
                    ", \"zeta\": " + format_num(tr.params.zeta, 12) +
                    ", \"eps2\": " + format_num(tr.params.eps2, 12) +
                    ", \"eps3\": " + format_num(tr.params.eps3, 12) +
                    ", \"t0\": " + format_num(tr.config.t_start, 12) +
                    ", \"t1\": " + format_num(tr.config.t_end, 12) +
                    ", \"h\": " + format_num(tr.config.step, 12) +
                    ", \"y0\": " + format_num(tr.config.y0, 12) +
                    ", \"v0\": " + format_num(tr.config.v0, 12) +
                    ", \"tones\": \"" + tone_list_string(tr.forcing) +
                    "\"},\n  \"rows\": [\n";
  for (std::size_t i = 0; i < tr.t.size(); ++i) {
    out += std::string("    {\"t\": ") + format_num(tr.t[i], precision) +
           ", \"y\": " + format_num(tr.y[i], precision) +
           ", \"v\": " + format_num(tr.v[i], precision) + "}" +
           (i + 1 < tr.t.size() ? "," : "") + "\n";
  }
  out += "  ]\n}\n";
  return out;
}

std::string compare_json(const CompareReport& r, int precision) {
  std::string out = "{\n  \"rows\": [\n";
  for (std::size_t i = 0; i < r.rows.size(); ++i) {
    const CompareRow& row = r.rows[i];
    out += std::string("    {\"omega\": ") + format_num(row.omega, precision) +
           ", \"mag_ratio\": " + format_num(row.mag_ratio, precision) +
           ", \"phase_delta_deg\": " +
           format_num(row.phase_delta_deg, precision) + "}" +
           (i + 1 < r.rows.size() ? "," : "") + "\n";
  }
  out += "  ],\n  \"summary\": {\"max_mag_ratio_dev\": " +
         format_num(r.max_mag_ratio_dev, precision) +
         ", \"max_phase_delta_deg\": " +
         format_num(r.max_phase_delta_deg, precision) + "}\n}\n";
  return out;
}

std::string intervals_json(const IntervalUnion& u, int precision) {
  std::string out = "[\n";
  const auto& iv = u.intervals();
  for (std::size_t i = 0; i < iv.size(); ++i) {
    out += std::string("  {\"lo\": ") + format_num(iv[i].lo, precision) +
           ", \"hi\": " + format_num(iv[i].hi, precision) + "}" +
           (i + 1 < iv.size() ? "," : "") + "\n";
  }
  out += "]\n";
  return out;
}

std::string freq_set_json(const FrequencySet& s, int precision) {
  std::string out = "[";
  for (std::size_t i = 0; i < s.values().size(); ++i) {
    out += (i ? ", " : "") + format_num(s.values()[i], precision);
  }
  out += "]\n";
  return out;
}

QltfTable parse_qltf_csv(std::istream& in) {
  expect_header(in, "omega,mag_U,phase_U_deg,mag_Y,phase_Y_deg,mag_G,phase_G_deg");
  const double deg2rad = std::acos(-1.0) / 180.0;
  QltfTable t;
  std::string line;
  while (next_line(in, line)) {
    if (line[0] == '#') continue;
    const auto f = row_fields(line, 7, "QLTF");
    QltfRow r;
    r.omega = parse_double(f[0], "omega");
    r.u = std::polar(parse_double(f[1], "mag_U"),
                     parse_double(f[2], "phase_U_deg") * deg2rad);
    r.y = std::polar(parse_double(f[3], "mag_Y"),
                     parse_double(f[4], "phase_Y_deg") * deg2rad);
    r.g = std::polar(parse_double(f[5], "mag_G"),
                     parse_double(f[6], "phase_G_deg") * deg2rad);
    t.rows.push_back(r);
  }
  return t;
}

DqltfTable parse_dqltf_csv(std::istream& in) {
  expect_header(in, "m,omega_rad_s,mag_U,mag_Y,mag_G,phase_G_deg");
  const double deg2rad = std::acos(-1.0) / 180.0;
  DqltfTable t;
  std::string line;
  while (next_line(in, line)) {
    if (line[0] == '#') continue;
    const auto f = row_fields(line, 6, "DQLTF");
    DqltfRow r;
    r.m = parse_int(f[0], "m");
    r.omega = parse_double(f[1], "omega_rad_s");
    r.u = parse_double(f[2], "mag_U");
    r.y = parse_double(f[3], "mag_Y");
    r.g = std::polar(parse_double(f[4], "mag_G"),
                     parse_double(f[5], "phase_G_deg") * deg2rad);
    t.rows.push_back(r);
  }
  return t;
}

Trajectory parse_trajectory_csv(std::istream& in) {
  std::string meta;
  expect_header(in, "t,y,v", &meta);
  Trajectory tr;
  if (!meta.empty()) {
    std::istringstream ms(meta.substr(1));
    std::string pair;
    while (ms >> pair) {
      const std::size_t eq = pair.find('=');
      if (eq == std::string::npos) continue;
      const std::string key = pair.substr(0, eq);
      const std::string val = pair.substr(eq + 1);
      if (key == "wn") tr.params.wn = parse_double(val, key);
      else if (key == "zeta") tr.params.zeta = parse_double(val, key);
      else if (key == "eps2") tr.params.eps2 = parse_double(val, key);
      else if (key == "eps3") tr.params.eps3 = parse_double(val, key);
      else if (key == "t0") tr.config.t_start = parse_double(val, key);
      else if (key == "t1") tr.config.t_end = parse_double(val, key);
      else if (key == "h") tr.config.step = parse_double(val, key);
      else if (key == "y0") tr.config.y0 = parse_double(val, key);
      else if (key == "v0") tr.config.v0 = parse_double(val, key);
      else if (key == "tones") tr.forcing = parse_tone_list(val);
    }
  }
  std::string line;
  while (next_line(in, line)) {
    if (line[0] == '#') continue;
    const auto f = row_fields(line, 3, "trajectory");
    tr.t.push_back(parse_double(f[0], "t"));
    tr.y.push_back(parse_double(f[1], "y"));
    tr.v.push_back(parse_double(f[2], "v"));
  }
  return tr;
}

std::vector<std::pair<double, double>> parse_phase_portrait_csv(
    std::istream& in) {
  expect_header(in, "y,v");
  std::vector<std::pair<double, double>> pairs;
  std::string line;
  while (next_line(in, line)) {
    if (line[0] == '#') continue;
    const auto f = row_fields(line, 2, "phase portrait");
    pairs.emplace_back(parse_double(f[0], "y"), parse_double(f[1], "v"));
  }
  return pairs;
}

CompareReport parse_compare_csv(std::istream& in) {
  expect_header(in, "omega,mag_ratio,phase_delta_deg");
  CompareReport r;
  std::string line;
  while (next_line(in, line)) {
    if (line[0] == '#') {
      std::istringstream ms(line.substr(1));
      std::string pair;
      while (ms >> pair) {
        const std::size_t eq = pair.find('=');
        if (eq == std::string::npos) continue;
        const std::string key = pair.substr(0, eq);
        const std::string val = pair.substr(eq + 1);
        if (key == "max_mag_ratio_dev") r.max_mag_ratio_dev = parse_double(val, key);
        else if (key == "max_phase_delta_deg") r.max_phase_delta_deg = parse_double(val, key);
      }
      continue;
    }
    const auto f = row_fields(line, 3, "comparison");
    CompareRow row;
    row.omega = parse_double(f[0], "omega");
    row.mag_ratio = parse_double(f[1], "mag_ratio");
    row.phase_delta_deg = parse_double(f[2], "phase_delta_deg");
    r.rows.push_back(row);
  }
  return r;
}

KernelFile parse_kernel_file(std::istream& in) {
  // Strip '#' line comments up front so annotated files parse cleanly.
  std::string text, line;
  while (std::getline(in, line)) {
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    text += line;
    text += '\n';
  }
  std::istringstream src(text);
  int order = -1;
  int memory = -1;
  double sample_interval = 1.0;
  std::string token;
  while (src >> token) {
    if (token == "order") {
      if (!(src >> order)) throw std::invalid_argument("kernel file: bad order");
    } else if (token == "memory") {
      if (!(src >> memory)) throw std::invalid_argument("kernel file: bad memory");
    } else if (token == "sample_interval") {
      if (!(src >> sample_interval)) {
        throw std::invalid_argument("kernel file: bad sample_interval");
      }
    } else if (token == "values") {
      if (order < 1 || memory < 1) {
        throw std::invalid_argument(
            "kernel file: order and memory must precede values");
      }
      std::size_t count = 1;
      for (int i = 0; i < order; ++i) count *= memory;
      std::vector<double> values;
      values.reserve(count);
      double v = 0.0;
      while (src >> v) values.push_back(v);
      if (!src.eof()) {
        throw std::invalid_argument("kernel file: non-numeric value entry");
      }
      if (values.size() != count) {
        throw std::invalid_argument(
            "kernel file: expected " + std::to_string(count) +
            " values, got " + std::to_string(values.size()));
      }
      return KernelFile{DiscreteKernel(order, memory, std::move(values)),
                        sample_interval};
    } else {
      throw std::invalid_argument("kernel file: unknown field '" + token + "'");
    }
  }
  throw std::invalid_argument("kernel file: missing values section");
}

SampledSignal parse_signal_csv(std::istream& in) {
  std::string line;
  if (!next_line(in, line)) {
    throw std::invalid_argument("signal file is empty");
  }
  const std::string header = trim(line);
  if (header.rfind("T=", 0) != 0) {
    throw std::invalid_argument(
        "signal file must start with a 'T=<seconds>' header");
  }
  SampledSignal u;
  u.sample_interval = parse_double(header.substr(2), "sample interval");
  while (next_line(in, line)) {
    if (line[0] == '#') continue;
    u.samples.push_back(parse_double(trim(line), "sample"));
  }
  if (u.samples.empty()) {
    throw std::invalid_argument("signal file has no samples");
  }
  return u;
}

std::string signal_csv(const SampledSignal& u, int precision) {
  std::string out = "T=" + format_num(u.sample_interval, precision) + "\n";
  for (double s : u.samples) out += format_num(s, precision) + '\n';
  return out;
}

std::vector<Tone> parse_tone_list(const std::string& text) {
  std::vector<Tone> tones;
  if (trim(text).empty()) return tones;
  for (const std::string& raw : split(text, ',')) {
    const std::string item = trim(raw);
    const std::size_t at = item.find('@');
    if (at == std::string::npos) {
      throw std::invalid_argument("tone '" + item +
                                  "' must look like mag@freq:phase_deg");
    }
    Tone t;
    t.magnitude = parse_double(item.substr(0, at), "tone magnitude");
    const std::string rest = item.substr(at + 1);
    const std::size_t colon = rest.find(':');
    if (colon == std::string::npos) {
      t.frequency = parse_double(rest, "tone frequency");
    } else {
      t.frequency = parse_double(rest.substr(0, colon), "tone frequency");
      t.phase = parse_double(rest.substr(colon + 1), "tone phase") *
                std::acos(-1.0) / 180.0;
    }
    tones.push_back(t);
  }
  return tones;
}

std::string tone_list_string(const std::vector<Tone>& tones, int precision) {
  const double rad2deg = 180.0 / std::acos(-1.0);
  std::string out;
  for (std::size_t i = 0; i < tones.size(); ++i) {
    out += (i ? "," : "") + format_num(tones[i].magnitude, precision) + '@' +
           format_num(tones[i].frequency, precision) + ':' +
           format_num(tones[i].phase * rad2deg, precision);
  }
  return out;
}

std::vector<Tone> parse_tones_json(std::istream& in) {
  nlohmann::json doc;
  try {
    in >> doc;
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("tones file: ") + e.what());
  }
  if (!doc.is_object() || !doc.contains("tones") || !doc["tones"].is_array()) {
    throw std::invalid_argument("tones file needs a top-level 'tones' array");
  }
  std::vector<Tone> tones;
  for (const auto& item : doc["tones"]) {
    if (!item.is_object() || !item.contains("mag") || !item.contains("freq")) {
      throw std::invalid_argument(
          "each tone needs 'mag' and 'freq' (optional 'phase_deg')");
    }
    Tone t;
    t.magnitude = item["mag"].get<double>();
    t.frequency = item["freq"].get<double>();
    if (item.contains("phase_deg")) {
      t.phase = item["phase_deg"].get<double>() * std::acos(-1.0) / 180.0;
    }
    tones.push_back(t);
  }
  return tones;
}

}  // namespace qltf::io
