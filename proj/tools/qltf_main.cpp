#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qltf/discrete_qltf.hpp"
#include "qltf/freq_range.hpp"
#include "qltf/gfrf.hpp"
#include "qltf/io.hpp"
#include "qltf/qltf_multitone.hpp"
#include "qltf/simulator.hpp"

namespace {

void warn(const std::string& msg) { std::cerr << "warn: " << msg << "\n"; }

void write_output(const std::string& path, const std::string& content) {
  if (path.empty()) {
    std::cout << content;
    return;
  }
  std::ofstream f(path);
  if (!f) throw std::invalid_argument("cannot open output file: " + path);
  f << content;
}

std::ifstream open_input(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw std::invalid_argument("cannot open input file: " + path);
  return f;
}

// QLTF_FREQ_TOL overrides the default frequency tolerance (0 = use default).
double env_freq_tol() {
  const char* e = std::getenv("QLTF_FREQ_TOL");
  if (e == nullptr || *e == '\0') return 0.0;
  std::size_t pos = 0;
  double v = 0.0;
  try {
    v = std::stod(e, &pos);
  } catch (const std::exception&) {
    throw std::invalid_argument("QLTF_FREQ_TOL is not a number");
  }
  if (pos != std::string(e).size() || !(v > 0.0)) {
    throw std::invalid_argument("QLTF_FREQ_TOL must be a positive number");
  }
  return v;
}

std::vector<double> parse_freq_list(const std::string& text) {
  std::vector<double> freqs;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    std::size_t pos = 0;
    double v = 0.0;
    try {
      v = std::stod(item, &pos);
    } catch (const std::exception&) {
      throw std::invalid_argument("cannot parse frequency '" + item + "'");
    }
    if (pos != item.size()) {
      throw std::invalid_argument("cannot parse frequency '" + item + "'");
    }
    freqs.push_back(v);
  }
  if (freqs.empty()) throw std::invalid_argument("frequency list is empty");
  std::sort(freqs.begin(), freqs.end());
  return freqs;
}

struct ModelOptions {
  std::string model = "duffing";
  double wn = 0.0;
  double zeta = 0.0;
  double eps2 = 0.0;
  double eps3 = 0.0;
  std::string kernel_path;
  CLI::Option* wn_opt = nullptr;
  CLI::Option* zeta_opt = nullptr;
};

void add_model_options(CLI::App* cmd, ModelOptions& mo, bool allow_kernel) {
  if (allow_kernel) {
    cmd->add_option("--model", mo.model, "System model: duffing or kernel-file")
        ->check(CLI::IsMember({"duffing", "kernel-file"}))
        ->capture_default_str();
    cmd->add_option("--kernel", mo.kernel_path,
                    "Kernel document (order/memory/values) for kernel-file");
  }
  mo.wn_opt = cmd->add_option("--wn", mo.wn, "Natural frequency (rad/s)");
  mo.zeta_opt = cmd->add_option("--zeta", mo.zeta, "Damping ratio");
  cmd->add_option("--eps2", mo.eps2, "Quadratic stiffness coefficient")
      ->capture_default_str();
  cmd->add_option("--eps3", mo.eps3, "Cubic stiffness coefficient")
      ->capture_default_str();
}

qltf::DuffingParams duffing_from(const ModelOptions& mo) {
  if (mo.wn_opt->count() == 0 || mo.zeta_opt->count() == 0) {
    throw std::invalid_argument("duffing model needs --wn and --zeta");
  }
  return {mo.wn, mo.zeta, mo.eps2, mo.eps3};
}

struct OutputOptions {
  std::string path;
  std::string format = "csv";
  int precision = 6;
};

void add_output_options(CLI::App* cmd, OutputOptions& oo) {
  cmd->add_option("--output", oo.path, "Output file (default: stdout)");
  cmd->add_option("--format", oo.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  cmd->add_option("--precision", oo.precision, "Significant digits")
      ->check(CLI::Range(1, 17))
      ->capture_default_str();
}

std::vector<qltf::Tone> tones_from(const std::string& tone_list,
                                   const std::string& tones_file) {
  if (!tones_file.empty()) {
    auto f = open_input(tones_file);
    return qltf::io::parse_tones_json(f);
  }
  return qltf::io::parse_tone_list(tone_list);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "qltf: quasi-linear transfer functions, output frequency ranges, and\n"
      "time-domain simulation for polynomial-nonlinearity systems"};
  app.require_subcommand(1);
  int pending_exit = 0;

  try {
    const double tol = env_freq_tol();

    // ---- qltf ----------------------------------------------------------
    auto* cq = app.add_subcommand(
        "qltf", "Multitone QLTF table (U_n, Y_n, G_n) for one order");
    static ModelOptions q_model;
    static OutputOptions q_out;
    static std::string q_tones, q_tones_file;
    static int q_order = 0;
    static double q_tau = 1e-10;
    add_model_options(cq, q_model, true);
    cq->add_option("--tones", q_tones, "Tone list mag@freq:phase_deg,...");
    cq->add_option("--tones-file", q_tones_file,
                   "JSON tone list: {\"tones\":[{\"mag\":..,\"freq\":..}]}");
    cq->add_option("--order", q_order, "Nonlinear order n")->required();
    cq->add_option("--tau", q_tau,
                   "Cancellation threshold relative to peak |U_n|")
        ->capture_default_str();
    add_output_options(cq, q_out);
    cq->callback([&] {
      auto tones = tones_from(q_tones, q_tones_file);
      qltf::MultitoneSignal signal(tones, tol);
      qltf::QltfTable table = [&] {
        if (q_model.model == "kernel-file") {
          if (q_model.kernel_path.empty()) {
            throw std::invalid_argument("kernel-file model needs --kernel");
          }
          auto f = open_input(q_model.kernel_path);
          qltf::io::KernelFile kf = qltf::io::parse_kernel_file(f);
          if (kf.kernel.order() != q_order) {
            throw std::invalid_argument("kernel file order does not match --order");
          }
          return qltf::qltf(signal, kf.kernel.dtft_evaluator(kf.sample_interval),
                            q_tau);
        }
        return qltf::qltf(signal,
                          qltf::duffing_kernel(duffing_from(q_model), q_order),
                          q_tau);
      }();
      for (const auto& d : table.diagnostics) {
        std::ostringstream msg;
        msg << d.message << " at omega = " << d.omega;
        warn(msg.str());
      }
      write_output(q_out.path, q_out.format == "json"
                                   ? qltf::io::qltf_json(table, q_out.precision)
                                   : qltf::io::qltf_csv(table, q_out.precision));
    });

    // ---- range ---------------------------------------------------------
    auto* cr = app.add_subcommand("range", "Output frequency ranges");
    cr->require_subcommand(1);

    auto* crb = cr->add_subcommand("band", "Band-limited input a <= |w| <= b");
    static double r_a = 0.0, r_b = 0.0;
    static int rb_order = 0;
    static bool r_nonneg = false, r_literal = false;
    static OutputOptions rb_out;
    crb->add_option("--a", r_a, "Lower band edge (rad/s)")->required();
    crb->add_option("--b", r_b, "Upper band edge (rad/s)")->required();
    crb->add_option("--order", rb_order, "Nonlinear order n")->required();
    auto* nonneg_opt =
        crb->add_flag("--nonneg", r_nonneg, "Clip to non-negative frequencies");
    crb->add_flag("--paper-literal-62", r_literal,
                  "Audit variant: historical k = 0..n-1 clipped index range")
        ->needs(nonneg_opt);
    add_output_options(crb, rb_out);
    crb->callback([&] {
      const qltf::Band band{r_a, r_b};
      const qltf::IntervalUnion u =
          r_nonneg ? qltf::band_output_range_nonneg(band, rb_order, r_literal)
                   : qltf::band_output_range(band, rb_order);
      write_output(rb_out.path,
                   rb_out.format == "json"
                       ? qltf::io::intervals_json(u, rb_out.precision)
                       : qltf::io::intervals_csv(u, rb_out.precision));
    });

    auto* crt = cr->add_subcommand("tones", "Multitone input frequency set");
    static std::string r_freqs;
    static int rt_order = 0;
    static bool r_full = false, r_oracle = false;
    static OutputOptions rt_out;
    crt->add_option("--freqs", r_freqs, "Tone frequencies f1,f2,... (rad/s)")
        ->required();
    crt->add_option("--order", rt_order, "Nonlinear order n")->required();
    crt->add_flag("--full", r_full, "Mirror the set about zero");
    crt->add_flag("--oracle", r_oracle,
                  "Cross-check against brute-force signed-tuple enumeration");
    add_output_options(crt, rt_out);
    crt->callback([&] {
      const std::vector<double> W = parse_freq_list(r_freqs);
      const qltf::FrequencySet set =
          r_full ? qltf::multitone_output_freqs_full(W, rt_order, tol)
                 : qltf::multitone_output_freqs(W, rt_order, tol);
      std::string oracle_note;
      if (r_oracle) {
        const qltf::FrequencySet nonneg =
            qltf::multitone_output_freqs(W, rt_order, tol);
        const qltf::FrequencySet brute =
            qltf::brute_force_multitone_freqs(W, rt_order, tol);
        if (!nonneg.same_as(brute)) {
          throw qltf::PoleError("oracle mismatch: recursion and brute force disagree");
        }
        oracle_note = "# oracle: agree (" +
                      std::to_string(nonneg.values().size()) + " values)\n";
      }
      if (rt_out.format == "json") {
        std::string body = qltf::io::freq_set_json(set, rt_out.precision);
        if (r_oracle) {
          body.pop_back();  // trailing newline
          body = "{\"values\": " + body + ", \"oracle\": \"agree\"}\n";
        }
        write_output(rt_out.path, body);
      } else {
        write_output(rt_out.path,
                     qltf::io::freq_set_lines(set, rt_out.precision) +
                         oracle_note);
      }
    });

    // ---- simulate ------------------------------------------------------
    auto* cs = app.add_subcommand(
        "simulate", "Integrate the oscillator under multitone forcing (RK4)");
    cs->set_help_flag("--help", "Print this help message and exit");
    static ModelOptions s_model;
    static OutputOptions s_out;
    static std::string s_tones, s_tones_file, s_portrait;
    static double s_t0 = 0.0, s_t1 = 0.0, s_h = 0.0, s_y0 = 0.0, s_v0 = 0.0;
    static double s_skip = 0.0;
    add_model_options(cs, s_model, false);
    cs->add_option("--tones", s_tones,
                   "Forcing tones mag@freq:phase_deg,... (empty: unforced)");
    cs->add_option("--tones-file", s_tones_file, "JSON tone list");
    cs->add_option("--t0", s_t0, "Start time (s)")->capture_default_str();
    cs->add_option("--t1", s_t1, "End time (s)")->required();
    cs->add_option("--h", s_h, "Integration step (s)")->required();
    cs->add_option("--y0", s_y0, "Initial displacement")->capture_default_str();
    cs->add_option("--v0", s_v0, "Initial velocity")->capture_default_str();
    cs->add_option("--phase-portrait", s_portrait,
                   "Also write a (y,v) phase-portrait CSV to this path");
    cs->add_option("--skip", s_skip,
                   "Transient fraction to drop from the phase portrait")
        ->check(CLI::Range(0.0, 1.0))
        ->capture_default_str();
    add_output_options(cs, s_out);
    cs->callback([&] {
      const qltf::DuffingParams dp = duffing_from(s_model);
      const qltf::SimConfig cfg{s_t0, s_t1, s_h, s_y0, s_v0};
      const qltf::Trajectory tr =
          qltf::simulate_duffing(dp, tones_from(s_tones, s_tones_file), cfg);
      write_output(s_out.path,
                   s_out.format == "json"
                       ? qltf::io::trajectory_json(tr, s_out.precision)
                       : qltf::io::trajectory_csv(tr, s_out.precision));
      if (!s_portrait.empty()) {
        write_output(s_portrait,
                     qltf::io::phase_portrait_csv(
                         qltf::export_phase_portrait(tr, s_skip),
                         s_out.precision));
      }
    });

    // ---- discrete ------------------------------------------------------
    auto* cd = app.add_subcommand(
        "discrete", "DFT-based QLTF of a sampled signal (DQLTF)");
    static ModelOptions d_model;
    static OutputOptions d_out;
    static std::string d_input, d_tones;
    static int d_order = 0;
    static double d_tau = 1e-8;
    cd->add_option("--input", d_input, "Sampled signal CSV (T=<dt> header)")
        ->required();
    cd->add_option("--order", d_order, "Nonlinear order n")->required();
    add_model_options(cd, d_model, true);
    cd->add_option("--tau", d_tau, "Valid-bin threshold relative to peak |U_n|")
        ->capture_default_str();
    cd->add_option("--tones", d_tones,
                   "Analysis tones to check for bin alignment (leakage)");
    add_output_options(cd, d_out);
    cd->callback([&] {
      auto in = open_input(d_input);
      const qltf::SampledSignal u = qltf::io::parse_signal_csv(in);
      const int N = static_cast<int>(u.samples.size());
      for (const qltf::Tone& t : qltf::io::parse_tone_list(d_tones)) {
        const double err =
            qltf::bin_misalignment(t.frequency, N, u.sample_interval);
        const double leak_tol =
            tol > 0.0 ? tol : qltf::freq_tol(t.frequency);
        if (err > leak_tol) {
          const double spacing =
              2.0 * std::acos(-1.0) / (N * u.sample_interval);
          const long long m = std::llround(t.frequency / spacing);
          std::ostringstream msg;
          msg << "tone at " << t.frequency
              << " rad/s does not land on a DFT bin; nearest bin m=" << m
              << " at " << m * spacing << " rad/s (error " << err
              << " rad/s) - expect leakage";
          warn(msg.str());
        }
      }
      qltf::DqltfTable table = [&] {
        if (d_model.model == "kernel-file") {
          if (d_model.kernel_path.empty()) {
            throw std::invalid_argument("kernel-file model needs --kernel");
          }
          auto kf_in = open_input(d_model.kernel_path);
          qltf::io::KernelFile kf = qltf::io::parse_kernel_file(kf_in);
          if (kf.kernel.order() != d_order) {
            throw std::invalid_argument("kernel file order does not match --order");
          }
          return qltf::dqltf(kf.kernel, u, d_tau);
        }
        return qltf::dqltf(qltf::duffing_kernel(duffing_from(d_model), d_order),
                           u, d_tau);
      }();
      for (const std::string& d : table.diagnostics) warn(d);
      write_output(d_out.path,
                   d_out.format == "json"
                       ? qltf::io::dqltf_json(table, d_out.precision)
                       : qltf::io::dqltf_csv(table, d_out.precision));
    });

    // ---- compare -------------------------------------------------------
    auto* cc = app.add_subcommand(
        "compare", "Per-frequency deviation between two QLTF CSV tables");
    static std::string c_baseline, c_probe;
    static double c_threshold = 0.0, c_phase_threshold = 0.0;
    static OutputOptions c_out;
    cc->add_option("baseline", c_baseline, "Baseline QLTF CSV")->required();
    cc->add_option("probe", c_probe, "Probe QLTF CSV")->required();
    auto* thr_opt = cc->add_option(
        "--threshold", c_threshold,
        "Exit 4 when max |mag_ratio - 1| exceeds this value");
    auto* pthr_opt = cc->add_option(
        "--phase-threshold", c_phase_threshold,
        "Exit 4 when max |phase_delta_deg| exceeds this value (degrees)");
    add_output_options(cc, c_out);
    cc->callback([&] {
      auto fb = open_input(c_baseline);
      auto fp = open_input(c_probe);
      const qltf::QltfTable baseline = qltf::io::parse_qltf_csv(fb);
      const qltf::QltfTable probe = qltf::io::parse_qltf_csv(fp);
      const qltf::CompareReport report =
          qltf::compare_fingerprints(baseline, probe);
      write_output(c_out.path,
                   c_out.format == "json"
                       ? qltf::io::compare_json(report, c_out.precision)
                       : qltf::io::compare_csv(report, c_out.precision));
      const bool mag_hit =
          thr_opt->count() > 0 && report.max_mag_ratio_dev > c_threshold;
      const bool phase_hit = pthr_opt->count() > 0 &&
                             report.max_phase_delta_deg > c_phase_threshold;
      if (mag_hit || phase_hit) pending_exit = 4;
    });

    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const qltf::BlowUpError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const qltf::PoleError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  }
  return pending_exit;
}
