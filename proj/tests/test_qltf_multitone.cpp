#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "qltf/qltf_multitone.hpp"
#include "test_util.hpp"

using qltf::BMap;
using qltf::Complex;
using qltf::DuffingParams;
using qltf::KernelTransferFunction;
using qltf::LineSpectrum;
using qltf::MultitoneSignal;
using qltf::QltfTable;
using qltf::Tone;

namespace {

const double kPi = std::acos(-1.0);
const DuffingParams kBench{10.0, 0.1, 1e3, 5e5};

MultitoneSignal benchmark_input() {
  return MultitoneSignal({{0.25, 0.0, 2.5}, {0.75, 0.0, 7.5}});
}

KernelTransferFunction constant_kernel(int n, Complex c) {
  return KernelTransferFunction(
      n, [c](const std::vector<double>&) { return c; });
}

}  // namespace

TEST_CASE("BMap returns tone amplitudes at signed tone frequencies") {
  const MultitoneSignal s({{0.5, kPi / 4.0, 2.0}, {1.5, 0.0, 5.0}});
  const BMap b(s);
  CHECK(testutil::close(b.at(2.0), std::polar(0.5, kPi / 4.0), 1e-15));
  CHECK(testutil::close(b.at(-2.0), std::polar(0.5, -kPi / 4.0), 1e-15));
  CHECK(testutil::close(b.at(5.0), Complex(1.5, 0.0), 1e-15));
  CHECK(b.at(3.0) == Complex(0.0, 0.0));
  CHECK(b.at(0.0) == Complex(0.0, 0.0));
  CHECK(testutil::close(b.at(2.0 + 1e-12), std::polar(0.5, kPi / 4.0), 1e-15));
}

TEST_CASE("first-order input spectral function equals the line spectrum") {
  const MultitoneSignal s({{0.3, 0.7, 1.5}, {1.1, -0.2, 4.0}});
  const LineSpectrum u1 = qltf::input_spectral_coeffs(s, 1);
  const LineSpectrum lines = qltf::line_spectrum(s);
  REQUIRE(u1.lines().size() == lines.lines().size());
  for (const auto& [f, c] : lines.lines()) {
    REQUIRE(u1.has(f));
    CHECK(testutil::rel_err(u1.at(f), c) < 1e-14);
  }
  CHECK_THROWS_AS(qltf::input_spectral_coeffs(s, 0), std::invalid_argument);
}

TEST_CASE("second-order input spectral values of the benchmark two-tone") {
  const LineSpectrum u2 = qltf::input_spectral_coeffs(benchmark_input(), 2);
  // At 15 rad/s only (7.5, 7.5) contributes: 0.5*pi*0.75^2.
  CHECK(testutil::rel_err(u2.at(15.0), Complex(0.5 * kPi * 0.5625, 0.0)) <
        1e-14);
  CHECK(testutil::rel_err(std::abs(u2.at(15.0)), 0.883572933822) < 1e-11);
  // At 0 rad/s all (k, -k) pairs contribute: 0.5*pi*(2*0.75^2 + 2*0.25^2).
  CHECK(testutil::rel_err(u2.at(0.0), Complex(0.625 * kPi, 0.0)) < 1e-14);
  CHECK(testutil::rel_err(std::abs(u2.at(0.0)), 1.963495408494) < 1e-11);
  // Support is exactly the order-2 intermodulation set.
  REQUIRE(u2.lines().size() == 7);
}

TEST_CASE("output spectral function with a constant unit response") {
  const MultitoneSignal s({{0.4, 0.3, 2.0}, {0.9, -1.0, 3.0}});
  for (int n = 1; n <= 3; ++n) {
    const LineSpectrum u = qltf::input_spectral_coeffs(s, n);
    const LineSpectrum y =
        qltf::output_spectral_coeffs(s, constant_kernel(n, {1.0, 0.0}));
    REQUIRE(u.lines().size() == y.lines().size());
    for (const auto& [f, c] : u.lines()) {
      CHECK(testutil::rel_err(y.at(f), c) < 1e-13);
    }
  }
}

TEST_CASE("second-order output spectral values of the benchmark") {
  const KernelTransferFunction h2 = qltf::duffing_kernel(kBench, 2);
  const LineSpectrum y2 = qltf::output_spectral_coeffs(benchmark_input(), h2);
  // At 15 rad/s: 0.5*pi*B(7.5)^2*H2(7.5, 7.5).
  const Complex want15 =
      0.5 * kPi * 0.5625 * qltf::duffing_h2(kBench, 7.5, 7.5);
  CHECK(testutil::rel_err(y2.at(15.0), want15) < 1e-13);
  // At 0 rad/s: negative real with |Y2| = 0.4321 * |U2(0)|.
  const Complex y0 = y2.at(0.0);
  CHECK(y0.real() < 0.0);
  CHECK(std::abs(y0.imag()) < 1e-12 * std::abs(y0.real()));
  CHECK(testutil::rel_err(std::abs(y0), 0.432090575510 * 1.963495408494) <
        1e-10);
}

TEST_CASE("pole errors propagate with the offending tuple identified") {
  const DuffingParams undamped{10.0, 0.0, 1e3, 0.0};
  const MultitoneSignal s({{1.0, 0.0, 4.0}, {1.0, 0.0, 6.0}});
  // 4 + 6 = 10 hits the undamped resonance inside H2.
  const KernelTransferFunction h2 = qltf::duffing_kernel(undamped, 2);
  CHECK_THROWS_WITH_AS(qltf::output_spectral_coeffs(s, h2),
                       doctest::Contains("tuple"), qltf::PoleError);
}

TEST_CASE("order-2 QLTF reproduces the published seven-row table") {
  const QltfTable t = qltf::qltf(benchmark_input(),
                                 qltf::duffing_kernel(kBench, 2));
  REQUIRE(t.order == 2);
  REQUIRE(t.rows.size() == 7);
  CHECK(t.diagnostics.empty());

  const struct {
    double omega, mag, phase_deg;
  } want[] = {
      {-15.0, 0.363668589199, 24.353556},  {-10.0, 1.151516603592, -68.022473},
      {-5.0, 0.282028854796, -157.271785}, {0.0, 0.432090575510, 180.0},
      {5.0, 0.282028854796, 157.271785},   {10.0, 1.151516603592, 68.022473},
      {15.0, 0.363668589199, -24.353556},
  };
  for (std::size_t i = 0; i < 7; ++i) {
    CHECK(t.rows[i].omega == doctest::Approx(want[i].omega).epsilon(1e-12));
    CHECK(testutil::rel_err(std::abs(t.rows[i].g), want[i].mag) < 1e-11);
    const double phase = std::arg(t.rows[i].g) * 180.0 / kPi;
    CHECK(phase == doctest::Approx(want[i].phase_deg).epsilon(1e-7));
    // g = y/u holds exactly on every row.
    CHECK(t.rows[i].g == t.rows[i].y / t.rows[i].u);
  }
}

TEST_CASE("order-3 QLTF regression against frozen enumeration constants") {
  const QltfTable t = qltf::qltf(benchmark_input(),
                                 qltf::duffing_kernel(kBench, 3));
  REQUIRE(t.rows.size() == 10);
  const struct {
    double omega;
    Complex g;
  } want[] = {
      {-22.5, {3.861790230463, 3.266684293265}},
      {-17.5, {10.42991844708, -12.56858801858}},
      {-12.5, {-4.266534708279, -9.719430707678}},
      {-7.5, {2.092694670341, 8.509999032518}},
      {-2.5, {3.816688116050, 14.62476993977}},
  };
  for (const auto& w : want) {
    const qltf::QltfRow* row = t.find(w.omega, 1e-9);
    REQUIRE(row != nullptr);
    CHECK(testutil::rel_err(row->g, w.g) < 1e-11);
    const qltf::QltfRow* mirror = t.find(-w.omega, 1e-9);
    REQUIRE(mirror != nullptr);
    CHECK(testutil::rel_err(mirror->g, std::conj(w.g)) < 1e-11);
  }
}

TEST_CASE("constant response gives constant QLTF") {
  const MultitoneSignal s({{0.7, 0.2, 1.0}, {0.4, -0.7, 3.5}});
  const Complex c(2.0, -1.0);
  const QltfTable t = qltf::qltf(s, constant_kernel(3, c));
  REQUIRE(!t.rows.empty());
  for (const auto& row : t.rows) {
    CHECK(testutil::rel_err(row.g, c) < 1e-12);
  }
}

TEST_CASE("input cancellation frequencies become diagnostics, not rows") {
  // A1 = 1 at 1 rad/s, A2 = -0.5 at 3 rad/s: U_2 vanishes at 2 rad/s
  // (1+1 cancels 3-1), but a frequency-dependent response keeps Y_2 alive.
  const MultitoneSignal s({{1.0, 0.0, 1.0}, {0.5, kPi, 3.0}});
  const KernelTransferFunction h(2, [](const std::vector<double>& w) {
    return Complex(w[0] * w[1], 0.0);
  });
  const QltfTable t = qltf::qltf(s, h);
  CHECK(t.find(2.0, 1e-9) == nullptr);
  CHECK(t.find(-2.0, 1e-9) == nullptr);
  REQUIRE(t.diagnostics.size() == 2);
  bool found = false;
  for (const auto& d : t.diagnostics) {
    if (std::abs(d.omega - 2.0) < 1e-9) {
      found = true;
      CHECK(d.message.find("cancellation") != std::string::npos);
    }
  }
  CHECK(found);
  // The same frequency with a constant response cancels in Y too: no
  // diagnostic, just absence.
  const QltfTable flat = qltf::qltf(s, constant_kernel(2, {1.0, 0.0}));
  CHECK(flat.find(2.0, 1e-9) == nullptr);
  CHECK(flat.diagnostics.empty());
}

TEST_CASE("conjugate relations and amplitude invariance on a random table") {
  std::mt19937 rng(43);
  std::uniform_real_distribution<double> mag(0.3, 1.5);
  std::uniform_real_distribution<double> ph(-kPi, kPi);
  const std::vector<double> freqs = testutil::random_freqs(rng, 3);
  std::vector<Tone> tones;
  for (double f : freqs) tones.push_back({mag(rng), ph(rng), f});
  const MultitoneSignal s(tones);
  const KernelTransferFunction h(2, [](const std::vector<double>& w) {
    const Complex s01(0.0, w[0] + w[1]);
    return (1.0 + 0.5 * s01) / ((1.0 + Complex(0.0, 0.2 * w[0])) *
                                (1.0 + Complex(0.0, 0.2 * w[1])));
  });
  const QltfTable t = qltf::qltf(s, h);
  REQUIRE(!t.rows.empty());
  for (const auto& row : t.rows) {
    const qltf::QltfRow* m = t.find(-row.omega, 1e-9);
    REQUIRE(m != nullptr);
    CHECK(testutil::rel_err(m->u, std::conj(row.u)) < 1e-10);
    CHECK(testutil::rel_err(m->y, std::conj(row.y)) < 1e-10);
    CHECK(testutil::rel_err(m->g, std::conj(row.g)) < 1e-10);
  }
  const QltfTable scaled = qltf::qltf(s.scaled(2.0), h);
  REQUIRE(scaled.rows.size() == t.rows.size());
  for (std::size_t i = 0; i < t.rows.size(); ++i) {
    CHECK(testutil::rel_err(scaled.rows[i].g, t.rows[i].g) < 1e-10);
    CHECK(testutil::rel_err(scaled.rows[i].u, 4.0 * t.rows[i].u) < 1e-10);
    CHECK(testutil::rel_err(scaled.rows[i].y, 4.0 * t.rows[i].y) < 1e-10);
  }
}

TEST_CASE("QLTF row support matches the structural frequency set") {
  const QltfTable t2 = qltf::qltf(benchmark_input(),
                                  qltf::duffing_kernel(kBench, 2));
  std::vector<double> rows;
  for (const auto& r : t2.rows) rows.push_back(r.omega);
  CHECK(rows == std::vector<double>{-15.0, -10.0, -5.0, 0.0, 5.0, 10.0, 15.0});
}

TEST_CASE("total output spectrum") {
  SUBCASE("first order only: filtered lines") {
    const MultitoneSignal s = benchmark_input();
    const qltf::OutputSpectrum y =
        qltf::output_spectrum(s, {qltf::duffing_kernel(kBench, 1)});
    REQUIRE(y.lines().size() == 4);
    const Complex want =
        kPi * 0.25 * qltf::duffing_h1(kBench, 2.5);
    CHECK(testutil::rel_err(y.at(2.5), want) < 1e-13);
    CHECK(testutil::rel_err(y.at(-2.5), std::conj(want)) < 1e-13);
  }
  SUBCASE("orders 1..2: support is the union of both ranges") {
    const MultitoneSignal s = benchmark_input();
    const qltf::OutputSpectrum y = qltf::output_spectrum(
        s, {qltf::duffing_kernel(kBench, 1), qltf::duffing_kernel(kBench, 2)});
    for (double f :
         {-15.0, -10.0, -7.5, -5.0, -2.5, 0.0, 2.5, 5.0, 7.5, 10.0, 15.0}) {
      CHECK(y.has(f));
    }
    CHECK(y.lines().size() == 11);
  }
  SUBCASE("orders 1..3: shared lines accumulate order-1 and order-3 parts") {
    const MultitoneSignal s = benchmark_input();
    const qltf::OutputSpectrum y = qltf::output_spectrum(
        s, {qltf::duffing_kernel(kBench, 1), qltf::duffing_kernel(kBench, 2),
            qltf::duffing_kernel(kBench, 3)});
    for (double f : {-22.5, -17.5, -12.5, 12.5, 17.5, 22.5}) CHECK(y.has(f));
    const Complex y1 = kPi * 0.25 * qltf::duffing_h1(kBench, 2.5);
    const Complex y3 =
        qltf::output_spectral_coeffs(s, qltf::duffing_kernel(kBench, 3))
            .at(2.5);
    CHECK(testutil::rel_err(y.at(2.5), y1 + y3) < 1e-12);
  }
  SUBCASE("orders must be 1..N each exactly once") {
    const MultitoneSignal s = benchmark_input();
    CHECK_THROWS_AS(
        qltf::output_spectrum(s, {qltf::duffing_kernel(kBench, 2)}),
        std::invalid_argument);
    CHECK_THROWS_AS(qltf::output_spectrum(s, {}), std::invalid_argument);
  }
}

TEST_CASE("fingerprint comparison") {
  const MultitoneSignal s = benchmark_input();
  const QltfTable base = qltf::qltf(s, qltf::duffing_kernel(kBench, 2));

  SUBCASE("a table against itself is the identity report") {
    const qltf::CompareReport r = qltf::compare_fingerprints(base, base);
    REQUIRE(r.rows.size() == base.rows.size());
    for (const auto& row : r.rows) {
      CHECK(row.mag_ratio == doctest::Approx(1.0).epsilon(1e-14));
      CHECK(row.phase_delta_deg == doctest::Approx(0.0).epsilon(1e-14));
    }
    CHECK(r.max_mag_ratio_dev == doctest::Approx(0.0).epsilon(1e-14));
    CHECK(r.max_phase_delta_deg == doctest::Approx(0.0).epsilon(1e-14));
  }

  SUBCASE("quadratic-coefficient drop shows as a pure 0.1 magnitude ratio") {
    DuffingParams probe_params = kBench;
    probe_params.eps2 = 1e2;
    const QltfTable probe = qltf::qltf(s, qltf::duffing_kernel(probe_params, 2));
    const qltf::CompareReport r = qltf::compare_fingerprints(base, probe);
    for (const auto& row : r.rows) {
      CHECK(std::abs(row.mag_ratio - 0.1) < 1e-12);
      CHECK(std::abs(row.phase_delta_deg) < 1e-12);
    }
  }

  SUBCASE("cubic-coefficient halving is not a uniform scaling") {
    const QltfTable base3 = qltf::qltf(s, qltf::duffing_kernel(kBench, 3));
    DuffingParams probe_params = kBench;
    probe_params.eps3 = 2.5e5;
    const QltfTable probe3 =
        qltf::qltf(s, qltf::duffing_kernel(probe_params, 3));
    const qltf::CompareReport r = qltf::compare_fingerprints(base3, probe3);
    double ratio_min = 1e300, ratio_max = 0.0;
    for (const auto& row : r.rows) {
      ratio_min = std::min(ratio_min, row.mag_ratio);
      ratio_max = std::max(ratio_max, row.mag_ratio);
    }
    CHECK(ratio_max - ratio_min > 0.1);
    CHECK(r.max_phase_delta_deg > 1.0);
  }

  SUBCASE("mismatched orders and disjoint frequency sets are rejected") {
    const QltfTable other = qltf::qltf(s, qltf::duffing_kernel(kBench, 3));
    CHECK_THROWS_AS(qltf::compare_fingerprints(base, other),
                    std::invalid_argument);
    const MultitoneSignal shifted({{0.25, 0.0, 2.0}, {0.75, 0.0, 9.0}});
    QltfTable moved = qltf::qltf(shifted, qltf::duffing_kernel(kBench, 2));
    CHECK_THROWS_AS(qltf::compare_fingerprints(base, moved),
                    std::invalid_argument);
  }
}
