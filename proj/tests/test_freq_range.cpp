#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "qltf/freq_range.hpp"
#include "test_util.hpp"

using qltf::Band;
using qltf::FrequencySet;
using qltf::GammaVector;
using qltf::IntervalUnion;

namespace {

bool equals(const IntervalUnion& u, const std::vector<qltf::Interval>& want) {
  if (u.intervals().size() != want.size()) return false;
  for (std::size_t i = 0; i < want.size(); ++i) {
    if (u.intervals()[i].lo != want[i].lo) return false;
    if (u.intervals()[i].hi != want[i].hi) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("band output range reproduces the worked example") {
  CHECK(equals(qltf::band_output_range({20.0, 50.0}, 2),
               {{-100.0, -40.0}, {-30.0, 30.0}, {40.0, 100.0}}));
  CHECK(equals(qltf::band_output_range({20.0, 50.0}, 3), {{-150.0, 150.0}}));
  CHECK(equals(qltf::band_output_range({20.0, 50.0}, 1),
               {{-50.0, -20.0}, {20.0, 50.0}}));
}

TEST_CASE("band output range validates its inputs") {
  CHECK_THROWS_AS(qltf::band_output_range({-1.0, 5.0}, 2),
                  std::invalid_argument);
  CHECK_THROWS_AS(qltf::band_output_range({6.0, 5.0}, 2),
                  std::invalid_argument);
  CHECK_THROWS_AS(qltf::band_output_range({1.0, 5.0}, 0),
                  std::invalid_argument);
}

TEST_CASE("non-negative clip of the band range") {
  CHECK(equals(qltf::band_output_range_nonneg({20.0, 50.0}, 2),
               {{0.0, 30.0}, {40.0, 100.0}}));
  CHECK(equals(qltf::band_output_range_nonneg({20.0, 50.0}, 1),
               {{20.0, 50.0}}));
  CHECK(equals(qltf::band_output_range_nonneg({0.0, 10.0}, 3), {{0.0, 30.0}}));
}

TEST_CASE("baseband cubic range covers sampled |sums|") {
  const IntervalUnion u = qltf::band_output_range_nonneg({0.0, 10.0}, 3);
  std::mt19937 rng(23);
  std::uniform_real_distribution<double> pick(-10.0, 10.0);
  double seen_max = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const double s = std::abs(pick(rng) + pick(rng) + pick(rng));
    CHECK(u.contains(s, 1e-9));
    seen_max = std::max(seen_max, s);
  }
  CHECK(seen_max > 25.0);  // sampling actually exercises the upper end
}

TEST_CASE("literal legacy clip keeps only the low interval of the example") {
  const IntervalUnion u = qltf::band_output_range_nonneg({20.0, 50.0}, 2, true);
  CHECK(equals(u, {{0.0, 30.0}}));
  // Default corrected reading also contains the high intermodulation band.
  const IntervalUnion full = qltf::band_output_range_nonneg({20.0, 50.0}, 2);
  CHECK(full.contains(70.0));
  CHECK_FALSE(u.contains(70.0));
}

TEST_CASE("gamma recursion layout") {
  SUBCASE("single tone expansion") {
    const GammaVector g = qltf::multitone_gamma({5.0}, 2);
    REQUIRE(g.size() == 2);
    CHECK(g[0] == 0.0);
    CHECK(g[1] == 10.0);
  }
  SUBCASE("three-tone second order") {
    const GammaVector g = qltf::multitone_gamma({2.0, 3.0, 7.0}, 2);
    CHECK(g.size() == 18);
    const FrequencySet nonneg = qltf::multitone_output_freqs({2.0, 3.0, 7.0}, 2);
    CHECK(nonneg.values() ==
          std::vector<double>{0.0, 1.0, 4.0, 5.0, 6.0, 9.0, 10.0, 14.0});
  }
  SUBCASE("two-tone third order") {
    const GammaVector g = qltf::multitone_gamma({2.5, 7.5}, 3);
    CHECK(g.size() == 32);
    const FrequencySet nonneg = qltf::multitone_output_freqs({2.5, 7.5}, 3);
    CHECK(nonneg.values() ==
          std::vector<double>{2.5, 7.5, 12.5, 17.5, 22.5});
  }
  SUBCASE("length formula K(2K)^(n-1)") {
    for (int K = 1; K <= 4; ++K) {
      std::vector<double> W;
      for (int i = 0; i < K; ++i) W.push_back(1.0 + i);
      for (int n = 2; n <= 5; ++n) {
        const std::size_t want =
            static_cast<std::size_t>(K) *
            static_cast<std::size_t>(std::pow(2.0 * K, n - 1));
        CHECK(qltf::multitone_gamma(W, n).size() == want);
      }
    }
  }
  SUBCASE("validation") {
    CHECK_THROWS_AS(qltf::multitone_gamma({5.0}, 1), std::invalid_argument);
    CHECK_THROWS_AS(qltf::multitone_gamma({}, 2), std::invalid_argument);
    CHECK_THROWS_AS(qltf::multitone_gamma({-1.0}, 2), std::invalid_argument);
    CHECK_THROWS_AS(qltf::multitone_gamma({2.0, 1.0}, 2),
                    std::invalid_argument);
  }
}

TEST_CASE("multitone output frequency sets") {
  SUBCASE("three-tone third order") {
    const FrequencySet s = qltf::multitone_output_freqs({2.0, 3.0, 7.0}, 3);
    CHECK(s.values() == std::vector<double>{1.0, 2.0, 3.0, 4.0, 6.0, 7.0, 8.0,
                                            9.0, 11.0, 12.0, 13.0, 16.0, 17.0,
                                            21.0});
  }
  SUBCASE("two-tone second order") {
    const FrequencySet s = qltf::multitone_output_freqs({2.5, 7.5}, 2);
    CHECK(s.values() == std::vector<double>{0.0, 5.0, 10.0, 15.0});
  }
  SUBCASE("first order is the tone set itself") {
    const FrequencySet s = qltf::multitone_output_freqs({2.0, 3.0, 7.0}, 1);
    CHECK(s.values() == std::vector<double>{2.0, 3.0, 7.0});
  }
}

TEST_CASE("full symmetric frequency sets mirror about zero") {
  SUBCASE("two-tone second order") {
    const FrequencySet s = qltf::multitone_output_freqs_full({2.5, 7.5}, 2);
    CHECK(s.values() == std::vector<double>{-15.0, -10.0, -5.0, 0.0, 5.0, 10.0,
                                            15.0});
  }
  SUBCASE("two-tone third order") {
    const FrequencySet s = qltf::multitone_output_freqs_full({2.5, 7.5}, 3);
    CHECK(s.values() == std::vector<double>{-22.5, -17.5, -12.5, -7.5, -2.5,
                                            2.5, 7.5, 12.5, 17.5, 22.5});
  }
  SUBCASE("first order") {
    const FrequencySet s = qltf::multitone_output_freqs_full({2.0, 5.0}, 1);
    CHECK(s.values() == std::vector<double>{-5.0, -2.0, 2.0, 5.0});
  }
}

TEST_CASE("brute-force oracle") {
  SUBCASE("agrees with the recursion on the worked examples") {
    for (int n = 2; n <= 3; ++n) {
      const FrequencySet rec = qltf::multitone_output_freqs({2.0, 3.0, 7.0}, n);
      const FrequencySet brute =
          qltf::brute_force_multitone_freqs({2.0, 3.0, 7.0}, n);
      CHECK(rec.same_as(brute));
    }
  }
  SUBCASE("four copies of one tone") {
    const FrequencySet s = qltf::brute_force_multitone_freqs({1.0}, 4);
    CHECK(s.values() == std::vector<double>{0.0, 2.0, 4.0});
  }
  SUBCASE("hand enumeration of a two-tone pair") {
    const FrequencySet s = qltf::brute_force_multitone_freqs({1.0, 1.5}, 2);
    CHECK(s.values() == std::vector<double>{0.0, 0.5, 2.0, 2.5, 3.0});
  }
  SUBCASE("combinatorial guard") {
    std::vector<double> W;
    for (int i = 0; i < 4; ++i) W.push_back(1.0 + i);
    CHECK_THROWS_AS(qltf::brute_force_multitone_freqs(W, 12),
                    std::length_error);
  }
}

TEST_CASE("recursion equals brute force on random tone vectors") {
  std::mt19937 rng(29);
  for (int rep = 0; rep < 12; ++rep) {
    const int K = 1 + static_cast<int>(rng() % 4);
    const std::vector<double> W = testutil::random_freqs(rng, K);
    for (int n = 1; n <= 5; ++n) {
      const FrequencySet rec = qltf::multitone_output_freqs(W, n);
      const FrequencySet brute = qltf::brute_force_multitone_freqs(W, n);
      REQUIRE(rec.same_as(brute));
    }
  }
}

TEST_CASE("single-tone sets follow the parity ladder") {
  const double w1 = 3.5;
  for (int n = 1; n <= 5; ++n) {
    std::vector<double> want;
    for (int k = n; k >= 0; k -= 2) want.push_back(k * w1);
    std::sort(want.begin(), want.end());
    const FrequencySet s = qltf::multitone_output_freqs({w1}, n);
    REQUIRE(s.values().size() == want.size());
    for (std::size_t i = 0; i < want.size(); ++i) {
      CHECK(s.values()[i] == doctest::Approx(want[i]).epsilon(1e-12));
    }
  }
}

TEST_CASE("band ranges are symmetric about zero") {
  std::mt19937 rng(31);
  std::uniform_real_distribution<double> edge(0.0, 40.0);
  for (int rep = 0; rep < 20; ++rep) {
    double a = edge(rng), b = edge(rng);
    if (a > b) std::swap(a, b);
    const int n = 1 + static_cast<int>(rng() % 5);
    const IntervalUnion u = qltf::band_output_range({a, b}, n);
    const auto& iv = u.intervals();
    for (std::size_t i = 0; i < iv.size(); ++i) {
      const auto& mirror = iv[iv.size() - 1 - i];
      CHECK(iv[i].lo == doctest::Approx(-mirror.hi).epsilon(1e-12));
      CHECK(iv[i].hi == doctest::Approx(-mirror.lo).epsilon(1e-12));
    }
  }
}

TEST_CASE("random band sums land inside the range, endpoints attained") {
  std::mt19937 rng(37);
  std::uniform_real_distribution<double> edge(0.0, 30.0);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  for (int rep = 0; rep < 8; ++rep) {
    double a = edge(rng), b = edge(rng);
    if (a > b) std::swap(a, b);
    const int n = 1 + static_cast<int>(rng() % 5);
    const IntervalUnion u = qltf::band_output_range({a, b}, n);
    const double slack = 1e-9 * std::max(1.0, n * b);
    for (int i = 0; i < 2000; ++i) {
      double sum = 0.0;
      for (int j = 0; j < n; ++j) {
        const double mag = a + (b - a) * unit(rng);
        sum += (unit(rng) < 0.5) ? -mag : mag;
      }
      REQUIRE(u.contains(sum, slack));
    }
    for (int k = 0; k <= n; ++k) {
      // Extremal tuples: k entries at +a (resp. +b), n-k at -b (resp. -a).
      double lo_sum = 0.0, hi_sum = 0.0;
      for (int j = 0; j < k; ++j) {
        lo_sum += a;
        hi_sum += b;
      }
      for (int j = k; j < n; ++j) {
        lo_sum -= b;
        hi_sum -= a;
      }
      CHECK(u.contains(lo_sum, slack));
      CHECK(u.contains(hi_sum, slack));
    }
  }
}
