#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "bitfrac/amdahl.hpp"

using namespace bitfrac;

TEST_CASE("s_total fixed points") {
  for (const double f : {0.0, 0.25, 0.5, 0.9, 1.0}) {
    CHECK(s_total(f, 1.0) == doctest::Approx(1.0));
  }
  for (const double s : {1.0, 2.0, 10.0, 100.0}) {
    CHECK(s_total(1.0, s) == doctest::Approx(s));
  }
  CHECK(s_total(0.9, 10.0) == doctest::Approx(1.0 / (0.1 + 0.09)));
  CHECK(s_total(0.9, 10.0) == doctest::Approx(5.2632).epsilon(1e-4));
}

TEST_CASE("s_total domain errors") {
  CHECK_THROWS_AS(s_total(-0.1, 2.0), std::domain_error);
  CHECK_THROWS_AS(s_total(1.1, 2.0), std::domain_error);
  CHECK_THROWS_AS(s_total(0.5, 0.5), std::domain_error);
}

TEST_CASE("asymptote") {
  for (double f = 0.1; f < 0.95; f += 0.1) {
    const double limit = 1.0 / (1.0 - f);
    CHECK(std::abs(s_total(f, 1e6) - limit) / limit < 1e-3);
  }
}

TEST_CASE("monotone in both arguments") {
  for (int fi = 1; fi < 100; ++fi) {
    for (int si = 1; si < 100; ++si) {
      const double f = fi / 100.0, s = static_cast<double>(si);
      CHECK(s_total(f, s + 1) >= s_total(f, s));
      if (s > 1.0) CHECK(s_total(f + 0.01, s) >= s_total(f, s));
    }
  }
}

TEST_CASE("curve pair at f = 0.5 is symmetric") {
  const auto cp = curve_pair(0.5, 100);
  REQUIRE(cp.projections.samples.size() == 100);
  REQUIRE(cp.attention.samples.size() == 100);
  for (size_t i = 0; i < 100; ++i) {
    CHECK(cp.projections.samples[i].second ==
          doctest::Approx(cp.attention.samples[i].second));
  }
  CHECK(cp.projections.asymptote() == doctest::Approx(2.0));
}

TEST_CASE("curve pair asymptotes at a lopsided fraction") {
  const auto cp = curve_pair(0.96, 100);
  CHECK(cp.projections.asymptote() == doctest::Approx(25.0));
  CHECK(cp.attention.asymptote() == doctest::Approx(1.0 / 0.96).epsilon(1e-6));
  CHECK(cp.attention.asymptote() < 1.05);
}

TEST_CASE("swapping partitions mirrors the curves") {
  const auto a = curve_pair(0.7, 50);
  const auto b = curve_pair(0.3, 50);
  for (size_t i = 0; i < 50; ++i) {
    CHECK(a.projections.samples[i].second ==
          doctest::Approx(b.attention.samples[i].second));
    CHECK(a.attention.samples[i].second ==
          doctest::Approx(b.projections.samples[i].second));
  }
}

TEST_CASE("samples are sorted and monotone, bounded by the asymptote") {
  const auto cp = curve_pair(0.85, 100);
  double prev_sp = 0.0, prev_st = 0.0;
  for (const auto& [sp, st] : cp.projections.samples) {
    CHECK(sp > prev_sp);
    CHECK(st >= prev_st);
    CHECK(st <= cp.projections.asymptote() + 1e-12);
    prev_sp = sp;
    prev_st = st;
  }
}

TEST_CASE("s_max validation") {
  CHECK_THROWS_AS(curve_pair(0.5, 0), std::domain_error);
  const auto cp = curve_pair(0.5, 1);
  REQUIRE(cp.projections.samples.size() == 1);
  CHECK(cp.projections.samples[0].first == doctest::Approx(1.0));
  CHECK(cp.projections.samples[0].second == doctest::Approx(1.0));
}
