#include <algorithm>
#include <cmath>
#include <vector>

#include "doctest.h"
#include "qineq/error.hpp"
#include "qineq/indices.hpp"

using namespace qineq;

namespace {

struct Setting {
  double a, b, qzi, qdi;
};

// Published four-decimal values for Dagum(1, a, b).
const Setting kTable[] = {
    {0.5, 0.5, 0.9985, 0.9079}, {0.8, 0.5, 0.9849, 0.8563}, {2, 0.5, 0.8288, 0.6877},
    {4, 0.5, 0.5973, 0.5105},   {0.5, 1, 0.9932, 0.8785},   {0.8, 1, 0.9589, 0.8127},
    {2, 1, 0.7344, 0.6137},     {4, 1, 0.4912, 0.4292}};

double median_of(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

}  // namespace

TEST_CASE("names") {
  CHECK(parse_index_kind("qZI") == IndexKind::qZI);
  CHECK(parse_index_kind("G3") == IndexKind::G3);
  CHECK(to_string(IndexKind::DI) == "DI");
  CHECK(curve_of(IndexKind::qDI) == CurveKind::qD);
  CHECK(is_classical(IndexKind::GI));
  CHECK_THROWS_AS(parse_index_kind("Palma"), InvalidArgument);
}

TEST_CASE("exact indices") {
  for (const auto& s : kTable) {
    const auto d = Distribution::dagum(1, s.a, s.b);
    CAPTURE(d.to_string());
    CHECK(std::abs(index_exact(d, IndexKind::qZI).value - s.qzi) < 5e-5 + 1e-12);
    CHECK(std::abs(index_exact(d, IndexKind::qDI).value - s.qdi) < 5e-5 + 1e-12);
    CHECK(qdi_via_ratio(d) == doctest::Approx(index_exact(d, IndexKind::qDI).value).epsilon(1e-10));
  }
  const auto e = index_exact(Distribution::dagum(1, 2, 1), IndexKind::qZI);
  CHECK_FALSE(e.scheme.has_value());
  CHECK(e.n == 0);
}

TEST_CASE("closed form on degenerate and tiny samples") {
  for (auto scheme : kAllSchemes) {
    CHECK(index_estimate_closed_form(Sample({5, 5, 5}), scheme, IndexKind::qZI).value == 0.0);
    CHECK(index_estimate_closed_form(Sample({5, 5, 5}), scheme, IndexKind::qDI).value == 0.0);
    CHECK(index_estimate_closed_form(Sample({2.5}), scheme, IndexKind::qDI).value == 0.0);
  }
  // Two points (1, 3), scheme E: Q(u) = 1 on (0, 1/2], 3 above, so both ratios are 1/3.
  const Sample two({1, 3});
  CHECK(index_estimate_closed_form(two, QuantileScheme::E, IndexKind::qDI).value ==
        doctest::Approx(2.0 / 3).epsilon(1e-15));
  CHECK(index_estimate_closed_form(two, QuantileScheme::E, IndexKind::qZI).value ==
        doctest::Approx(2.0 / 3).epsilon(1e-15));
  // Scheme E, (1, 2, 4, 8): Q(p/2) steps at p = 1/2, Q(1 - p/2) at p = 1/2 and 3/2.
  // qD ratio = 1/8 on (0, 1/2], 2/4 on (1/2, 1).
  CHECK(index_estimate_closed_form(Sample({1, 2, 4, 8}), QuantileScheme::E, IndexKind::qDI).value ==
        doctest::Approx(1 - (0.5 / 8 + 0.5 * 0.5)).epsilon(1e-15));
}

TEST_CASE("closed form agrees with quadrature") {
  const auto d = Distribution::dagum(1, 0.8, 0.5);
  std::vector<Sample> samples;
  for (std::uint64_t seed = 0; seed < 6; ++seed) samples.push_back(draw_sample(d, 3 + 7 * seed, seed));
  samples.push_back(Sample({0, 0, 1, 1, 1, 2, 2, 9}));
  samples.push_back(Sample({1, 1, 1, 1, 1, 1, 1000}));
  samples.push_back(Sample({0, 3}));
  for (const auto& s : samples)
    for (auto scheme : kAllSchemes)
      for (auto kind : {IndexKind::qZI, IndexKind::qDI}) {
        const QuantileEstimate est(s, scheme);
        double cf = 0, qd = 0;
        try {
          cf = index_estimate_closed_form(est, kind).value;
        } catch (const DegenerateSampleError&) {
          CHECK_THROWS_AS(index_estimate_quadrature(est, kind), DegenerateSampleError);
          continue;
        }
        qd = index_estimate_quadrature(est, kind).value;
        CAPTURE(s.size());
        CAPTURE(to_string(scheme));
        CHECK(std::abs(cf - qd) < 1e-8);
        CHECK(cf >= 0.0);
        CHECK(cf <= 1.0);
      }
}

TEST_CASE("zero-inflated and degenerate samples") {
  // Mostly zeros: Q(p/2) = 0 below the positive mass, so qZ = 1 there.
  const Sample zi({0, 0, 0, 3, 4, 5, 6, 7, 8, 9});
  for (auto scheme : kAllSchemes) {
    const double v = index_estimate_closed_form(zi, scheme, IndexKind::qDI).value;
    CHECK(v > 0.5);
    CHECK(v <= 1.0);
  }
  // Denominator Q((1+p)/2) vanishes on a piece of positive length.
  CHECK_THROWS_AS(index_estimate_closed_form(Sample({0, 0, 0, 0, 0, 0, 0, 1}), QuantileScheme::E,
                                             IndexKind::qZI),
                  DegenerateSampleError);
  CHECK_THROWS_AS(index_estimate_closed_form(Sample({1, 2}), QuantileScheme::E, IndexKind::G1),
                  InvalidArgument);
}

TEST_CASE("quantile Gini family") {
  for (auto k : {IndexKind::G1, IndexKind::G2, IndexKind::G3}) {
    const QuantileEstimate flat(Sample({3, 3, 3, 3}), QuantileScheme::HF);
    CHECK(std::abs(index_estimate_quadrature(flat, k).value) < 1e-9);
    const auto exact = index_exact(Distribution::dagum(1, 2, 1), k);
    CHECK(exact.value > 0.0);
    CHECK(exact.value < 1.0);
    const QuantileEstimate big(draw_sample(Distribution::dagum(1, 2, 1), 20000, 4), QuantileScheme::HF);
    CHECK(index_estimate_quadrature(big, k).value == doctest::Approx(exact.value).epsilon(0.05));
  }
}

TEST_CASE("sample estimate near the exact value") {
  const QuantileEstimate est(draw_sample(Distribution::dagum(1, 2, 0.5), 500, 8), QuantileScheme::HF);
  CHECK(std::abs(index_estimate_quadrature(est, IndexKind::qZI).value - 0.8288) < 0.04);
  CHECK(index_estimate_closed_form(est, IndexKind::qZI).method == IndexMethod::closed_form);
  CHECK(index_estimate_closed_form(est, IndexKind::qZI).n == 500);
}

TEST_CASE("classical indices") {
  const auto par = Distribution::pareto(1, 2);
  CHECK(classical_index(par, IndexKind::GI).value == doctest::Approx(1.0 / 3).epsilon(1e-8));
  // integral of B = integral (1 - sqrt(1-p))/p dp = 2(1 - ln 2).
  CHECK(classical_index(par, IndexKind::BI).value ==
        doctest::Approx(2 * std::log(2.0) - 1).epsilon(1e-7));
  double prev = 1.0;
  for (double alpha : {2.0, 3.0, 5.0}) {
    const double g = classical_index(Distribution::pareto(1, alpha), IndexKind::GI).value;
    // Pareto Gini: 1 / (2 alpha - 1).
    CHECK(g == doctest::Approx(1 / (2 * alpha - 1)).epsilon(1e-7));
    CHECK(g < prev);
    prev = g;
  }
  const auto zi = classical_index(Distribution::dagum(1, 2, 1), IndexKind::ZI).value;
  const auto di = classical_index(Distribution::dagum(1, 2, 1), IndexKind::DI).value;
  CHECK(zi > 0.0);
  CHECK(zi < 1.0);
  CHECK(di > 0.0);
  CHECK(di < 1.0);
  CHECK_THROWS_AS(classical_index(Distribution::pareto(1, 1), IndexKind::GI), InfiniteMeanError);
  CHECK_THROWS_AS(index_exact(Distribution::dagum(1, 0.5, 1), IndexKind::GI), InfiniteMeanError);
  CHECK_THROWS_AS(classical_index(par, IndexKind::qZI), InvalidArgument);
}

TEST_CASE("Monte Carlo oracle") {
  const auto d = Distribution::dagum(1, 2, 1);
  const auto one = mc_index_oracle(d, IndexKind::qZI, 1, 99);
  CHECK(one.value == mc_index_oracle(d, IndexKind::qZI, 1, 99).value);
  CHECK_FALSE(one.std_error.has_value());
  const auto mc = mc_index_oracle(d, IndexKind::qDI, 200000, 5);
  REQUIRE(mc.std_error.has_value());
  CHECK(std::abs(mc.value - index_exact(d, IndexKind::qDI).value) < 4 * *mc.std_error);
  CHECK_THROWS_AS(mc_index_oracle(d, IndexKind::GI, 10, 1), InvalidArgument);
  CHECK_THROWS_AS(mc_index_oracle(d, IndexKind::qZI, 0, 1), InvalidArgument);
}

TEST_CASE("oracle triangle") {
  const auto d = Distribution::dagum(1, 0.8, 1);
  const QuantileEstimate est(draw_sample(d, 100000, 12), QuantileScheme::HF);
  for (auto k : {IndexKind::qZI, IndexKind::qDI}) {
    const double exact = index_exact(d, k).value;
    const auto mc = mc_index_oracle(d, k, 400000, 17);
    const double sample = index_estimate_closed_form(est, k).value;
    // sqrt(sigma^2 / n) is below 1e-3 for every setting used here.
    CHECK(std::abs(mc.value - exact) < 4 * *mc.std_error);
    CHECK(std::abs(sample - exact) < 4e-3);
    CHECK(std::abs(sample - mc.value) < 4e-3 + 4 * *mc.std_error);
  }
}

TEST_CASE("scale invariance of estimates") {
  const Sample s = draw_sample(Distribution::dagum(1, 4, 0.5), 77, 2);
  for (auto scheme : kAllSchemes)
    for (auto k : {IndexKind::qZI, IndexKind::qDI}) {
      const double base = index_estimate_closed_form(s, scheme, k).value;
      CHECK(index_estimate_closed_form(s.scaled(4.0), scheme, k).value == base);
      CHECK(index_estimate_closed_form(s.scaled(0.125), scheme, k).value == base);
      CHECK(index_estimate_closed_form(s.scaled(7.3), scheme, k).value ==
            doctest::Approx(base).epsilon(1e-13));
    }
}

TEST_CASE("consistency over n") {
  for (const auto& s : kTable) {
    const auto d = Distribution::dagum(1, s.a, s.b);
    for (auto k : {IndexKind::qZI, IndexKind::qDI}) {
      const double exact = index_exact(d, k).value;
      double prev = INFINITY;
      for (std::size_t n : {50, 100, 500}) {
        std::vector<double> err;
        for (std::uint64_t r = 0; r < 200; ++r)
          err.push_back(std::abs(
              index_estimate_closed_form(draw_sample(d, n, 31 * n + r), QuantileScheme::E, k).value - exact));
        const double med = median_of(err);
        CAPTURE(d.to_string());
        CHECK(med < prev);
        prev = med;
      }
    }
  }
}

TEST_CASE("json form") {
  const auto est = index_estimate_closed_form(Sample({1, 2, 3}), QuantileScheme::WG, IndexKind::qDI);
  const auto j = est.to_json();
  CHECK(j["kind"] == "qDI");
  CHECK(j["scheme"] == "WG");
  CHECK(j["method"] == "closed_form");
  CHECK(j["n"] == 3);
  CHECK_FALSE(j.contains("std_error"));
  const auto e = index_exact(Distribution::dagum(1, 2, 1), IndexKind::qZI).to_json(4);
  CHECK(e["scheme"] == "exact");
  CHECK(e["value"].get<double>() == 0.7344);
  const auto mc = mc_index_oracle(Distribution::dagum(1, 2, 1), IndexKind::qZI, 10, 1).to_json();
  CHECK(mc.contains("std_error"));
}
