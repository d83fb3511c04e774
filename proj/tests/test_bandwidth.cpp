#include "sincde/bandwidth.hpp"
#include "sincde/charfn.hpp"
#include "sincde/ecf.hpp"
#include "sincde/error.hpp"
#include "sincde/mise.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace sincde;
constexpr double kPi = std::numbers::pi;

TEST_CASE("known-cf rule examples") {
  const auto a = solve_opt_bandwidth_known_cf(CharModel::normal(1.0), 1000);
  CHECK(a.rule == BandwidthRule::known_cf);
  CHECK(a.chosen_h == doctest::Approx(1.0 / std::sqrt(std::log(1001.0))).epsilon(1e-10));
  CHECK(std::abs(a.chosen_h - 0.38046) < 1e-4);
  CHECK(std::abs(sinc_mise(CharModel::normal(1.0), 1000, a.chosen_h).total - 0.000611) <= 5e-7);

  const auto b = solve_opt_bandwidth_known_cf(CharModel::cauchy(1.0), 1000);
  CHECK(b.chosen_h == doctest::Approx(2.0 / std::log(1001.0)).epsilon(1e-10));
  CHECK(std::abs(b.chosen_h - 0.28949) < 1e-5);

  for (long n : {10L, 100L, 5000L}) {
    const double one = solve_opt_bandwidth_known_cf(CharModel::normal(1.0), n).chosen_h;
    const double two = solve_opt_bandwidth_known_cf(CharModel::normal(2.0), n).chosen_h;
    CHECK(two == doctest::Approx(2.0 * one).epsilon(1e-10));
  }
}

TEST_CASE("known-cf candidates are level crossings and local minima") {
  for (const auto& m : {CharModel::normal(1.0), CharModel::cauchy(1.0), CharModel::normal(0.5)}) {
    for (long n : {50L, 1000L}) {
      const auto sel = solve_opt_bandwidth_known_cf(m, n);
      REQUIRE_FALSE(sel.candidates.empty());
      CHECK(sel.candidates.front().mise_offset == 0.0);
      const double level = 1.0 / std::sqrt(n + 1.0);
      for (const auto& c : sel.candidates) {
        CHECK(std::abs(std::sqrt(cf_sq(m, c.delta)) - level) < 1e-10);
        const double at = sinc_mise(m, n, 1.0 / c.delta).total;
        CHECK(at <= sinc_mise(m, n, 1.0 / (c.delta * (1.0 + 1e-3))).total);
        CHECK(at <= sinc_mise(m, n, 1.0 / (c.delta * (1.0 - 1e-3))).total);
      }
      const auto eval = [&](double h) { return sinc_mise(m, n, h); };
      const double best = minimize_mise_over_h(eval, 1e-3, 10.0).value.total;
      CHECK(sinc_mise(m, n, sel.chosen_h).total == doctest::Approx(best).epsilon(1e-4));
    }
  }
}

TEST_CASE("known-cf rule on models with several crossings") {
  // The side lobes of |sin t / t| fall through the level many times; the best crossing wins on exact MISE.
  const CharModel up = CharModel::uniform_power(1);
  const auto sel = solve_opt_bandwidth_known_cf(up, 500);
  REQUIRE(sel.candidates.size() > 1);
  double best = 1e300;
  for (const auto& c : sel.candidates) best = std::min(best, sinc_mise(up, 500, 1.0 / c.delta).total);
  CHECK(sinc_mise(up, 500, sel.chosen_h).total == doctest::Approx(best).epsilon(1e-12));

  // A triangle spectrum 1 - t/T crosses the level once, at T (1 - 1/sqrt(n + 1)).
  const auto bl = solve_opt_bandwidth_known_cf(CharModel::band_limited(2.0), 10);
  REQUIRE(bl.candidates.size() == 1);
  CHECK(bl.chosen_h == doctest::Approx(1.0 / (2.0 * (1.0 - 1.0 / std::sqrt(11.0)))).epsilon(1e-10));
}

TEST_CASE("normal rule") {
  std::vector<double> xs;
  for (int i = 0; i < 1000; ++i) xs.push_back(i % 2 ? 1.0 : -1.0);  // mean 0, sd 1
  const Sample s(xs);
  const auto sel = normal_rule(s);
  CHECK(sel.rule == BandwidthRule::normal_rule);
  CHECK(sel.chosen_h == doctest::Approx(1.0 / std::sqrt(std::log(1001.0))).epsilon(1e-14));
  const auto eval = [](double h) { return sinc_mise(CharModel::normal(1.0), 1000, h); };
  CHECK(std::abs(sel.chosen_h - minimize_mise_over_h(eval, 0.05, 2.0).h_star) < 1e-4);
  CHECK(normal_rule(s.affine(3.5, -2.0)).chosen_h == doctest::Approx(3.5 * sel.chosen_h).epsilon(1e-13));
  CHECK_THROWS_AS(normal_rule(Sample({2.0, 2.0, 2.0})), DegenerateInputError);
  CHECK_THROWS_AS(normal_rule(Sample({2.0})), DomainError);
}

TEST_CASE("ECF rule") {
  const auto sel = ecf_rule(Sample({-1.0, 1.0}), kPi);
  CHECK(sel.rule == BandwidthRule::ecf_rule);
  REQUIRE(sel.candidates.size() == 1);
  CHECK(sel.candidates[0].delta == doctest::Approx(std::acos(1.0 / std::sqrt(3.0))).epsilon(1e-10));
  CHECK(sel.chosen_h == doctest::Approx(1.04677).epsilon(1e-5));
  CHECK_THROWS_AS(ecf_rule(Sample({0.5})), DomainError);

  const Sample s = draw_sample(CharModel::normal(1.0), 400, 21);
  const auto a = ecf_rule(s);
  const auto b = ecf_rule(s.affine(1.0, 7.25));
  CHECK(a.chosen_h == doctest::Approx(b.chosen_h).epsilon(1e-9));
  REQUIRE(a.candidates.size() == b.candidates.size());
  for (const auto& c : a.candidates) CHECK(c.delta > 0.0);
  const double h_known = solve_opt_bandwidth_known_cf(CharModel::normal(1.0), 400).chosen_h;
  CHECK(std::abs(a.chosen_h - h_known) < 0.2);

  // The offset of each candidate against a direct evaluation of the plug-in difference.
  const double n = 400.0;
  const auto u = [&](double t) { return (n * std::norm(ecf_eval(s, t)) - 1.0) / (n - 1.0); };
  for (std::size_t i = 1; i < std::min<std::size_t>(a.candidates.size(), 4); ++i) {
    const double d1 = a.candidates[0].delta;
    const double di = a.candidates[i].delta;
    const int k = 20000;
    double sum = 0.0;
    for (int j = 0; j <= k; ++j) {
      const double t = d1 + (di - d1) * j / k;
      sum += (j == 0 || j == k ? 0.5 : 1.0) * u(t);
    }
    const double integral = sum * (di - d1) / k;
    const double expected = (di - d1) / (kPi * n) - (1.0 + 1.0 / n) * integral / kPi;
    CHECK(a.candidates[i].mise_offset == doctest::Approx(expected).epsilon(1e-6));
  }
  CHECK(to_string(BandwidthRule::ecf_rule) == "ecf");
}

TEST_CASE("ECF rule falls back to the normal rule without a crossing") {
  // A narrow search range ends before |phi_n| reaches the level.
  const Sample s = draw_sample(CharModel::normal(1.0), 200, 2);
  const auto sel = ecf_rule(s, 0.1);
  CHECK(sel.candidates.empty());
  CHECK(sel.chosen_h == doctest::Approx(normal_rule(s).chosen_h));
  CHECK_FALSE(sel.diagnostics.empty());
}
