#include "sincde/ecf.hpp"
#include "sincde/error.hpp"
#include "sincde/mise.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

using namespace sincde;
constexpr double kPi = std::numbers::pi;

TEST_CASE("Sample statistics") {
  const Sample s({1.0, 2.0, 3.0, 6.0});
  CHECK(s.size() == 4);
  CHECK(s.mean() == doctest::Approx(3.0));
  CHECK(s.stddev() == doctest::Approx(std::sqrt(3.5)));  // divisor n
  CHECK(s.min() == 1.0);
  CHECK(s.max() == 6.0);
  const Sample t = s.affine(2.0, 1.0);
  CHECK(t[3] == 13.0);
  CHECK(t.stddev() == doctest::Approx(2.0 * std::sqrt(3.5)));
  CHECK_THROWS_AS(Sample(std::vector<double>{}), DomainError);
  CHECK_THROWS_AS(Sample({1.0, std::nan("")}), DomainError);
  CHECK_THROWS_AS(Sample({std::numeric_limits<double>::infinity()}), DomainError);
}

TEST_CASE("ecf_eval examples") {
  const Sample s({0.3, -1.2, 4.0});
  const auto at0 = ecf_eval(s, 0.0);
  CHECK(at0.real() == doctest::Approx(1.0));
  CHECK(at0.imag() == doctest::Approx(0.0));

  const Sample atom({0.0});
  for (double t : {-3.0, 0.5, 17.0}) {
    CHECK(ecf_eval(atom, t).real() == 1.0);
    CHECK(ecf_eval(atom, t).imag() == 0.0);
  }
  const auto v = ecf_eval(Sample({-1.0, 1.0}), kPi);
  CHECK(v.real() == doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(std::abs(v.imag()) < 1e-15);
}

TEST_CASE("ecf invariants") {
  std::mt19937_64 rng(3);
  std::normal_distribution<double> z;
  std::vector<double> xs(60);
  for (double& x : xs) x = z(rng);
  const Sample s(xs);
  const Sample shifted = s.affine(1.0, 2.5);
  std::uniform_real_distribution<double> u(-30.0, 30.0);
  for (int i = 0; i < 200; ++i) {
    const double t = u(rng);
    const auto a = ecf_eval(s, t);
    const auto b = ecf_eval(s, -t);
    CHECK(a.real() == b.real());
    CHECK(a.imag() == -b.imag());
    CHECK(std::abs(a) <= 1.0 + 1e-12);
    CHECK(std::abs(std::abs(ecf_eval(shifted, t)) - std::abs(a)) < 1e-12);
  }
}

TEST_CASE("ecf_modulus_grid examples") {
  const EcfGrid single = ecf_modulus_grid(Sample({2.0}), 1.0, 0.5);
  REQUIRE(single.t_values.size() == 3);
  for (double m : single.modulus) CHECK(m == doctest::Approx(1.0).epsilon(1e-14));

  const EcfGrid pm = ecf_modulus_grid(Sample({-1.0, 1.0}), kPi, kPi / 2.0);
  REQUIRE(pm.t_values.size() == 3);
  for (std::size_t i = 0; i < pm.t_values.size(); ++i) {
    CHECK(std::abs(pm.modulus[i] - std::abs(std::cos(pm.t_values[i]))) < 1e-12);
  }
  CHECK(pm.t_values.back() == kPi);

  // Long grids: the rotated phasors stay on the direct sum.
  std::mt19937_64 rng(11);
  std::normal_distribution<double> z;
  std::vector<double> xs(500);
  for (double& x : xs) x = z(rng);
  const Sample s(xs);
  const double t_max = default_ecf_t_max(s);
  CHECK(t_max == doctest::Approx(std::sqrt(500.0)));
  const EcfGrid g = ecf_modulus_grid(s, t_max, default_ecf_step(s));
  CHECK(g.modulus.front() == 1.0);
  CHECK(g.t_values.back() == t_max);
  for (std::size_t i = 0; i < g.t_values.size(); ++i) {
    CHECK(g.modulus[i] >= 0.0);
    CHECK(g.modulus[i] <= 1.0);
    if (i % 97 == 0) CHECK(std::abs(g.modulus[i] - std::abs(ecf_eval(s, g.t_values[i]))) < 1e-12);
  }
  for (std::size_t i = 1; i < g.t_values.size(); ++i) CHECK(g.t_values[i] > g.t_values[i - 1]);

  CHECK_THROWS_AS(ecf_modulus_grid(s, 1.0, 0.0), DomainError);
  CHECK_THROWS_AS(ecf_modulus_grid(s, 0.1, 0.5), DomainError);
}

TEST_CASE("default step uses the sample range") {
  CHECK(default_ecf_step(Sample({0.0})) == 0.01);
  CHECK(default_ecf_step(Sample({-100.0, 100.0})) == doctest::Approx(kPi / 800.0));
  const Sample a({-3.0, 1.0, 2.0});
  CHECK(default_ecf_step(a) == default_ecf_step(a.affine(1.0, 1000.0)));
}

TEST_CASE("find_down_crossings examples") {
  const Sample pm({-1.0, 1.0});
  const EcfGrid g = ecf_modulus_grid(pm, kPi, 0.01);
  const auto c = find_down_crossings(g, 1.0 / std::sqrt(2.0));
  REQUIRE(c.size() == 1);
  CHECK(c[0].delta == doctest::Approx(kPi / 4.0).epsilon(1e-10));
  CHECK(c[0].t_lo < c[0].delta);
  CHECK(c[0].delta < c[0].t_hi);

  const EcfGrid flat = ecf_modulus_grid(Sample({0.7}), 5.0, 0.01);
  CHECK(find_down_crossings(flat, 0.5).empty());

  CHECK_THROWS_AS(find_down_crossings(g, 1.0), DomainError);
  CHECK_THROWS_AS(find_down_crossings(g, 0.0), DomainError);
}

TEST_CASE("crossings are refined to the tolerance and scale as 1/lambda") {
  const Sample pm({-1.0, 1.0});
  const double level = 0.3;
  const auto base = find_down_crossings(ecf_modulus_grid(pm, 10.0, 0.01), level);
  REQUIRE(base.size() == 3);  // k pi + acos(0.3) for k = 0, 1, 2
  for (const auto& c : base) CHECK(std::abs(std::abs(ecf_eval(pm, c.delta)) - level) <= kCrossingTolerance);
  for (std::size_t i = 1; i < base.size(); ++i) CHECK(base[i].delta > base[i - 1].delta);

  const double lambda = 2.5;
  const Sample scaled = pm.affine(lambda, 0.0);
  const auto sc = find_down_crossings(ecf_modulus_grid(scaled, 10.0 / lambda, 0.01 / lambda), level);
  REQUIRE(sc.size() == base.size());
  for (std::size_t i = 0; i < sc.size(); ++i) CHECK(sc[i].delta == doctest::Approx(base[i].delta / lambda).epsilon(1e-9));
}

TEST_CASE("first crossing of a normal sample is near the known-cf root") {
  const long n = 1000;
  const Sample s = draw_sample(CharModel::normal(1.0), n, 99);
  const double level = 1.0 / std::sqrt(n + 1.0);
  const auto c = find_down_crossings(ecf_modulus_grid(s, default_ecf_t_max(s), default_ecf_step(s)), level);
  REQUIRE_FALSE(c.empty());
  CHECK(std::abs(c.front().delta - std::sqrt(std::log(n + 1.0))) < 0.5);
}
