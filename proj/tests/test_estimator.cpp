#include "oracle.hpp"

#include "sincde/error.hpp"
#include "sincde/estimator.hpp"
#include "sincde/mise.hpp"

#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

using namespace sincde;
using oracle::kPi;

namespace {

// (1/2pi) int_{-1/h}^{1/h} (-it)^r phi_n(t) e^{-itx} dt, folded onto [0, 1/h].
double spectral_derivative(const Sample& s, double h, int r, double x) {
  const auto g = [&](double t) {
    std::complex<double> acc{0.0, 0.0};
    for (double xj : s.values()) acc += std::polar(1.0, t * (xj - x));
    acc /= static_cast<double>(s.size());
    const std::complex<double> w = std::pow(std::complex<double>(0.0, -t), r);
    return (w * acc).real();
  };
  return oracle::integrate(g, 0.0, 1.0 / h, 60) / kPi;
}

Sample random_sample(std::mt19937_64& rng, int n) {
  std::normal_distribution<double> z;
  std::vector<double> xs(static_cast<std::size_t>(n));
  for (double& x : xs) x = 1.5 * z(rng);
  return Sample(xs);
}

}  // namespace

TEST_CASE("sinc_eval examples") {
  const Sample atom({0.0});
  CHECK(sinc_eval(atom, 1.0, 0.0) == doctest::Approx(1.0 / kPi).epsilon(1e-15));
  CHECK(std::abs(sinc_eval(atom, 1.0, kPi)) < 1e-16);
  CHECK(sinc_eval(Sample({-1.0, 1.0}), 0.5, 0.0) == doctest::Approx(std::sin(2.0) / kPi).epsilon(1e-14));
  CHECK(sinc_eval(Sample({-1.0, 1.0}), 0.5, 0.0) == doctest::Approx(0.289438).epsilon(1e-6));
  CHECK_THROWS_AS(sinc_eval(atom, 0.0, 1.0), DomainError);
  CHECK_THROWS_AS(sinc_eval(atom, -1.0, 1.0), DomainError);
  // Near the removable singularity the value is continuous.
  CHECK(sinc_eval(atom, 1.0, 1e-9) == doctest::Approx(1.0 / kPi).epsilon(1e-15));
  CHECK(sinc_eval(atom, 1.0, 1e-5) == doctest::Approx(std::sin(1e-5) / (kPi * 1e-5)).epsilon(1e-15));
}

TEST_CASE("sinc_derivative_eval examples") {
  const Sample atom({0.0});
  CHECK(std::abs(sinc_derivative_eval(atom, 1.0, 1, 0.0)) < 1e-16);
  CHECK(sinc_derivative_eval(atom, 1.0, 2, 0.0) == doctest::Approx(-1.0 / (3.0 * kPi)).epsilon(1e-14));
  const Sample s({0.2, -0.4, 1.1});
  for (double x : {-2.0, 0.0, 0.3, 5.0}) CHECK(sinc_derivative_eval(s, 0.7, 0, x) == sinc_eval(s, 0.7, x));
  CHECK_THROWS_AS(sinc_derivative_eval(atom, 1.0, kMaxDerivativeOrder + 1, 0.0), UnsupportedError);
  CHECK_THROWS_AS(sinc_derivative_eval(atom, 0.0, 1, 0.0), DomainError);
  CHECK_THROWS_AS(sinc_derivative_eval(atom, 1.0, -1, 0.0), DomainError);
}

TEST_CASE("kernel derivatives at zero match the Taylor coefficients up to order 12") {
  // d^r/du^r (sin u / u) at 0 is (-1)^(r/2) / (r + 1) for even r, 0 for odd r.
  for (int r = 0; r <= kMaxDerivativeOrder; ++r) {
    const double expected = (r % 2) ? 0.0 : (((r / 2) % 2) ? -1.0 : 1.0) / (r + 1.0) / kPi;
    CHECK(sinc_kernel_derivative(1.0, r, 0.0) == doctest::Approx(expected).epsilon(1e-13));
  }
}

TEST_CASE("spectral consistency of derivatives") {
  std::mt19937_64 rng(2024);
  std::uniform_real_distribution<double> ux(-4.0, 4.0);
  std::uniform_int_distribution<int> un(1, 50);
  for (int trial = 0; trial < 6; ++trial) {
    const Sample s = random_sample(rng, un(rng));
    for (double h : {0.3, 1.0}) {
      for (int r : {0, 1, 2, 3, 6}) {
        for (int k = 0; k < 10; ++k) {
          const double x = ux(rng);
          const double spatial = sinc_derivative_eval(s, h, r, x);
          const double spectral = spectral_derivative(s, h, r, x);
          CHECK(std::abs(spatial - spectral) < 1e-8 * std::max(1.0, std::pow(1.0 / h, r)));
        }
      }
    }
  }
  // Points sitting on observations and at the series/Leibniz switch.
  const Sample s({0.0, 0.5});
  for (int r = 1; r <= 8; ++r) {
    const double edge = std::max(2.0, 0.5 * r + 1.0);
    for (double x : {0.0, 0.5, edge, edge * (1 + 1e-12), -edge})
      CHECK(std::abs(sinc_derivative_eval(s, 1.0, r, x) - spectral_derivative(s, 1.0, r, x)) < 1e-8);
  }
}

TEST_CASE("equivariance and the sup bound") {
  std::mt19937_64 rng(5);
  const Sample s = random_sample(rng, 25);
  const double c = 3.25;
  const double lambda = 1.7;
  const Sample shifted = s.affine(1.0, c);
  const Sample scaled = s.affine(lambda, 0.0);
  for (int r : {0, 1, 2}) {
    for (double x : {-1.3, 0.0, 0.4, 2.2}) {
      const double base = sinc_derivative_eval(s, 0.6, r, x);
      CHECK(std::abs(sinc_derivative_eval(shifted, 0.6, r, x + c) - base) < 1e-12 * std::max(1.0, std::abs(base)));
      CHECK(sinc_derivative_eval(scaled, 0.6 * lambda, r, lambda * x) ==
            doctest::Approx(std::pow(lambda, -(r + 1.0)) * base).epsilon(1e-11));
    }
  }
  for (int i = -200; i <= 200; ++i) CHECK(std::abs(sinc_eval(s, 0.3, 0.05 * i)) <= 1.0 / (kPi * 0.3) + 1e-15);
}

TEST_CASE("evaluate_on_grid") {
  const SincEstimate est(Sample({0.0}), 1.0);
  const DensityGrid g = evaluate_on_grid(est, -kPi, kPi, 3);
  REQUIRE(g.y_values.size() == 3);
  CHECK(std::abs(g.y_values[0]) < 1e-16);
  CHECK(g.y_values[1] == doctest::Approx(1.0 / kPi));
  CHECK(std::abs(g.y_values[2]) < 1e-16);
  CHECK_FALSE(g.corrected);
  const DensityGrid two = evaluate_on_grid(est, -1.0, 2.0, 2);
  CHECK(two.x_values == std::vector<double>{-1.0, 2.0});
  CHECK(evaluate_on_grid(est, 0.0, 1.0, 17).y_values.size() == 17);
  CHECK_THROWS_AS(evaluate_on_grid(est, 1.0, 0.0, 5), DomainError);
  CHECK_THROWS_AS(evaluate_on_grid(est, 0.0, 1.0, 1), DomainError);
}

TEST_CASE("correct_to_density") {
  DensityGrid unit;
  unit.x_values = {0.0, 0.5, 1.0};
  unit.y_values = {1.0, 1.0, 1.0};
  const DensityGrid same = correct_to_density(unit);
  for (double y : same.y_values) CHECK(y == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(same.corrected);

  DensityGrid neg;
  neg.x_values = {0.0, 1.0};
  neg.y_values = {-1.0, 1.0};
  const DensityGrid fixed = correct_to_density(neg);
  CHECK(fixed.y_values == std::vector<double>{0.0, 2.0});

  DensityGrid none;
  none.x_values = {0.0, 1.0};
  none.y_values = {-1.0, 0.0};
  CHECK_THROWS_AS(correct_to_density(none), DegenerateInputError);

  const Sample s = draw_sample(CharModel::normal(1.0), 200, 8);
  const DensityGrid g = correct_to_density(evaluate_on_grid(SincEstimate(s, 0.45), -5.0, 5.0, 1001));
  CHECK(std::abs(trapezoid(g) - 1.0) < 1e-9);
  for (double y : g.y_values) CHECK(y >= 0.0);
}

TEST_CASE("estimate_mode examples") {
  CHECK(std::abs(estimate_mode(Sample({0.0}), 0.7).location) < 1e-7);
  CHECK(std::abs(estimate_mode(Sample({-1.0, 1.0}), 2.0).location) < 1e-7);
  const ModeEstimate two = estimate_mode(Sample({-1.0, 1.0}), 0.1);
  CHECK(std::abs(two.location + 1.0) < 0.01);  // tie between the bumps goes to the smaller x
  CHECK(two.scan_lo == doctest::Approx(-1.3));
  CHECK(two.scan_hi == doctest::Approx(1.3));
  CHECK_THROWS_AS(estimate_mode(Sample({0.0}), 0.0), DomainError);

  // Dense-grid oracle, and the scan property.
  const Sample s = draw_sample(CharModel::normal(1.0), 150, 4);
  const double h = 0.5;
  const ModeEstimate m = estimate_mode(s, h);
  double best_x = 0.0;
  double best = -1e300;
  for (int i = 0; i <= 20000; ++i) {
    const double x = m.scan_lo + (m.scan_hi - m.scan_lo) * i / 20000.0;
    const double v = sinc_eval(s, h, x);
    if (v > best) {
      best = v;
      best_x = x;
    }
  }
  CHECK(std::abs(m.location - best_x) < 1e-3);
  CHECK(m.value >= best - 1e-14);
  CHECK(m.value == doctest::Approx(sinc_eval(s, h, m.location)));
}
