#include "sincde/estimator.hpp"

#include "sincde/error.hpp"
#include "sincde/golden.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

namespace sincde {

namespace {

constexpr double kPi = std::numbers::pi;

void check_bandwidth(double h) {
  if (!(h > 0.0) || !std::isfinite(h)) throw DomainError("bandwidth h must be > 0");
}

void check_order(int r) {
  if (r < 0) throw DomainError("derivative order r must be >= 0");
  if (r > kMaxDerivativeOrder) {
    throw UnsupportedError("derivative order " + std::to_string(r) + " exceeds the supported maximum " +
                           std::to_string(kMaxDerivativeOrder));
  }
}

// sin^(p)(u)
double sin_derivative(int p, double u) {
  switch (p % 4) {
    case 0: return std::sin(u);
    case 1: return std::cos(u);
    case 2: return -std::sin(u);
    default: return -std::cos(u);
  }
}

// d^r/du^r (sin u / u) from its power series
//   sum_k (-1)^k u^(2k-r) / ((2k+1) (2k-r)!),  2k >= r.
double sinc_series_derivative(int r, double u) {
  int k = (r + 1) / 2;
  int j = 2 * k - r;        // exponent of u, 0 or 1
  double p = j == 0 ? 1.0 : u;  // u^j / j!
  const double u2 = u * u;
  double sum = 0.0;
  for (int it = 0; it < 400; ++it) {
    const double term = ((k % 2) ? -p : p) / (2.0 * k + 1.0);
    sum += term;
    if (j > std::abs(u) && std::abs(term) <= 1e-18 * std::max(1.0, std::abs(sum))) break;
    p *= u2 / ((j + 1.0) * (j + 2.0));
    j += 2;
    ++k;
  }
  return sum;
}

// d^r/du^r (sin u / u) by the Leibniz rule on sin(u) * u^-1.
double sinc_leibniz_derivative(int r, double u) {
  double sum = 0.0;
  double binom = 1.0;   // C(r, k)
  double fact = 1.0;    // k!
  double inv_pow = 1.0 / u;  // u^-(k+1)
  for (int k = 0; k <= r; ++k) {
    const double sign = (k % 2) ? -1.0 : 1.0;
    sum += binom * sin_derivative(r - k, u) * sign * fact * inv_pow;
    binom = binom * (r - k) / (k + 1.0);
    fact *= (k + 1.0);
    inv_pow /= u;
  }
  return sum;
}

double unit_sinc_derivative(int r, double u) {
  if (r == 0) {
    if (std::abs(u) < 1e-6) {
      const double u2 = u * u;
      return 1.0 - u2 / 6.0 + u2 * u2 / 120.0 - u2 * u2 * u2 / 5040.0;
    }
    return std::sin(u) / u;
  }
  if (std::abs(u) < std::max(2.0, 0.5 * r + 1.0)) return sinc_series_derivative(r, u);
  return sinc_leibniz_derivative(r, u);
}

}  // namespace

double sinc_kernel_derivative(double h, int r, double x) {
  check_bandwidth(h);
  check_order(r);
  return unit_sinc_derivative(r, x / h) / (kPi * std::pow(h, r + 1));
}

double sinc_eval(const Sample& sample, double h, double x) {
  check_bandwidth(h);
  double sum = 0.0;
  for (double xj : sample.values()) sum += unit_sinc_derivative(0, (x - xj) / h);
  return sum / (kPi * h * static_cast<double>(sample.size()));
}

double sinc_derivative_eval(const Sample& sample, double h, int r, double x) {
  check_bandwidth(h);
  check_order(r);
  if (r == 0) return sinc_eval(sample, h, x);
  double sum = 0.0;
  for (double xj : sample.values()) sum += unit_sinc_derivative(r, (x - xj) / h);
  return sum / (kPi * std::pow(h, r + 1) * static_cast<double>(sample.size()));
}

SincEstimate::SincEstimate(Sample sample, double h, int r) : sample_(std::move(sample)), h_(h), r_(r) {
  check_bandwidth(h);
  check_order(r);
}

DensityGrid evaluate_on_grid(const SincEstimate& estimate, double x_lo, double x_hi, int points) {
  if (!(x_lo < x_hi)) throw DomainError("grid requires x_lo < x_hi");
  if (points < 2) throw DomainError("grid requires at least 2 points");
  DensityGrid grid;
  grid.h = estimate.h();
  grid.x_values.resize(static_cast<std::size_t>(points));
  grid.y_values.resize(static_cast<std::size_t>(points));
  const double dx = (x_hi - x_lo) / (points - 1);
  for (int i = 0; i < points; ++i) {
    const double x = (i + 1 == points) ? x_hi : x_lo + dx * i;
    grid.x_values[static_cast<std::size_t>(i)] = x;
    grid.y_values[static_cast<std::size_t>(i)] = estimate(x);
  }
  return grid;
}

double trapezoid(const DensityGrid& grid) {
  double s = 0.0;
  for (std::size_t i = 0; i + 1 < grid.x_values.size(); ++i) {
    s += 0.5 * (grid.y_values[i] + grid.y_values[i + 1]) * (grid.x_values[i + 1] - grid.x_values[i]);
  }
  return s;
}

DensityGrid correct_to_density(const DensityGrid& grid) {
  if (grid.x_values.size() < 2 || grid.x_values.size() != grid.y_values.size()) {
    throw DomainError("density correction needs a grid of at least 2 points");
  }
  DensityGrid out = grid;
  for (double& y : out.y_values) y = std::max(0.0, y);
  const double mass = trapezoid(out);
  if (!(mass > 0.0)) throw DegenerateInputError("estimate has no positive mass on the grid");
  for (double& y : out.y_values) y /= mass;
  out.corrected = true;
  return out;
}

ModeEstimate estimate_mode(const Sample& sample, double h) {
  check_bandwidth(h);
  ModeEstimate m;
  m.scan_lo = sample.min() - 3.0 * h;
  m.scan_hi = sample.max() + 3.0 * h;
  const double step = h / 8.0;
  const auto count = static_cast<std::size_t>(std::ceil((m.scan_hi - m.scan_lo) / step));

  const auto f = [&](double x) { return sinc_eval(sample, h, x); };
  std::size_t best = 0;
  double best_val = f(m.scan_lo);
  for (std::size_t k = 1; k <= count; ++k) {
    const double v = f(m.scan_lo + step * static_cast<double>(k));
    // Values equal to within rounding count as ties and keep the earlier x.
    if (v > best_val + 1e-12 * std::abs(best_val)) {
      best_val = v;
      best = k;
    }
  }
  const double x_best = m.scan_lo + step * static_cast<double>(best);
  const double a = std::max(m.scan_lo, x_best - step);
  const double b = std::min(m.scan_lo + step * static_cast<double>(count), x_best + step);
  const double tol = 1e-8 * (m.scan_hi - m.scan_lo);
  const auto [x_ref, neg_val] = golden_section_minimize([&](double x) { return -f(x); }, a, b, tol);
  if (-neg_val >= best_val) {
    m.location = x_ref;
    m.value = -neg_val;
  } else {
    m.location = x_best;
    m.value = best_val;
  }
  return m;
}

}  // namespace sincde
