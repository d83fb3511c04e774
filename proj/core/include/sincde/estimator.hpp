#pragma once

#include "sincde/sample.hpp"

#include <vector>

namespace sincde {

/// Highest derivative order the closed-form kernel derivatives are validated for.
inline constexpr int kMaxDerivativeOrder = 12;

/// d^r/dx^r of the scaled sinc kernel sin(x/h) / (pi x).
double sinc_kernel_derivative(double h, int r, double x);

/// f_n(x; h) = (1 / (pi n)) sum_j sin((x - X_j)/h) / (x - X_j).
double sinc_eval(const Sample& sample, double h, double x);

/// r-th derivative in x of sinc_eval.
double sinc_derivative_eval(const Sample& sample, double h, int r, double x);

/// Sinc estimate of f^(r) with bandwidth h.
class SincEstimate {
public:
  SincEstimate(Sample sample, double h, int r = 0);

  const Sample& sample() const noexcept { return sample_; }
  double h() const noexcept { return h_; }
  int r() const noexcept { return r_; }

  double operator()(double x) const { return sinc_derivative_eval(sample_, h_, r_, x); }

private:
  Sample sample_;
  double h_;
  int r_;
};

struct DensityGrid {
  std::vector<double> x_values;
  std::vector<double> y_values;
  double h = 0.0;
  bool corrected = false;
};

/// Estimate on `points` equally spaced abscissae from x_lo to x_hi inclusive.
DensityGrid evaluate_on_grid(const SincEstimate& estimate, double x_lo, double x_hi, int points);

/// Trapezoid-rule integral of y over the grid.
double trapezoid(const DensityGrid& grid);

/// Clip negative values to zero and rescale so the trapezoid integral is 1.
/// Throws DegenerateInputError when no positive mass remains.
DensityGrid correct_to_density(const DensityGrid& grid);

struct ModeEstimate {
  double location = 0.0;
  double value = 0.0;
  /// Scan region [min X - 3h, max X + 3h]; a heuristic, reported as metadata.
  double scan_lo = 0.0;
  double scan_hi = 0.0;
};

/// argmax_x f_n(x; h): scan at spacing h/8, then golden-section refinement of
/// the best bracket. Ties between scan points go to the smallest x.
ModeEstimate estimate_mode(const Sample& sample, double h);

}  // namespace sincde
