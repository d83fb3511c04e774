#pragma once

#include "sincde/sample.hpp"

#include <complex>
#include <functional>
#include <vector>

namespace sincde {

/// phi_n(t) = (1/n) sum_j exp(i t X_j).
std::complex<double> ecf_eval(const Sample& sample, double t);

/// |phi_n(t)| sampled on [0, t_max]. Keeps the sample so crossings can be
/// refined against the exact modulus.
struct EcfGrid {
  Sample sample;
  std::vector<double> t_values;  ///< strictly increasing, t_values[0] = 0
  std::vector<double> modulus;   ///< |phi_n(t_values[i])|

  std::size_t n() const noexcept { return sample.size(); }
};

/// Grid over [0, t_max] at spacing `step`; the final point is t_max itself.
/// Throws DomainError unless t_max >= step > 0.
EcfGrid ecf_modulus_grid(const Sample& sample, double t_max, double step);

/// Default search range [0, sqrt(n)].
double default_ecf_t_max(const Sample& sample);

/// Default grid step min(0.01, pi / (4 * (max X - min X))): at least eight
/// grid points per period of the fastest term of |phi_n|^2.
double default_ecf_step(const Sample& sample);

struct DownCrossing {
  double delta = 0.0;
  double t_lo = 0.0;  ///< modulus(t_lo) > level
  double t_hi = 0.0;  ///< modulus(t_hi) < level
};

/// Tolerance on |modulus(delta) - level| for refined crossings.
inline constexpr double kCrossingTolerance = 1e-10;

/// Every down-crossing of the modulus through `level`, refined by false position
/// on |phi_n|, in increasing order. Empty when the modulus never crosses.
std::vector<DownCrossing> find_down_crossings(const EcfGrid& grid, double level);

/// Same search for an arbitrary modulus function sampled at `t_values`.
std::vector<DownCrossing> find_down_crossings(const std::function<double(double)>& modulus,
                                              const std::vector<double>& t_values,
                                              const std::vector<double>& values, double level);

}  // namespace sincde
