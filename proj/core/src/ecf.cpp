#include "sincde/ecf.hpp"

#include "sincde/error.hpp"
#include "phasor.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace sincde {

std::complex<double> ecf_eval(const Sample& sample, double t) {
  double re = 0.0;
  double im = 0.0;
  for (double x : sample.values()) {
    const double a = t * x;
    re += std::cos(a);
    im += std::sin(a);
  }
  const auto n = static_cast<double>(sample.size());
  return {re / n, im / n};
}

double default_ecf_t_max(const Sample& sample) {
  return std::sqrt(static_cast<double>(sample.size()));
}

double default_ecf_step(const Sample& sample) {
  const double range = sample.max() - sample.min();
  if (!(range > 0.0)) return 0.01;
  return std::min(0.01, std::numbers::pi / (4.0 * range));
}

EcfGrid ecf_modulus_grid(const Sample& sample, double t_max, double step) {
  if (!(step > 0.0)) throw DomainError("ecf grid step must be > 0");
  if (!(t_max >= step)) throw DomainError("ecf grid requires t_max >= step");

  EcfGrid grid{sample, {}, {}};
  const auto count = static_cast<std::size_t>(std::floor(t_max / step * (1.0 + 1e-12)));
  grid.t_values.reserve(count + 2);
  for (std::size_t k = 0; k <= count; ++k) grid.t_values.push_back(static_cast<double>(k) * step);
  if (t_max - grid.t_values.back() > 1e-12 * t_max) {
    grid.t_values.push_back(t_max);
  } else {
    grid.t_values.back() = t_max;
  }

  // Rotate one phasor per observation instead of calling sin/cos at every
  // grid point; resynchronise periodically to bound the drift.
  constexpr std::size_t kResync = 64;
  const auto values = sample.values();
  const auto n = static_cast<double>(values.size());
  std::vector<std::complex<double>> phase(values.size());
  std::vector<std::complex<double>> rot(values.size());
  for (std::size_t j = 0; j < values.size(); ++j) rot[j] = std::polar(1.0, step * values[j]);

  grid.modulus.resize(grid.t_values.size());
  for (std::size_t k = 0; k <= count; ++k) {
    const double t = static_cast<double>(k) * step;
    if (k % kResync == 0) {
      for (std::size_t j = 0; j < values.size(); ++j) phase[j] = std::polar(1.0, t * values[j]);
    }
    std::complex<double> sum{0.0, 0.0};
    for (std::size_t j = 0; j < values.size(); ++j) {
      sum += phase[j];
      detail::rotate(phase[j], rot[j]);
    }
    grid.modulus[k] = std::min(1.0, std::abs(sum) / n);
  }
  grid.modulus[0] = 1.0;
  const std::size_t last = grid.t_values.size() - 1;
  grid.modulus[last] = std::min(1.0, std::abs(ecf_eval(sample, grid.t_values[last])));
  return grid;
}

std::vector<DownCrossing> find_down_crossings(const std::function<double(double)>& modulus,
                                              const std::vector<double>& t_values,
                                              const std::vector<double>& values, double level) {
  if (!(level > 0.0 && level < 1.0)) throw DomainError("crossing level must lie in (0, 1)");
  std::vector<DownCrossing> out;
  for (std::size_t i = 0; i + 1 < t_values.size(); ++i) {
    if (!(values[i] > level && values[i + 1] <= level)) continue;
    double lo = t_values[i];
    double hi = t_values[i + 1];
    double delta = hi;
    if (values[i + 1] < level) {
      // Illinois false position on g = modulus - level; the bracket is kept.
      double g_lo = values[i] - level;
      double g_hi = values[i + 1] - level;
      int side = 0;
      for (int it = 0; it < 100; ++it) {
        delta = hi - g_hi * (hi - lo) / (g_hi - g_lo);
        if (!(delta > lo && delta < hi)) delta = 0.5 * (lo + hi);
        const double g = modulus(delta) - level;
        if (std::abs(g) <= kCrossingTolerance || hi - lo <= 4e-16 * hi) break;
        if (g > 0.0) {
          lo = delta;
          g_lo = g;
          if (side == -1) g_hi *= 0.5;
          side = -1;
        } else {
          hi = delta;
          g_hi = g;
          if (side == 1) g_lo *= 0.5;
          side = 1;
        }
      }
    }
    out.push_back({delta, lo, hi});
  }
  return out;
}

std::vector<DownCrossing> find_down_crossings(const EcfGrid& grid, double level) {
  const Sample& s = grid.sample;
  return find_down_crossings([&s](double t) { return std::abs(ecf_eval(s, t)); }, grid.t_values,
                             grid.modulus, level);
}

}  // namespace sincde
