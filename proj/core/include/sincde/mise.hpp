#pragma once

#include "sincde/charfn.hpp"
#include "sincde/sample.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace sincde {

/// Integrated squared bias, integrated variance and their sum at one (n, h, r).
struct MiseBreakdown {
  double bias_sq = 0.0;
  double variance = 0.0;
  double total = 0.0;
  double h = 0.0;
  long n = 1;
  int r = 0;
};

enum class KernelKind { sinc, normal, cauchy, trapezoid };

/// Fourier transform psi of a symmetric kernel; psi(0) = 1, |psi| <= 1.
class KernelSpectrum {
public:
  static KernelSpectrum sinc() { return KernelSpectrum(KernelKind::sinc, 0.0); }
  static KernelSpectrum normal() { return KernelSpectrum(KernelKind::normal, 0.0); }
  static KernelSpectrum cauchy() { return KernelSpectrum(KernelKind::cauchy, 0.0); }
  /// psi = 1 on |t| <= delta, 2 - |t|/delta up to 2 delta, 0 beyond. delta in (0, 1).
  static KernelSpectrum trapezoid(double delta);

  KernelKind kind() const noexcept { return kind_; }
  double delta() const noexcept { return delta_; }
  double psi(double t) const noexcept;
  /// Points where psi has a kink or ends (on t >= 0), ascending.
  std::vector<double> breakpoints() const;
  std::string describe() const;

private:
  KernelSpectrum(KernelKind k, double d) : kind_(k), delta_(d) {}
  KernelKind kind_;
  double delta_;
};

/// Exact MISE of the sinc estimator of f^(r).
///
/// bias_sq = (1/2pi) int_{|t| > 1/h} t^(2r) |phi|^2, variance =
/// (1/(2 pi n)) int_{|t| <= 1/h} t^(2r) (1 - |phi|^2). With Path::automatic the
/// closed forms for normal and Cauchy targets (r = 0) are used; Path::quadrature
/// integrates the spectral representation directly.
MiseBreakdown sinc_mise(const CharModel& model, long n, double h, int r = 0,
                        Path path = Path::automatic);

/// MISE through R(f): 1/(pi n h) + R(f) - (1 + 1/n) (1/pi) int_0^{1/h} |phi|^2.
double sinc_mise_via_roughness(const CharModel& model, long n, double h,
                               Path path = Path::automatic);

/// Exact MISE of a kernel estimator with kernel spectrum psi (r = 0):
/// bias_sq = (1/2pi) int |phi|^2 (1 - psi(ht))^2, variance = (1/(2 pi n)) int (1 - |phi|^2) psi(ht)^2.
MiseBreakdown conventional_mise(const KernelSpectrum& kernel, const CharModel& model, long n, double h,
                                Path path = Path::automatic);

struct SuperkernelComparison {
  MiseBreakdown sinc;
  MiseBreakdown trapezoid;
  /// trapezoid.variance - sinc.variance, formed without cancellation. The
  /// difference falls below double resolution of either variance for large
  /// m and small h.
  double variance_gap = 0.0;
};

/// Sinc versus trapezoidal superkernel for |phi(t)|^2 = |t|^-m beyond c, using
/// the closed forms valid for h < delta / c.
SuperkernelComparison superkernel_comparison(double m, double delta, double h, long n, double c = 1.0);

struct OptimalBandwidth {
  double h_star = 0.0;
  MiseBreakdown value;
};

using MiseEvaluator = std::function<MiseBreakdown(double)>;

/// Global minimum of evaluator(h).total over [h_lo, h_hi]: a 2000-point
/// log-spaced scan followed by golden-section refinement of the best bracket.
/// Ties in the scan go to the smaller h.
OptimalBandwidth minimize_mise_over_h(const MiseEvaluator& evaluator, double h_lo, double h_hi);

/// Minimum of evaluator(h).total over the grid h = k * step, h_lo <= h <= h_hi.
OptimalBandwidth minimize_mise_on_h_grid(const MiseEvaluator& evaluator, double h_lo, double h_hi,
                                         double step);

enum class TableFamily { normal, cauchy };

enum class HSearch {
  grid,        ///< h = 0.01 k on [0.01, 10]
  continuous,  ///< minimize_mise_over_h on [1e-3, 10]
};

struct MiseTableRow {
  long n = 0;
  OptimalBandwidth sinc;
  OptimalBandwidth conventional;
  double ratio = 0.0;  ///< sinc / conventional
};

/// Optimal MISE of the sinc estimator and of the family's own kernel
/// (normal kernel for the normal target, Cauchy kernel for the Cauchy target).
MiseTableRow mise_table_row(TableFamily family, long n, HSearch search = HSearch::grid);

struct McIseResult {
  double mean_ise = 0.0;
  std::optional<double> std_error;  ///< empty when reps == 1
  int reps = 0;
};

/// Integrated squared error of one realization of the sinc estimate of f^(r),
/// for a normal or Cauchy target.
double integrated_squared_error(const Sample& sample, const CharModel& model, double h, int r = 0);

/// Draw a sample of size n from a normal or Cauchy model (centered at 0).
Sample draw_sample(const CharModel& model, long n, std::uint64_t seed, std::uint64_t stream = 0);

/// Monte Carlo mean of the ISE over `reps` independent samples. Replication k
/// draws from the stream derived from (seed, k), so the result depends only on
/// the arguments.
McIseResult mc_ise_oracle(const CharModel& model, long n, double h, int r, int reps,
                          std::uint64_t seed);

struct McMean {
  double mean = 0.0;
  double std_error = 0.0;
};

/// Monte Carlo mean of |phi_n(t)|^2 over `draws` samples of size n; its
/// expectation is 1/n + (1 - 1/n) |phi(t)|^2.
McMean mc_ecf_power(const CharModel& model, long n, double t, int draws, std::uint64_t seed);

}  // namespace sincde
