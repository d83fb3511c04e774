#pragma once

#include <string>
#include <variant>

namespace sincde {

// Analytic characteristic-function models. Only |phi(t)|^2 enters the MISE
// formulas, so every model is described through its squared modulus; models
// that have a known real-valued phi expose it through cf_value().

struct NormalModel {
  double sigma = 1.0;
};

struct CauchyModel {
  double scale = 1.0;
};

/// phi(t) = (sin t / t)^k: the k-fold convolution of uniform(-1, 1) densities.
struct UniformPowerModel {
  int k = 1;
};

/// |phi(t)|^2 = a / |t|^m for |t| > c. On |t| <= c the squared modulus is the
/// constant continuation min(1, a / c^m); that choice is a modelling
/// convention, reported by describe().
struct PowerTailModel {
  double a = 1.0;
  double c = 1.0;
  double m = 4.0;
};

enum class BandShape {
  triangle,          ///< phi(t) = (1 - |t|/T)_+   (Fejer density)
  triangle_squared,  ///< phi(t) = (1 - |t|/T)_+^2
};

struct BandLimitedModel {
  double T = 1.0;
  BandShape shape = BandShape::triangle;
};

class CharModel {
public:
  using Kind = std::variant<NormalModel, CauchyModel, UniformPowerModel, PowerTailModel,
                            BandLimitedModel>;

  static CharModel normal(double sigma = 1.0);
  static CharModel cauchy(double scale = 1.0);
  static CharModel uniform_power(int k);
  static CharModel power_tail(double a, double c, double m);
  static CharModel band_limited(double T, BandShape shape = BandShape::triangle);

  const Kind& kind() const noexcept { return kind_; }

  template <class T>
  const T* as() const noexcept {
    return std::get_if<T>(&kind_);
  }

  /// Human-readable description, e.g. "normal(sigma=1)".
  std::string describe() const;

  /// Natural t-scale, used to split quadrature ranges.
  double scale_hint() const noexcept;

  /// Period of oscillation of |phi|^2, or 0 when it does not oscillate.
  double oscillation_period() const noexcept;

  /// Smallest T with |phi(t)| = 0 for all |t| > T; +inf if none.
  double support_end() const noexcept;

private:
  explicit CharModel(Kind k) : kind_(k) {}
  Kind kind_;
};

/// |phi(t)|^2. Even in t, in [0, 1], equal to 1 at t = 0.
double cf_sq(const CharModel& model, double t);

/// 1 - |phi(t)|^2, accurate near t = 0.
double cf_sq_complement(const CharModel& model, double t);

/// |phi(t)|.
double cf_modulus(const CharModel& model, double t);

/// True when cf_value() is available (phi itself is known and real).
bool has_real_cf(const CharModel& model) noexcept;

/// phi(t) for models with a known real characteristic function.
/// Throws UnsupportedError for PowerTail, which only fixes |phi|^2.
double cf_value(const CharModel& model, double t);

enum class Method { closed_form, quadrature };

struct SpectralFunctional {
  double value = 0.0;
  double absolute_error_estimate = 0.0;
  Method method = Method::closed_form;
};

/// Selects the evaluation route. `automatic` uses a closed form when one is
/// known and falls back to quadrature; `quadrature` always integrates.
enum class Path { automatic, quadrature };

/// (1/pi) * integral over [lo, hi] of t^(2r) |phi(t)|^2 dt, with 0 <= lo <= hi
/// and hi possibly +inf. Throws InfeasibleError when the integral diverges.
SpectralFunctional spectral_moment(const CharModel& model, int r, double lo, double hi,
                                   Path path = Path::automatic);

/// (1/2pi) * integral over |t| > delta of |phi|^2: the integrated squared bias
/// of the sinc estimator at h = 1/delta.
SpectralFunctional tail_energy(const CharModel& model, double delta, Path path = Path::automatic);

/// (1/pi) * integral over [0, delta] of |phi|^2. head + tail = R(f).
SpectralFunctional head_energy(const CharModel& model, double delta, Path path = Path::automatic);

/// R(f^(m)) = (1/2pi) * integral of t^(2m) |phi|^2 over the real line.
SpectralFunctional roughness(const CharModel& model, int m, Path path = Path::automatic);

/// (1/2pi) * integral of t^(2r) exp(rho |t|^alpha) |phi(t)|^2 dt.
SpectralFunctional weighted_exponential_energy(const CharModel& model, double rho, double alpha,
                                               int r, Path path = Path::automatic);

}  // namespace sincde
