#pragma once

#include "sincde/charfn.hpp"

#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace sincde {

enum class BoundRegime { smooth, bounded_variation, exponential, band_limited };

/// Upper bound on the MISE of the sinc estimate of f^(r).
struct BoundReport {
  BoundRegime regime = BoundRegime::smooth;
  int r = 0;
  std::vector<std::pair<std::string, double>> inputs;
  double h_used = 0.0;
  bool optimized = false;  ///< h_used was chosen by the bound, not supplied
  double bound = 0.0;
  /// Exact epsilon(h) factor when a model was supplied; 1 otherwise.
  std::optional<double> epsilon;
};

/// h^(2m) R + 1/(pi (2r+1) n h^(2r+1)), R = R(f^(r+m)). Without h, the
/// minimizing h* = (2 pi m n R)^(-1/(2m+2r+1)) is used, giving
/// C_{m,r} R^((2r+1)/D) n^(-2m/D), D = 2m + 2r + 1.
BoundReport bound_smooth(int r, int m, double R, long n, std::optional<double> h = std::nullopt);

/// h^(2m+1) V^2 / ((2m+1) pi) + 1/(pi n h), V = Vr(f^(m)). Without h, uses
/// h* = (n V^2)^(-1/(2m+2)).
BoundReport bound_variation(int m, double V, long n, std::optional<double> h = std::nullopt);

/// C exp(-rho / h^alpha) + 1/(pi n h^(2r+1)). Without h, uses
/// h = (ln(n) / rho)^(-1/alpha), which needs n > 2. `weakened` reports the
/// looser (C + 1/(pi rho^((2r+1)/alpha))) (ln n)^((2r+1)/alpha) / n instead.
BoundReport bound_exponential(int r, double C, double rho, double alpha, long n,
                              std::optional<double> h = std::nullopt, bool weakened = false);

/// 1/(pi n h^(2r+1)) for h <= 1/T. Throws OutOfValidityError when h > 1/T.
BoundReport bound_bandlimited(int r, double T, long n, double h);

/// epsilon(h) = 1 - int_{|t|<=1/h} t^(2(r+m)) |phi|^2 / int t^(2(r+m)) |phi|^2.
double smooth_epsilon(const CharModel& model, int r, int m, double h);

/// epsilon(h) = 1 - int_{|t|<=1/h} t^(2r) e^(rho |t|^alpha) |phi|^2 / int (same).
double exponential_epsilon(const CharModel& model, int r, double rho, double alpha, double h);

/// bound_smooth with R = R(f^(r+m)) and the exact epsilon taken from the model.
BoundReport bound_smooth_exact(const CharModel& model, int r, int m, long n,
                               std::optional<double> h = std::nullopt);

/// bound_exponential with C and the exact epsilon taken from the model.
BoundReport bound_exponential_exact(const CharModel& model, int r, double rho, double alpha, long n,
                                    std::optional<double> h = std::nullopt);

std::string to_string(BoundRegime regime);

}  // namespace sincde
