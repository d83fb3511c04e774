#include "sincde/bounds.hpp"

#include "sincde/error.hpp"
#include "sincde/quadrature.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <sstream>

namespace sincde {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

void check_common(int r, long n) {
  if (r < 0) throw DomainError("derivative order r must be >= 0");
  if (n < 1) throw DomainError("sample size n must be >= 1");
}

double check_h(std::optional<double> h) {
  if (!(*h > 0.0) || !std::isfinite(*h)) throw DomainError("bandwidth h must be > 0");
  return *h;
}

// Variance bound shared by every regime: (1/(2 pi n)) int_{|t|<=1/h} t^(2r) dt.
double smooth_variance(int r, long n, double h) {
  const double e = 2.0 * r + 1.0;
  return 1.0 / (kPi * e * static_cast<double>(n) * std::pow(h, e));
}

double exp_bias(double C, double rho, double alpha, double h) { return C * std::exp(-rho / std::pow(h, alpha)); }

}  // namespace

std::string to_string(BoundRegime regime) {
  switch (regime) {
    case BoundRegime::smooth: return "smooth";
    case BoundRegime::bounded_variation: return "variation";
    case BoundRegime::exponential: return "exponential";
    case BoundRegime::band_limited: return "bandlimited";
  }
  return "?";
}

BoundReport bound_smooth(int r, int m, double R, long n, std::optional<double> h) {
  check_common(r, n);
  if (m < 0) throw DomainError("smoothness order m must be >= 0");
  if (!(R > 0.0) || !std::isfinite(R)) throw DomainError("roughness R must be > 0");
  BoundReport out;
  out.regime = BoundRegime::smooth;
  out.r = r;
  out.inputs = {{"m", static_cast<double>(m)}, {"R", R}, {"n", static_cast<double>(n)}};
  if (h) {
    out.h_used = check_h(h);
    out.bound = std::pow(out.h_used, 2.0 * m) * R + smooth_variance(r, n, out.h_used);
    return out;
  }
  if (m == 0) throw InfeasibleError("the smooth bound with m = 0 has no finite minimum over h");
  const double D = 2.0 * m + 2.0 * r + 1.0;
  const double e = 2.0 * r + 1.0;
  const double two_pi_m = 2.0 * kPi * m;
  const double nd = static_cast<double>(n);
  const double C = std::pow(two_pi_m, -2.0 * m / D) + std::pow(two_pi_m, e / D) / (kPi * e);
  out.optimized = true;
  out.h_used = std::pow(two_pi_m * nd * R, -1.0 / D);
  out.bound = C * std::pow(R, e / D) * std::pow(nd, -2.0 * m / D);
  return out;
}

BoundReport bound_variation(int m, double V, long n, std::optional<double> h) {
  check_common(0, n);
  if (m < 0) throw DomainError("smoothness order m must be >= 0");
  if (!(V > 0.0) || !std::isfinite(V)) throw DomainError("total variation V must be > 0");
  BoundReport out;
  out.regime = BoundRegime::bounded_variation;
  out.inputs = {{"m", static_cast<double>(m)}, {"V", V}, {"n", static_cast<double>(n)}};
  const double nd = static_cast<double>(n);
  const double k = 2.0 * m + 1.0;
  if (h) {
    out.h_used = check_h(h);
    out.bound = std::pow(out.h_used, k) * V * V / (k * kPi) + 1.0 / (kPi * nd * out.h_used);
    return out;
  }
  out.optimized = true;
  out.h_used = std::pow(nd * V * V, -1.0 / (k + 1.0));
  out.bound = (k + 1.0) / (k * kPi) * std::pow(V, 1.0 / (m + 1.0)) * std::pow(nd, -k / (k + 1.0));
  return out;
}

BoundReport bound_exponential(int r, double C, double rho, double alpha, long n, std::optional<double> h,
                              bool weakened) {
  check_common(r, n);
  if (!(C > 0.0) || !std::isfinite(C)) throw DomainError("constant C must be finite and > 0");
  if (!(rho > 0.0)) throw DomainError("rho must be > 0");
  if (!(alpha > 0.0 && alpha <= 2.0)) throw DomainError("alpha must lie in (0, 2]");
  BoundReport out;
  out.regime = BoundRegime::exponential;
  out.r = r;
  out.inputs = {{"C", C}, {"rho", rho}, {"alpha", alpha}, {"n", static_cast<double>(n)}};
  const double nd = static_cast<double>(n);
  const double e = 2.0 * r + 1.0;
  const auto at = [&](double hv) { return exp_bias(C, rho, alpha, hv) + 1.0 / (kPi * nd * std::pow(hv, e)); };
  if (h) {
    out.h_used = check_h(h);
    out.bound = at(out.h_used);
    return out;
  }
  if (n <= 2) throw InfeasibleError("the exponential bound with h = (ln(n)/rho)^(-1/alpha) needs n > 2");
  const double log_n = std::log(nd);
  out.optimized = true;
  out.h_used = std::pow(log_n / rho, -1.0 / alpha);
  const double p = e / alpha;
  if (weakened) {
    out.bound = (C + 1.0 / (kPi * std::pow(rho, p))) * std::pow(log_n, p) / nd;
  } else {
    out.bound = (C + std::pow(log_n, p) / (kPi * std::pow(rho, p))) / nd;
  }
  return out;
}

BoundReport bound_bandlimited(int r, double T, long n, double h) {
  check_common(r, n);
  if (!(T > 0.0) || !std::isfinite(T)) throw DomainError("band limit T must be > 0");
  check_h(h);
  if (h > 1.0 / T * (1.0 + 1e-15)) {
    std::ostringstream os;
    os << "band-limited bound needs h <= 1/T = " << 1.0 / T << " (got h = " << h << ")";
    throw OutOfValidityError(os.str());
  }
  BoundReport out;
  out.regime = BoundRegime::band_limited;
  out.r = r;
  out.inputs = {{"T", T}, {"n", static_cast<double>(n)}};
  out.h_used = h;
  out.bound = 1.0 / (kPi * static_cast<double>(n) * std::pow(h, 2.0 * r + 1.0));
  return out;
}

double smooth_epsilon(const CharModel& model, int r, int m, double h) {
  if (!(h > 0.0)) throw DomainError("bandwidth h must be > 0");
  const int k = r + m;
  const double total = spectral_moment(model, k, 0.0, kInf).value;
  if (!(total > 0.0)) throw InfeasibleError("zero spectral moment");
  return spectral_moment(model, k, 1.0 / h, kInf).value / total;
}

double exponential_epsilon(const CharModel& model, int r, double rho, double alpha, double h) {
  if (!(h > 0.0)) throw DomainError("bandwidth h must be > 0");
  const double C = weighted_exponential_energy(model, rho, alpha, r).value;
  const auto g = [&](double t) {
    if (t <= 0.0) return r == 0 ? cf_sq(model, 0.0) : 0.0;
    const double s = cf_sq(model, t);
    if (s <= 0.0) return 0.0;
    return std::exp(2.0 * r * std::log(t) + rho * std::pow(t, alpha) + std::log(s));
  };
  const double end = std::min(1.0 / h, model.support_end());
  const double period = model.oscillation_period();
  const double piece = period > 0.0 ? period : 2.0 * model.scale_hint();
  const double head = quad::integrate_pieces(g, 0.0, end, piece).value / kPi;
  return std::max(0.0, 1.0 - head / C);
}

BoundReport bound_smooth_exact(const CharModel& model, int r, int m, long n, std::optional<double> h) {
  const double R = roughness(model, r + m).value;
  BoundReport out = bound_smooth(r, m, R, n, h);
  const double eps = smooth_epsilon(model, r, m, out.h_used);
  out.epsilon = eps;
  out.bound = eps * std::pow(out.h_used, 2.0 * m) * R + smooth_variance(r, n, out.h_used);
  return out;
}

BoundReport bound_exponential_exact(const CharModel& model, int r, double rho, double alpha, long n,
                                    std::optional<double> h) {
  const double C = weighted_exponential_energy(model, rho, alpha, r).value;
  BoundReport out = bound_exponential(r, C, rho, alpha, n, h);
  const double eps = exponential_epsilon(model, r, rho, alpha, out.h_used);
  out.epsilon = eps;
  out.bound = eps * exp_bias(C, rho, alpha, out.h_used) +
              1.0 / (kPi * static_cast<double>(n) * std::pow(out.h_used, 2.0 * r + 1.0));
  return out;
}

}  // namespace sincde
