#include "sincde/charfn.hpp"

#include "sincde/error.hpp"
#include "sincde/quadrature.hpp"

#include <boost/math/special_functions/beta.hpp>
#include <boost/math/special_functions/binomial.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <sstream>

namespace sincde {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kPi = std::numbers::pi;

template <class... Ts>
struct Overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

void require(bool ok, const char* what) {
  if (!ok) throw DomainError(what);
}

double sinc(double t) {
  if (std::abs(t) < 1e-8) return 1.0 - t * t / 6.0;
  return std::sin(t) / t;
}

// sin(t)/t - 1 without cancellation.
double sinc_minus_one(double t) {
  if (std::abs(t) >= 0.5) return std::sin(t) / t - 1.0;
  const double t2 = t * t;
  double term = 1.0;
  double sum = 0.0;
  for (int j = 1; j <= 10; ++j) {
    term *= -t2 / ((2.0 * j) * (2.0 * j + 1.0));
    sum += term;
  }
  return sum;
}

int band_power(BandShape shape) { return shape == BandShape::triangle ? 1 : 2; }

double power_tail_head(const PowerTailModel& p) {
  return std::min(1.0, p.a / std::pow(p.c, p.m));
}

SpectralFunctional closed(double v) { return {v, 0.0, Method::closed_form}; }

SpectralFunctional from_quad(const quad::Result& q) {
  return {q.value, q.abs_error, Method::quadrature};
}

// Difference F(hi) - F(lo) of a regularized incomplete gamma, arranged to
// avoid cancellation when both arguments sit deep in the upper tail.
double gamma_mass(double a, double x_lo, double x_hi) {
  if (x_lo >= 1.0 || std::isinf(x_hi)) {
    const double q_lo = boost::math::gamma_q(a, x_lo);
    const double q_hi = std::isinf(x_hi) ? 0.0 : boost::math::gamma_q(a, x_hi);
    return q_lo - q_hi;
  }
  return boost::math::gamma_p(a, x_hi) - boost::math::gamma_p(a, x_lo);
}

void check_moment_convergence(const CharModel& model, int r, double hi) {
  if (!std::isinf(hi)) return;
  if (const auto* u = model.as<UniformPowerModel>()) {
    if (2 * r >= 2 * u->k - 1) {
      std::ostringstream os;
      os << "integral of t^" << 2 * r << " |phi|^2 diverges: uniform-power(k=" << u->k
         << ") decays like t^-" << 2 * u->k << ", need 2r < 2k - 1";
      throw InfeasibleError(os.str());
    }
  } else if (const auto* p = model.as<PowerTailModel>()) {
    if (2.0 * r + 1.0 >= p->m) {
      std::ostringstream os;
      os << "integral of t^" << 2 * r << " |phi|^2 diverges: power-tail exponent m=" << p->m
         << " requires 2r + 1 < m";
      throw InfeasibleError(os.str());
    }
  }
}

SpectralFunctional moment_closed_form(const CharModel& model, int r, double lo, double hi) {
  const double e = 2.0 * r + 1.0;
  return std::visit(
      Overloaded{
          [&](const NormalModel& m) {
            const double s2 = m.sigma * m.sigma;
            if (r == 0) {
              // (1/pi) * (sqrt(pi) / (2 sigma)) * (erf(sigma hi) - erf(sigma lo))
              const double x_lo = m.sigma * lo;
              const double x_hi = m.sigma * hi;
              const double mass = (x_lo >= 1.0 || std::isinf(hi))
                                      ? std::erfc(x_lo) - (std::isinf(hi) ? 0.0 : std::erfc(x_hi))
                                      : std::erf(x_hi) - std::erf(x_lo);
              return closed(mass / (2.0 * m.sigma * std::sqrt(kPi)));
            }
            const double a = r + 0.5;
            const double mass = gamma_mass(a, s2 * lo * lo, std::isinf(hi) ? kInf : s2 * hi * hi);
            return closed(std::tgamma(a) / (2.0 * std::pow(m.sigma, e)) * mass / kPi);
          },
          [&](const CauchyModel& m) {
            const double k = 2.0 * m.scale;
            const double a = e;
            const double mass = gamma_mass(a, k * lo, std::isinf(hi) ? kInf : k * hi);
            return closed(std::tgamma(a) / std::pow(k, e) * mass / kPi);
          },
          [&](const PowerTailModel& m) {
            double v = 0.0;
            const double head_hi = std::min(hi, m.c);
            if (lo < head_hi) {
              v += power_tail_head(m) * (std::pow(head_hi, e) - std::pow(lo, e)) / e;
            }
            const double tail_lo = std::max(lo, m.c);
            if (tail_lo < hi) {
              const double ex = e - m.m;  // < 0 when hi is infinite (checked earlier)
              const double upper = std::isinf(hi) ? 0.0 : std::pow(hi, ex);
              v += m.a * (upper - std::pow(tail_lo, ex)) / ex;
            }
            return closed(v / kPi);
          },
          [&](const BandLimitedModel& m) {
            const double q = 2.0 * band_power(m.shape);
            const double x_lo = std::min(lo / m.T, 1.0);
            const double x_hi = std::min(hi / m.T, 1.0);
            if (x_hi <= x_lo) return closed(0.0);
            const double a = e;
            const double b = q + 1.0;
            const double mass = (x_lo > 0.5) ? boost::math::ibetac(a, b, x_lo) -
                                                   boost::math::ibetac(a, b, x_hi)
                                             : boost::math::ibeta(a, b, x_hi) -
                                                   boost::math::ibeta(a, b, x_lo);
            return closed(std::pow(m.T, e) * boost::math::beta(a, b) * mass / kPi);
          },
          [&](const UniformPowerModel&) -> SpectralFunctional {
            throw UnsupportedError("no closed form for uniform-power moments");
          },
      },
      model.kind());
}

// (1/pi) int_lo^inf sin^2k(t) t^-p dt with p = 2k - 2r > 1. Whole periods are
// integrated up to B = N pi; beyond B, sin^2k t = A0 + sum_j A_j cos(2 j t) and
// each cosine term integrates by parts to p B^(-p-1) / (4 j^2) + O(B^(-p-3)),
// the sine boundary terms vanishing at multiples of pi.
quad::Result uniform_power_to_infinity(int k, int r, double lo) {
  const double p = 2.0 * (k - r);
  const auto integrand = [k, p](double t) { return std::pow(std::sin(t), 2 * k) * std::pow(t, -p) / kPi; };
  const double b0 = std::max(64.0 * kPi, std::pow(p * p * p / 1e-15, 1.0 / (p + 3.0)));
  const double b = kPi * std::ceil(std::max(lo, b0) / kPi);
  quad::Result acc;
  if (lo < kPi) {
    // Near zero the factored form loses accuracy; use the sinc form.
    const auto near = [k, r](double t) {
      return (r == 0 ? 1.0 : std::pow(t, 2 * r)) * std::pow(sinc(t), 2 * k) / kPi;
    };
    acc += quad::integrate(near, lo, kPi);
    acc += quad::integrate_pieces(integrand, kPi, b, kPi);
  } else {
    acc += quad::integrate_pieces(integrand, lo, b, kPi);
  }
  const double scale = std::pow(4.0, -k);
  double tail = scale * boost::math::binomial_coefficient<double>(2 * k, k) * std::pow(b, 1.0 - p) / (p - 1.0);
  for (int j = 1; j <= k; ++j) {
    const double a_j = 2.0 * scale * ((j % 2) ? -1.0 : 1.0) * boost::math::binomial_coefficient<double>(2 * k, k - j);
    tail += a_j * p * std::pow(b, -p - 1.0) / (4.0 * j * j);
  }
  acc.value += tail / kPi;
  acc.abs_error += p * p * p * std::pow(b, -p - 3.0);
  return acc;
}

SpectralFunctional moment_quadrature(const CharModel& model, int r, double lo, double hi) {
  const auto integrand = [&model, r](double t) {
    const double w = r == 0 ? 1.0 : std::pow(t, 2 * r);
    return w * cf_sq(model, t) / kPi;
  };
  const double end = model.support_end();
  hi = std::min(hi, end);
  if (!(hi > lo)) return {0.0, 0.0, Method::quadrature};

  const double period = model.oscillation_period();
  const double piece = period > 0.0 ? period : 2.0 * model.scale_hint();

  // Break at the kink of the power-tail model.
  quad::Result acc;
  double start = lo;
  if (const auto* p = model.as<PowerTailModel>(); p && lo < p->c && hi > p->c) {
    acc += quad::integrate(integrand, lo, p->c);
    start = p->c;
  }
  if (std::isinf(hi) && model.as<UniformPowerModel>()) {
    acc += uniform_power_to_infinity(model.as<UniformPowerModel>()->k, r, start);
  } else if (std::isinf(hi)) {
    const int chunks = model.as<PowerTailModel>() ? 0 : (period > 0.0 ? 64 : 16);
    acc += quad::integrate_to_infinity(integrand, start, piece, chunks);
  } else {
    acc += quad::integrate_pieces(integrand, start, hi, piece);
  }
  return from_quad(acc);
}

}  // namespace

CharModel CharModel::normal(double sigma) {
  require(std::isfinite(sigma) && sigma > 0.0, "normal model requires sigma > 0");
  return CharModel(NormalModel{sigma});
}

CharModel CharModel::cauchy(double scale) {
  require(std::isfinite(scale) && scale > 0.0, "cauchy model requires scale > 0");
  return CharModel(CauchyModel{scale});
}

CharModel CharModel::uniform_power(int k) {
  require(k >= 1, "uniform-power model requires k >= 1");
  return CharModel(UniformPowerModel{k});
}

CharModel CharModel::power_tail(double a, double c, double m) {
  require(std::isfinite(a) && a > 0.0, "power-tail model requires a > 0");
  require(std::isfinite(c) && c > 0.0, "power-tail model requires c > 0");
  require(std::isfinite(m) && m > 3.0, "power-tail model requires m > 3");
  require(a <= std::pow(c, m) * (1.0 + 1e-12), "power-tail model requires a <= c^m so that |phi|^2 <= 1");
  return CharModel(PowerTailModel{a, c, m});
}

CharModel CharModel::band_limited(double T, BandShape shape) {
  require(std::isfinite(T) && T > 0.0, "band-limited model requires T > 0");
  return CharModel(BandLimitedModel{T, shape});
}

std::string CharModel::describe() const {
  std::ostringstream os;
  std::visit(Overloaded{
                 [&](const NormalModel& m) { os << "normal(sigma=" << m.sigma << ")"; },
                 [&](const CauchyModel& m) { os << "cauchy(scale=" << m.scale << ")"; },
                 [&](const UniformPowerModel& m) { os << "uniform-power(k=" << m.k << ")"; },
                 [&](const PowerTailModel& m) {
                   os << "power-tail(a=" << m.a << ", c=" << m.c << ", m=" << m.m
                      << "; head=constant-continuation)";
                 },
                 [&](const BandLimitedModel& m) {
                   os << "band-limited(T=" << m.T << ", shape="
                      << (m.shape == BandShape::triangle ? "triangle" : "triangle-squared") << ")";
                 },
             },
             kind_);
  return os.str();
}

double CharModel::scale_hint() const noexcept {
  return std::visit(Overloaded{
                        [](const NormalModel& m) { return 1.0 / m.sigma; },
                        [](const CauchyModel& m) { return 0.5 / m.scale; },
                        [](const UniformPowerModel&) { return kPi; },
                        [](const PowerTailModel& m) { return m.c; },
                        [](const BandLimitedModel& m) { return 0.25 * m.T; },
                    },
                    kind_);
}

double CharModel::oscillation_period() const noexcept {
  return as<UniformPowerModel>() ? kPi : 0.0;
}

double CharModel::support_end() const noexcept {
  if (const auto* b = as<BandLimitedModel>()) return b->T;
  return kInf;
}

double cf_sq(const CharModel& model, double t) {
  t = std::abs(t);
  return std::visit(Overloaded{
                        [t](const NormalModel& m) { return std::exp(-m.sigma * m.sigma * t * t); },
                        [t](const CauchyModel& m) { return std::exp(-2.0 * m.scale * t); },
                        [t](const UniformPowerModel& m) { return std::pow(sinc(t), 2 * m.k); },
                        [t](const PowerTailModel& m) {
                          return t <= m.c ? power_tail_head(m) : m.a / std::pow(t, m.m);
                        },
                        [t](const BandLimitedModel& m) {
                          if (t >= m.T) return 0.0;
                          return std::pow(1.0 - t / m.T, 2 * band_power(m.shape));
                        },
                    },
                    model.kind());
}

double cf_sq_complement(const CharModel& model, double t) {
  t = std::abs(t);
  return std::visit(Overloaded{
                        [t](const NormalModel& m) { return -std::expm1(-m.sigma * m.sigma * t * t); },
                        [t](const CauchyModel& m) { return -std::expm1(-2.0 * m.scale * t); },
                        [t](const UniformPowerModel& m) {
                          if (t >= 1.0) return 1.0 - std::pow(sinc(t), 2 * m.k);
                          return -std::expm1(2.0 * m.k * std::log1p(sinc_minus_one(t)));
                        },
                        [&model, t](const PowerTailModel&) { return 1.0 - cf_sq(model, t); },
                        [t](const BandLimitedModel& m) {
                          if (t >= m.T) return 1.0;
                          return -std::expm1(2.0 * band_power(m.shape) * std::log1p(-t / m.T));
                        },
                    },
                    model.kind());
}

double cf_modulus(const CharModel& model, double t) {
  if (model.as<PowerTailModel>()) return std::sqrt(cf_sq(model, t));
  return std::abs(cf_value(model, t));
}

bool has_real_cf(const CharModel& model) noexcept { return !model.as<PowerTailModel>(); }

double cf_value(const CharModel& model, double t) {
  const double a = std::abs(t);
  return std::visit(
      Overloaded{
          [a](const NormalModel& m) { return std::exp(-0.5 * m.sigma * m.sigma * a * a); },
          [a](const CauchyModel& m) { return std::exp(-m.scale * a); },
          [a](const UniformPowerModel& m) { return std::pow(sinc(a), m.k); },
          [](const PowerTailModel&) -> double {
            throw UnsupportedError("power-tail model fixes only |phi|^2, not phi");
          },
          [a](const BandLimitedModel& m) {
            if (a >= m.T) return 0.0;
            return std::pow(1.0 - a / m.T, band_power(m.shape));
          },
      },
      model.kind());
}

SpectralFunctional spectral_moment(const CharModel& model, int r, double lo, double hi, Path path) {
  if (r < 0) throw DomainError("moment order r must be >= 0");
  if (!(lo >= 0.0) || !(hi >= lo)) throw DomainError("spectral moment needs 0 <= lo <= hi");
  check_moment_convergence(model, r, hi);
  if (hi == lo) return closed(0.0);
  if (path == Path::automatic && !model.as<UniformPowerModel>()) {
    return moment_closed_form(model, r, lo, hi);
  }
  return moment_quadrature(model, r, lo, hi);
}

SpectralFunctional tail_energy(const CharModel& model, double delta, Path path) {
  if (!(delta > 0.0)) throw DomainError("tail_energy requires delta > 0");
  return spectral_moment(model, 0, delta, kInf, path);
}

SpectralFunctional head_energy(const CharModel& model, double delta, Path path) {
  if (!(delta > 0.0)) throw DomainError("head_energy requires delta > 0");
  return spectral_moment(model, 0, 0.0, delta, path);
}

SpectralFunctional roughness(const CharModel& model, int m, Path path) {
  if (m < 0) throw DomainError("roughness order must be >= 0");
  return spectral_moment(model, m, 0.0, kInf, path);
}

SpectralFunctional weighted_exponential_energy(const CharModel& model, double rho, double alpha,
                                               int r, Path path) {
  if (!(rho > 0.0)) throw DomainError("weighted_exponential_energy requires rho > 0");
  if (!(alpha > 0.0 && alpha <= 2.0)) throw DomainError("weighted_exponential_energy requires alpha in (0, 2]");
  if (r < 0) throw DomainError("weighted_exponential_energy requires r >= 0");

  const auto diverges = [&](const std::string& why) {
    throw InfeasibleError("weighted exponential energy diverges: " + why);
  };
  const double e = 2.0 * r + 1.0;

  // log |phi|^2 for models whose tail is exponential; used to keep the
  // integrand finite where exp(rho t^alpha) alone would overflow.
  std::function<double(double)> log_cf_sq;

  if (const auto* m = model.as<NormalModel>()) {
    const double s2 = m->sigma * m->sigma;
    if (alpha == 2.0) {
      if (rho >= s2) diverges("normal model needs rho < sigma^2 when alpha = 2");
      if (path == Path::automatic) {
        return closed(std::tgamma(r + 0.5) / (2.0 * std::pow(s2 - rho, r + 0.5)) / kPi);
      }
    }
    log_cf_sq = [s2](double t) { return -s2 * t * t; };
  } else if (const auto* c = model.as<CauchyModel>()) {
    const double k = 2.0 * c->scale;
    if (alpha > 1.0) diverges("cauchy model needs alpha <= 1");
    if (alpha == 1.0) {
      if (rho >= k) diverges("cauchy model needs rho < 2 * scale when alpha = 1");
      if (path == Path::automatic) {
        return closed(std::tgamma(e) / std::pow(k - rho, e) / kPi);
      }
    }
    log_cf_sq = [k](double t) { return -k * t; };
  } else if (model.as<UniformPowerModel>() || model.as<PowerTailModel>()) {
    diverges("|phi|^2 decays only polynomially, exp(rho |t|^alpha) wins");
  }

  const auto integrand = [&](double t) {
    const double w = r == 0 ? 1.0 : std::pow(t, 2 * r);
    if (log_cf_sq) return w * std::exp(rho * std::pow(t, alpha) + log_cf_sq(t)) / kPi;
    return w * std::exp(rho * std::pow(t, alpha)) * cf_sq(model, t) / kPi;
  };

  quad::Result q;
  const double end = model.support_end();
  if (std::isfinite(end)) {
    q = quad::integrate(integrand, 0.0, end);
  } else {
    // Put the chunked region around the bulk of the integrand.
    double reach = 16.0 * model.scale_hint();
    if (const auto* m = model.as<NormalModel>()) {
      const double s2 = m->sigma * m->sigma;
      // exp(rho t^alpha - s2 t^2) is negligible once s2 t^2 > 2 rho t^alpha + 80.
      double t = 1.0 / m->sigma;
      while (s2 * t * t < 2.0 * rho * std::pow(t, alpha) + 80.0) t *= 1.5;
      reach = t;
    } else if (const auto* c = model.as<CauchyModel>()) {
      const double k = 2.0 * c->scale;
      double t = 1.0 / k;
      while (k * t < 2.0 * rho * std::pow(t, alpha) + 80.0) t *= 1.5;
      reach = t;
    }
    q = quad::integrate_to_infinity(integrand, 0.0, reach / 32.0, 32);
  }
  return from_quad(q);
}

}  // namespace sincde
