#pragma once

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <cmath>
#include <limits>

namespace sincde::quad {

struct Result {
  double value = 0.0;
  double abs_error = 0.0;

  Result& operator+=(const Result& other) {
    value += other.value;
    abs_error += other.abs_error;
    return *this;
  }
};

inline Result operator+(Result a, const Result& b) { return a += b; }

// Local tolerances for adaptive Gauss-Kronrod: a subinterval is accepted when
// its error estimate is below kRelTol times its L1 norm or below kAbsTol.
// Every integrand in this library is bounded by 1 per unit length on the
// scales we integrate; the absolute floor stops refinement where the
// integrand has underflowed into subnormals and no relative accuracy exists.
inline constexpr double kRelTol = 1e-13;
inline constexpr double kAbsTol = 1e-17;
inline constexpr unsigned kMaxDepth = 24;

namespace detail {

template <class F>
Result adapt(const F& f, double a, double b, unsigned depth) {
  double err = 0.0;
  double l1 = 0.0;
  const double v = boost::math::quadrature::gauss_kronrod<double, 61>::integrate(f, a, b, 0, 0.0, &err, &l1);
  if (depth == 0 || err <= kRelTol * l1 || err <= kAbsTol || !std::isfinite(err)) return {v, err};
  const double mid = 0.5 * (a + b);
  return adapt(f, a, mid, depth - 1) + adapt(f, mid, b, depth - 1);
}

}  // namespace detail

/// Adaptive 61-point Gauss-Kronrod on a finite interval [a, b].
template <class F>
Result integrate(const F& f, double a, double b) {
  if (!(b > a)) return {};
  return detail::adapt(f, a, b, kMaxDepth);
}

/// Integral over [a, b] split into pieces of width at most `piece`.
/// Used for oscillatory integrands whose natural period is known.
template <class F>
Result integrate_pieces(const F& f, double a, double b, double piece) {
  Result total;
  if (!(b > a)) return total;
  if (!(piece > 0.0) || (b - a) <= piece) return integrate(f, a, b);
  const auto count = static_cast<long>(std::ceil((b - a) / piece));
  const double width = (b - a) / static_cast<double>(count);
  for (long k = 0; k < count; ++k) {
    const double lo = a + width * static_cast<double>(k);
    const double hi = (k + 1 == count) ? b : lo + width;
    total += integrate(f, lo, hi);
  }
  return total;
}

/// Integral of f over [a, inf).
///
/// The range [a, a + chunks * piece] is integrated piecewise; the remainder
/// [b, inf) is mapped onto (0, 1] with t = b / u. Requires a >= 0.
template <class F>
Result integrate_to_infinity(const F& f, double a, double piece, int chunks = 64) {
  Result total;
  double b = a;
  if (chunks > 0) {
    b = a + piece * chunks;
    total += integrate_pieces(f, a, b, piece);
  }
  if (!(b > 0.0)) {
    total += integrate(f, a, piece);
    b = piece;
  }
  const auto mapped = [&f, b](double u) {
    if (u <= 0.0) return 0.0;
    const double t = b / u;
    const double y = f(t) * b / (u * u);
    return std::isfinite(y) ? y : 0.0;
  };
  total += integrate(mapped, 0.0, 1.0);
  return total;
}

}  // namespace sincde::quad
