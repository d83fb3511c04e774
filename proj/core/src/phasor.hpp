#pragma once

#include <complex>

namespace sincde::detail {

// p *= r for unit phasors. std::complex's operator*= goes through the
// Annex G inf/nan handling, which is several times slower in these loops.
inline void rotate(std::complex<double>& p, const std::complex<double>& r) noexcept {
  const double re = p.real() * r.real() - p.imag() * r.imag();
  const double im = p.real() * r.imag() + p.imag() * r.real();
  p = {re, im};
}

}  // namespace sincde::detail
