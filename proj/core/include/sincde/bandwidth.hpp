#pragma once

#include "sincde/charfn.hpp"
#include "sincde/sample.hpp"

#include <optional>
#include <string>
#include <vector>

namespace sincde {

enum class BandwidthRule { normal_rule, ecf_rule, known_cf };

struct BandwidthCandidate {
  double delta = 0.0;
  /// MISE at h = 1/delta minus MISE at the first candidate (exact for the
  /// known-cf rule, plug-in for the ECF rule).
  double mise_offset = 0.0;
};

struct BandwidthSelection {
  double chosen_h = 0.0;
  std::vector<BandwidthCandidate> candidates;
  BandwidthRule rule = BandwidthRule::normal_rule;
  std::string diagnostics;
};

/// Offsets closer than this count as ties; ties go to the smaller delta.
inline constexpr double kOffsetTieTolerance = 1e-12;

/// Every down-crossing of |phi(delta)| through (n+1)^(-1/2), compared by exact
/// sinc MISE. A band-limited model that never crosses yields h = 1/T.
BandwidthSelection solve_opt_bandwidth_known_cf(const CharModel& model, long n);

/// h = sigma_hat / sqrt(ln(n + 1)), sigma_hat with divisor n.
/// Throws DomainError for n < 2 and DegenerateInputError for a constant sample.
BandwidthSelection normal_rule(const Sample& sample);

/// Down-crossings of |phi_n| through (n+1)^(-1/2) on (0, t_max], compared by
/// the plug-in MISE difference
///   (d_i - d_1)/(pi n) - (1 + 1/n)(1/pi) int_{d_1}^{d_i} U(t) dt,
/// where U = (n |phi_n|^2 - 1)/(n - 1) is the unbiased estimate of |phi|^2.
/// Falls back to normal_rule when there is no crossing. t_max defaults to sqrt(n).
BandwidthSelection ecf_rule(const Sample& sample, std::optional<double> t_max = std::nullopt);

std::string to_string(BandwidthRule rule);

}  // namespace sincde
