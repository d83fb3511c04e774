#include "sincde/bandwidth.hpp"

#include "sincde/ecf.hpp"
#include "sincde/error.hpp"
#include "phasor.hpp"
#include "sincde/mise.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <sstream>

namespace sincde {

namespace {

constexpr double kPi = std::numbers::pi;

// Beyond this delta, |phi| stays below `level` for good.
double known_cf_search_end(const CharModel& model, double level) {
  const double log_inv = -std::log(level);
  if (const auto* m = model.as<NormalModel>()) return 1.5 * std::sqrt(2.0 * log_inv) / m->sigma + 1.0 / m->sigma;
  if (const auto* m = model.as<CauchyModel>()) return 1.5 * log_inv / m->scale + 1.0 / m->scale;
  if (const auto* m = model.as<UniformPowerModel>()) {
    // |sin t / t|^k <= t^-k
    return 1.01 * std::pow(level, -1.0 / m->k) + kPi;
  }
  if (const auto* m = model.as<PowerTailModel>()) {
    return 1.01 * std::max(m->c, std::pow(m->a / (level * level), 1.0 / m->m)) + m->c;
  }
  return model.support_end();
}

std::size_t pick_best(const std::vector<BandwidthCandidate>& cands) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < cands.size(); ++i) {
    // Candidates are in increasing delta, so only a strictly better offset wins.
    if (cands[i].mise_offset < cands[best].mise_offset - kOffsetTieTolerance) best = i;
  }
  return best;
}

// int_{t0}^{t} U, U = (n |phi_n|^2 - 1)/(n - 1), by composite Simpson with
// panels a quarter of the crossing-grid step. Adaptive quadrature is no use
// here: beyond the signal U is noise around zero.
class PlugInIntegral {
public:
  PlugInIntegral(const Sample& sample, double t0, double t1, double step)
      : sample_(sample), n_(static_cast<double>(sample.size())), t0_(t0), panel_(step / 4.0) {
    const auto panels = static_cast<std::size_t>(std::ceil((t1 - t0) / panel_)) + 1;
    const std::vector<double> u = power_on_grid(2 * panels + 1, 0.5 * panel_);
    cumulative_.assign(panels + 1, 0.0);
    for (std::size_t k = 0; k < panels; ++k) {
      cumulative_[k + 1] = cumulative_[k] + panel_ / 6.0 * (u[2 * k] + 4.0 * u[2 * k + 1] + u[2 * k + 2]);
    }
  }

  double operator()(double t) const {
    const double x = (t - t0_) / panel_;
    auto k = static_cast<std::size_t>(std::max(0.0, std::floor(x)));
    k = std::min(k, cumulative_.size() - 1);
    const double a = t0_ + panel_ * static_cast<double>(k);
    const double w = t - a;
    if (w <= 0.0) return cumulative_[k];
    return cumulative_[k] + w / 6.0 * (power(a) + 4.0 * power(a + 0.5 * w) + power(t));
  }

private:
  double power(double t) const { return (n_ * std::norm(ecf_eval(sample_, t)) - 1.0) / (n_ - 1.0); }

  // U at t0 + k * spacing, k < count, by phasor rotation.
  std::vector<double> power_on_grid(std::size_t count, double spacing) const {
    constexpr std::size_t kResync = 64;
    const auto xs = sample_.values();
    std::vector<std::complex<double>> phase(xs.size());
    std::vector<std::complex<double>> rot(xs.size());
    for (std::size_t j = 0; j < xs.size(); ++j) rot[j] = std::polar(1.0, spacing * xs[j]);
    std::vector<double> out(count);
    for (std::size_t k = 0; k < count; ++k) {
      if (k % kResync == 0) {
        const double t = t0_ + spacing * static_cast<double>(k);
        for (std::size_t j = 0; j < xs.size(); ++j) phase[j] = std::polar(1.0, t * xs[j]);
      }
      std::complex<double> sum{0.0, 0.0};
      for (std::size_t j = 0; j < xs.size(); ++j) {
        sum += phase[j];
        detail::rotate(phase[j], rot[j]);
      }
      out[k] = (std::norm(sum) / n_ - 1.0) / (n_ - 1.0);
    }
    return out;
  }

  Sample sample_;
  double n_;
  double t0_;
  double panel_;
  std::vector<double> cumulative_;
};

}  // namespace

std::string to_string(BandwidthRule rule) {
  switch (rule) {
    case BandwidthRule::normal_rule: return "normal";
    case BandwidthRule::ecf_rule: return "ecf";
    case BandwidthRule::known_cf: return "known";
  }
  return "?";
}

BandwidthSelection solve_opt_bandwidth_known_cf(const CharModel& model, long n) {
  if (n < 1) throw DomainError("sample size n must be >= 1");
  const double level = 1.0 / std::sqrt(static_cast<double>(n) + 1.0);
  const double end = known_cf_search_end(model, level);

  const double period = model.oscillation_period();
  const double step = period > 0.0 ? period / 64.0 : end / 4000.0;
  std::vector<double> ts;
  std::vector<double> vals;
  const auto count = static_cast<std::size_t>(std::ceil(end / step));
  ts.reserve(count + 1);
  for (std::size_t k = 0; k <= count; ++k) {
    const double t = k == count ? end : static_cast<double>(k) * step;
    ts.push_back(t);
    vals.push_back(cf_modulus(model, t));
  }
  // |phi(0)| = 1 for every density; the power-tail head convention may say otherwise.
  vals[0] = std::max(vals[0], 1.0);

  const auto crossings =
      find_down_crossings([&model](double t) { return cf_modulus(model, t); }, ts, vals, level);

  BandwidthSelection out;
  out.rule = BandwidthRule::known_cf;
  if (crossings.empty()) {
    const auto* band = model.as<BandLimitedModel>();
    if (!band) throw InfeasibleError("|phi| never crosses the level (n+1)^(-1/2) for " + model.describe());
    out.chosen_h = 1.0 / band->T;
    out.diagnostics = "no down-crossing below the band limit; using h = 1/T, where the sinc estimate is unbiased";
    return out;
  }

  const double first = sinc_mise(model, n, 1.0 / crossings.front().delta).total;
  for (const auto& c : crossings) {
    out.candidates.push_back({c.delta, sinc_mise(model, n, 1.0 / c.delta).total - first});
  }
  const std::size_t best = pick_best(out.candidates);
  out.chosen_h = 1.0 / out.candidates[best].delta;
  std::ostringstream os;
  os << crossings.size() << " down-crossing(s) of |phi| at level " << level << "; exact MISE at chosen h = "
     << first + out.candidates[best].mise_offset;
  out.diagnostics = os.str();
  return out;
}

BandwidthSelection normal_rule(const Sample& sample) {
  if (sample.size() < 2) throw DomainError("normal rule needs n >= 2");
  const double sigma = sample.stddev();
  if (!(sigma > 0.0)) throw DegenerateInputError("normal rule needs a sample with positive standard deviation");
  const double n = static_cast<double>(sample.size());
  BandwidthSelection out;
  out.rule = BandwidthRule::normal_rule;
  out.chosen_h = sigma / std::sqrt(std::log(n + 1.0));
  std::ostringstream os;
  os << "sigma_hat = " << sigma
     << "; h = sigma_hat / sqrt(ln(n+1)) solves exp(-sigma^2/(2h^2)) = (n+1)^(-1/2)"
        " (the printed sigma / ln(n+1) does not)";
  out.diagnostics = os.str();
  return out;
}

BandwidthSelection ecf_rule(const Sample& sample, std::optional<double> t_max) {
  if (sample.size() < 2) throw DomainError("ecf rule needs n >= 2");
  const double n = static_cast<double>(sample.size());
  const double level = 1.0 / std::sqrt(n + 1.0);
  const double step = default_ecf_step(sample);
  const double reach = t_max.value_or(default_ecf_t_max(sample));
  if (!(reach > 0.0)) throw DomainError("t_max must be > 0");

  const EcfGrid grid = ecf_modulus_grid(sample, std::max(reach, step), step);
  const auto crossings = find_down_crossings(grid, level);
  if (crossings.empty()) {
    BandwidthSelection out = normal_rule(sample);
    out.rule = BandwidthRule::ecf_rule;
    out.diagnostics = "no down-crossing of |phi_n| on (0, t_max]; fell back to the normal rule: " + out.diagnostics;
    return out;
  }

  const double d1 = crossings.front().delta;
  const PlugInIntegral integral(sample, d1, crossings.back().delta, step);

  BandwidthSelection out;
  out.rule = BandwidthRule::ecf_rule;
  for (const auto& c : crossings) {
    const double offset = (c.delta - d1) / (kPi * n) - (1.0 + 1.0 / n) * integral(c.delta) / kPi;
    out.candidates.push_back({c.delta, offset});
  }
  const std::size_t best = pick_best(out.candidates);
  out.chosen_h = 1.0 / out.candidates[best].delta;
  std::ostringstream os;
  os << crossings.size() << " down-crossing(s) of |phi_n| at level " << level << " on (0, " << reach
     << "]; chose candidate " << best + 1;
  out.diagnostics = os.str();
  return out;
}

}  // namespace sincde
