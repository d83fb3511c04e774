#include "sincde/mise.hpp"

#include "sincde/ecf.hpp"
#include "sincde/error.hpp"
#include "sincde/estimator.hpp"
#include "sincde/golden.hpp"
#include "sincde/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>

namespace sincde {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kInf = std::numeric_limits<double>::infinity();

void check_n_h(long n, double h) {
  if (n < 1) throw DomainError("sample size n must be >= 1");
  if (!(h > 0.0) || !std::isfinite(h)) throw DomainError("bandwidth h must be > 0");
}

MiseBreakdown make(double bias, double var, double h, long n, int r) {
  return {bias, var, bias + var, h, n, r};
}

// Phi(x) for the standard normal.
double std_normal_cdf(double x) { return 0.5 * std::erfc(-x / std::numbers::sqrt2); }

// Displayed closed forms for the standard normal and standard Cauchy targets;
// other scales follow from MISE_s(h) = MISE_1(h / s) / s.
MiseBreakdown sinc_normal_closed_form(double sigma, long n, double h) {
  const double hu = h / sigma;
  const double nd = static_cast<double>(n);
  const double sqrt_pi = std::sqrt(kPi);
  const double upper = 0.5 * std::erfc(1.0 / hu);  // 1 - Phi(sqrt(2)/h)
  const double bias = upper / sqrt_pi;
  const double var = (1.0 / (hu * sqrt_pi) + 0.5 - std_normal_cdf(std::numbers::sqrt2 / hu)) / (nd * sqrt_pi);
  return make(bias / sigma, var / sigma, h, n, 0);
}

MiseBreakdown sinc_cauchy_closed_form(double scale, long n, double h) {
  const double hu = h / scale;
  const double nd = static_cast<double>(n);
  const double e = std::exp(-2.0 / hu);
  const double bias = 0.5 * e / kPi;
  const double var = (1.0 / hu - 0.5 * (1.0 - e)) / (kPi * nd);
  return make(bias / scale, var / scale, h, n, 0);
}

// Integral over [0, end) of g, split at the given breakpoints.
template <class G>
quad::Result integrate_half_line(const G& g, std::vector<double> breaks, double end, double piece,
                                 int chunks) {
  std::sort(breaks.begin(), breaks.end());
  quad::Result acc;
  double lo = 0.0;
  for (double b : breaks) {
    if (!(b > lo) || !(b < end)) continue;
    acc += quad::integrate_pieces(g, lo, b, piece);
    lo = b;
  }
  if (std::isinf(end)) {
    acc += quad::integrate_to_infinity(g, lo, piece, chunks);
  } else if (end > lo) {
    acc += quad::integrate_pieces(g, lo, end, piece);
  }
  return acc;
}

// A 61-point rule resolves a few periods per piece; the adaptive split handles the rest.
double quad_piece(const CharModel& model) {
  const double period = model.oscillation_period();
  return period > 0.0 ? 4.0 * period : 2.0 * model.scale_hint();
}

int quad_chunks(const CharModel& model) { return model.oscillation_period() > 0.0 ? 64 : 16; }

std::vector<double> model_breaks(const CharModel& model) {
  std::vector<double> b;
  if (const auto* p = model.as<PowerTailModel>()) b.push_back(p->c);
  if (std::isfinite(model.support_end())) b.push_back(model.support_end());
  return b;
}

}  // namespace

// ---------------------------------------------------------------- kernels

KernelSpectrum KernelSpectrum::trapezoid(double delta) {
  if (!(delta > 0.0 && delta < 1.0)) throw DomainError("trapezoid superkernel requires delta in (0, 1)");
  return KernelSpectrum(KernelKind::trapezoid, delta);
}

double KernelSpectrum::psi(double t) const noexcept {
  t = std::abs(t);
  switch (kind_) {
    case KernelKind::sinc: return t <= 1.0 ? 1.0 : 0.0;
    case KernelKind::normal: return std::exp(-0.5 * t * t);
    case KernelKind::cauchy: return std::exp(-t);
    case KernelKind::trapezoid:
      if (t <= delta_) return 1.0;
      if (t <= 2.0 * delta_) return 2.0 - t / delta_;
      return 0.0;
  }
  return 0.0;
}

std::vector<double> KernelSpectrum::breakpoints() const {
  switch (kind_) {
    case KernelKind::sinc: return {1.0};
    case KernelKind::trapezoid: return {delta_, 2.0 * delta_};
    default: return {};
  }
}

std::string KernelSpectrum::describe() const {
  switch (kind_) {
    case KernelKind::sinc: return "sinc";
    case KernelKind::normal: return "normal";
    case KernelKind::cauchy: return "cauchy";
    case KernelKind::trapezoid: {
      std::ostringstream os;
      os << "trapezoid(delta=" << delta_ << ")";
      return os.str();
    }
  }
  return "?";
}

// ---------------------------------------------------------------- sinc MISE

MiseBreakdown sinc_mise(const CharModel& model, long n, double h, int r, Path path) {
  check_n_h(n, h);
  if (r < 0) throw DomainError("derivative order r must be >= 0");
  if (path == Path::automatic && r == 0) {
    if (const auto* m = model.as<NormalModel>()) return sinc_normal_closed_form(m->sigma, n, h);
    if (const auto* m = model.as<CauchyModel>()) return sinc_cauchy_closed_form(m->scale, n, h);
  }
  const double cutoff = 1.0 / h;
  const double bias = spectral_moment(model, r, cutoff, kInf, path).value;
  const double head = spectral_moment(model, r, 0.0, cutoff, path).value;
  const double e = 2.0 * r + 1.0;
  const double var = (std::pow(cutoff, e) / (e * kPi) - head) / static_cast<double>(n);
  return make(bias, var, h, n, r);
}

double sinc_mise_via_roughness(const CharModel& model, long n, double h, Path path) {
  check_n_h(n, h);
  const double nd = static_cast<double>(n);
  const double rf = roughness(model, 0, path).value;
  const double head = head_energy(model, 1.0 / h, path).value;
  return 1.0 / (kPi * nd * h) + rf - (1.0 + 1.0 / nd) * head;
}

// ---------------------------------------------------------------- conventional kernels

MiseBreakdown conventional_mise(const KernelSpectrum& kernel, const CharModel& model, long n, double h,
                                Path path) {
  check_n_h(n, h);
  const double nd = static_cast<double>(n);
  if (path == Path::automatic) {
    if (const auto* m = model.as<NormalModel>(); m && kernel.kind() == KernelKind::normal) {
      const double s2 = m->sigma * m->sigma;
      const double c = 1.0 / (2.0 * std::sqrt(kPi));
      const double bias = c * (1.0 / m->sigma - 2.0 / std::sqrt(s2 + 0.5 * h * h) + 1.0 / std::sqrt(s2 + h * h));
      const double var = c * (1.0 / h - 1.0 / std::sqrt(s2 + h * h)) / nd;
      return make(bias, var, h, n, 0);
    }
    if (const auto* m = model.as<CauchyModel>(); m && kernel.kind() == KernelKind::cauchy) {
      const double s = m->scale;
      const double bias = (0.5 / s - 2.0 / (2.0 * s + h) + 1.0 / (2.0 * s + 2.0 * h)) / kPi;
      const double var = (0.5 / h - 1.0 / (2.0 * s + 2.0 * h)) / (kPi * nd);
      return make(bias, var, h, n, 0);
    }
  }

  std::vector<double> breaks = model_breaks(model);
  for (double b : kernel.breakpoints()) breaks.push_back(b / h);
  const double piece = quad_piece(model);
  const int chunks = quad_chunks(model);

  const auto bias_integrand = [&](double t) {
    const double one_minus = 1.0 - kernel.psi(h * t);
    return cf_sq(model, t) * one_minus * one_minus / kPi;
  };
  const auto var_integrand = [&](double t) {
    const double p = kernel.psi(h * t);
    return cf_sq_complement(model, t) * p * p / kPi;
  };

  // Smooth kernels are cut where psi(ht) < 1e-18: beyond it the bias integrand
  // is |phi|^2 to double precision and the variance integrand vanishes.
  double kernel_end = 1.0 / h;
  if (kernel.kind() == KernelKind::trapezoid) kernel_end = 2.0 * kernel.delta() / h;
  if (kernel.kind() == KernelKind::normal) kernel_end = 9.1 / h;
  if (kernel.kind() == KernelKind::cauchy) kernel_end = 41.5 / h;

  // The bias integrand is |phi|^2 alone beyond the cut; use the spectral tail
  // there so slowly decaying models keep full accuracy.
  double bias =
      integrate_half_line(bias_integrand, breaks, std::min(kernel_end, model.support_end()), piece, chunks).value;
  if (kernel_end < model.support_end()) bias += spectral_moment(model, 0, kernel_end, kInf, path).value;
  const double var = integrate_half_line(var_integrand, breaks, kernel_end, piece, chunks).value / nd;
  return make(bias, var, h, n, 0);
}

// ---------------------------------------------------------------- superkernel comparison

SuperkernelComparison superkernel_comparison(double m, double delta, double h, long n, double c) {
  check_n_h(n, h);
  if (!(m >= 4.0)) throw DomainError("superkernel comparison requires m >= 4");
  if (!(delta > 0.0 && delta < 1.0)) throw DomainError("superkernel comparison requires delta in (0, 1)");
  if (!(c > 0.0)) throw DomainError("superkernel comparison requires c > 0");
  if (!(h < delta / c)) {
    std::ostringstream os;
    os << "closed forms hold only for h < delta / c = " << delta / c << " (got h = " << h << ")";
    throw OutOfValidityError(os.str());
  }
  const CharModel model = CharModel::power_tail(1.0, c, m);
  const double nd = static_cast<double>(n);
  const double hm = std::pow(h, m - 1.0);
  const double ratio = std::pow(h / delta, m - 1.0);
  const double p1 = std::pow(2.0, m - 1.0);
  const double p2 = std::pow(2.0, m - 2.0);
  const double p3 = std::pow(2.0, m - 3.0);

  const double sinc_bias = hm / (kPi * (m - 1.0));
  const double trap_bracket = 1.0 / (m - 1.0) - 2.0 * (p2 - 1.0) / ((m - 2.0) * p2) + (p3 - 1.0) / ((m - 3.0) * p3);
  const double trap_bias = ratio * trap_bracket / kPi;

  // int_0^{delta/h} |phi|^2, shared by both variances.
  const double head = kPi * head_energy(model, delta / h).value;
  const double sinc_var =
      (1.0 / h - head - ratio * (1.0 - std::pow(delta, m - 1.0)) / (m - 1.0)) / (kPi * nd);
  const double var_bracket =
      4.0 * (p1 - 1.0) / ((m - 1.0) * p1) - 4.0 * (p2 - 1.0) / ((m - 2.0) * p2) + (p3 - 1.0) / ((m - 3.0) * p3);
  const double trap_var = (4.0 * delta / (3.0 * h) - head - ratio * var_bracket) / (kPi * nd);

  const double gap =
      ((4.0 * delta / 3.0 - 1.0) / h + ratio * ((1.0 - std::pow(delta, m - 1.0)) / (m - 1.0) - var_bracket)) /
      (kPi * nd);
  return {make(sinc_bias, sinc_var, h, n, 0), make(trap_bias, trap_var, h, n, 0), gap};
}

// ---------------------------------------------------------------- optimal h

OptimalBandwidth minimize_mise_over_h(const MiseEvaluator& evaluator, double h_lo, double h_hi) {
  if (!(h_lo > 0.0) || !(h_hi > h_lo)) throw DomainError("h search requires 0 < h_lo < h_hi");
  constexpr int kScan = 2000;
  const double log_lo = std::log(h_lo);
  const double log_step = (std::log(h_hi) - log_lo) / (kScan - 1);
  const auto h_at = [&](int i) {
    if (i == 0) return h_lo;
    if (i == kScan - 1) return h_hi;
    return std::exp(log_lo + log_step * i);
  };

  int best = 0;
  MiseBreakdown best_val = evaluator(h_lo);
  for (int i = 1; i < kScan; ++i) {
    const MiseBreakdown v = evaluator(h_at(i));
    if (v.total < best_val.total) {
      best_val = v;
      best = i;
    }
  }
  const double a = h_at(std::max(0, best - 1));
  const double b = h_at(std::min(kScan - 1, best + 1));
  const auto [h_ref, total_ref] =
      golden_section_minimize([&](double h) { return evaluator(h).total; }, a, b, 1e-10 * h_at(best));
  if (total_ref < best_val.total) return {h_ref, evaluator(h_ref)};
  return {h_at(best), best_val};
}

OptimalBandwidth minimize_mise_on_h_grid(const MiseEvaluator& evaluator, double h_lo, double h_hi,
                                         double step) {
  if (!(step > 0.0) || !(h_hi >= h_lo) || !(h_lo > 0.0)) throw DomainError("invalid h grid");
  const auto k_lo = static_cast<long>(std::ceil(h_lo / step - 1e-9));
  const auto k_hi = static_cast<long>(std::floor(h_hi / step + 1e-9));
  if (k_hi < k_lo) throw DomainError("h grid is empty");
  OptimalBandwidth best{static_cast<double>(k_lo) * step, evaluator(static_cast<double>(k_lo) * step)};
  for (long k = k_lo + 1; k <= k_hi; ++k) {
    const double h = static_cast<double>(k) * step;
    const MiseBreakdown v = evaluator(h);
    if (v.total < best.value.total) best = {h, v};
  }
  return best;
}

MiseTableRow mise_table_row(TableFamily family, long n, HSearch search) {
  const bool normal = family == TableFamily::normal;
  const CharModel model = normal ? CharModel::normal(1.0) : CharModel::cauchy(1.0);
  const KernelSpectrum kernel = normal ? KernelSpectrum::normal() : KernelSpectrum::cauchy();
  const MiseEvaluator sinc = [&](double h) { return sinc_mise(model, n, h); };
  const MiseEvaluator conv = [&](double h) { return conventional_mise(kernel, model, n, h); };

  MiseTableRow row;
  row.n = n;
  if (search == HSearch::grid) {
    row.sinc = minimize_mise_on_h_grid(sinc, 0.01, 10.0, 0.01);
    row.conventional = minimize_mise_on_h_grid(conv, 0.01, 10.0, 0.01);
  } else {
    row.sinc = minimize_mise_over_h(sinc, 1e-3, 10.0);
    row.conventional = minimize_mise_over_h(conv, 1e-3, 10.0);
  }
  row.ratio = row.sinc.value.total / row.conventional.value.total;
  return row;
}

// ---------------------------------------------------------------- Monte Carlo

namespace {

std::mt19937_64 stream_engine(std::uint64_t seed, std::uint64_t stream) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(stream), static_cast<std::uint32_t>(stream >> 32)};
  return std::mt19937_64(seq);
}

std::vector<double> draw_values(const CharModel& model, long n, std::mt19937_64& eng) {
  std::vector<double> x(static_cast<std::size_t>(n));
  if (const auto* m = model.as<NormalModel>()) {
    std::normal_distribution<double> d(0.0, m->sigma);
    for (double& v : x) v = d(eng);
  } else if (const auto* c = model.as<CauchyModel>()) {
    std::cauchy_distribution<double> d(0.0, c->scale);
    for (double& v : x) v = d(eng);
  } else {
    throw UnsupportedError("sampling is available for normal and cauchy models only: " + model.describe());
  }
  return x;
}

// (1/pi) int_0^cutoff t^(2r) phi(t) cos(t x) dt.
double cross_term(const CharModel& model, double cutoff, int r, double x) {
  if (const auto* c = model.as<CauchyModel>()) {
    // int_0^D t^p e^{-z t} dt = p! / z^(p+1) * (1 - e^{-zD} sum_{k<=p} (zD)^k / k!), z = s - i x
    const int p = 2 * r;
    const std::complex<double> z{c->scale, -x};
    const std::complex<double> w = z * cutoff;
    std::complex<double> lower;
    if (std::abs(w) < 1.0) {
      // series for the lower incomplete gamma: w^(p+1) sum_k (-w)^k / (k! (p+1+k))
      std::complex<double> term{1.0, 0.0};
      std::complex<double> s{0.0, 0.0};
      for (int k = 0; k < 60; ++k) {
        s += term / static_cast<double>(p + 1 + k);
        term *= -w / static_cast<double>(k + 1);
      }
      lower = std::pow(w, p + 1) * s;
    } else {
      std::complex<double> partial{0.0, 0.0};
      std::complex<double> term{1.0, 0.0};
      for (int k = 0; k <= p; ++k) {
        partial += term;
        term *= w / static_cast<double>(k + 1);
      }
      lower = std::tgamma(p + 1.0) * (1.0 - std::exp(-w) * partial);
    }
    return (lower / std::pow(z, p + 1)).real() / kPi;
  }
  const auto g = [&](double t) {
    const double w = r == 0 ? 1.0 : std::pow(t, 2 * r);
    return w * cf_value(model, t) * std::cos(t * x);
  };
  const double piece = std::min(cutoff, std::numbers::pi / std::max(std::abs(x), 1e-300));
  return quad::integrate_pieces(g, 0.0, cutoff, piece).value / kPi;
}

}  // namespace

Sample draw_sample(const CharModel& model, long n, std::uint64_t seed, std::uint64_t stream) {
  if (n < 1) throw DomainError("sample size n must be >= 1");
  auto eng = stream_engine(seed, stream);
  return Sample(draw_values(model, n, eng));
}

double integrated_squared_error(const Sample& sample, const CharModel& model, double h, int r) {
  if (!model.as<NormalModel>() && !model.as<CauchyModel>()) {
    throw UnsupportedError("ISE is available for normal and cauchy models only: " + model.describe());
  }
  if (r < 0 || r > 2) throw UnsupportedError("ISE oracle supports derivative orders 0..2");
  check_n_h(static_cast<long>(sample.size()), h);
  const auto xs = sample.values();
  const auto n = static_cast<double>(xs.size());

  // int (f_n^(r))^2 = (-1)^r n^-2 sum_{j,k} K_h^(2r)(X_j - X_k), because the sinc
  // kernel convolved with itself is itself.
  double pair_sum = 0.0;
  for (std::size_t j = 0; j < xs.size(); ++j) {
    for (std::size_t k = j + 1; k < xs.size(); ++k) pair_sum += sinc_kernel_derivative(h, 2 * r, xs[j] - xs[k]);
  }
  const double diag = sinc_kernel_derivative(h, 2 * r, 0.0);
  const double sign = (r % 2) ? -1.0 : 1.0;
  const double self = sign * (2.0 * pair_sum + n * diag) / (n * n);

  double cross = 0.0;
  for (double x : xs) cross += cross_term(model, 1.0 / h, r, x);
  cross /= n;

  return self - 2.0 * cross + roughness(model, r).value;
}

McIseResult mc_ise_oracle(const CharModel& model, long n, double h, int r, int reps, std::uint64_t seed) {
  if (!model.as<NormalModel>() && !model.as<CauchyModel>()) {
    throw UnsupportedError("Monte Carlo ISE supports normal and cauchy models only: " + model.describe());
  }
  if (r < 0 || r > 2) throw UnsupportedError("Monte Carlo ISE supports derivative orders 0..2");
  if (reps < 1) throw DomainError("reps must be >= 1");
  check_n_h(n, h);

  double sum = 0.0;
  double sum_sq = 0.0;
  for (int k = 0; k < reps; ++k) {
    auto eng = stream_engine(seed, static_cast<std::uint64_t>(k));
    const Sample s(draw_values(model, n, eng));
    const double ise = integrated_squared_error(s, model, h, r);
    sum += ise;
    sum_sq += ise * ise;
  }
  McIseResult out;
  out.reps = reps;
  out.mean_ise = sum / reps;
  if (reps > 1) {
    const double var = std::max(0.0, (sum_sq - reps * out.mean_ise * out.mean_ise) / (reps - 1));
    out.std_error = std::sqrt(var / reps);
  }
  return out;
}

McMean mc_ecf_power(const CharModel& model, long n, double t, int draws, std::uint64_t seed) {
  if (draws < 2) throw DomainError("draws must be >= 2");
  if (n < 1) throw DomainError("sample size n must be >= 1");
  auto eng = stream_engine(seed, 0);
  double sum = 0.0;
  double sum_sq = 0.0;
  for (int k = 0; k < draws; ++k) {
    const Sample s(draw_values(model, n, eng));
    const double p = std::norm(ecf_eval(s, t));
    sum += p;
    sum_sq += p * p;
  }
  const double mean = sum / draws;
  const double var = std::max(0.0, (sum_sq - draws * mean * mean) / (draws - 1));
  return {mean, std::sqrt(var / draws)};
}

}  // namespace sincde
