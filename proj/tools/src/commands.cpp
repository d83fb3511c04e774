#include "commands.hpp"

#include "io.hpp"

#include "sincde/sincde.hpp"

#include <charconv>
#include <cmath>
#include <sstream>

namespace sincde::cli {

namespace {

template <class T>
T parse_number(std::string_view s, std::string_view what) {
  T v{};
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || ptr != s.data() + s.size()) {
    throw UsageError("invalid " + std::string(what) + " '" + std::string(s) + "'");
  }
  return v;
}

void require(bool cond, const std::string& message) {
  if (!cond) throw UsageError(message);
}

bool is_one_of(const std::optional<std::string>& v, std::initializer_list<std::string_view> options) {
  if (!v) return false;
  for (auto o : options) {
    if (*v == o) return true;
  }
  return false;
}

long single_n(const RunConfig& c, std::optional<long> fallback = std::nullopt) {
  if (c.n_list.empty()) {
    if (fallback) return *fallback;
    throw UsageError("--n is required");
  }
  require(c.n_list.size() == 1, "this subcommand takes a single --n");
  return c.n_list.front();
}

int single_m(const RunConfig& c) {
  require(c.m_list.size() == 1, "--m takes exactly one value here");
  const double m = c.m_list.front();
  require(m >= 0.0 && m == std::floor(m), "--m must be a nonnegative integer here");
  return static_cast<int>(m);
}

CharModel family_model(const std::string& family) {
  return family == "cauchy" ? CharModel::cauchy(1.0) : CharModel::normal(1.0);
}

Sample load_input(const RunConfig& c) { return ingest(*c.input_path); }

// Bandwidth from --h, or from --rule (normal by default).
double resolve_h(const RunConfig& c, const Sample& s) {
  if (c.h) return *c.h;
  const BandwidthSelection sel = c.rule && *c.rule == "ecf" ? ecf_rule(s) : normal_rule(s);
  return sel.chosen_h;
}

}  // namespace

GridSpec parse_grid(std::string_view text) {
  const auto a = text.find(':');
  const auto b = a == std::string_view::npos ? a : text.find(':', a + 1);
  if (b == std::string_view::npos) throw UsageError("--grid expects lo:hi:points, got '" + std::string(text) + "'");
  GridSpec g;
  g.lo = parse_number<double>(text.substr(0, a), "grid lower end");
  g.hi = parse_number<double>(text.substr(a + 1, b - a - 1), "grid upper end");
  g.points = parse_number<int>(text.substr(b + 1), "grid point count");
  require(std::isfinite(g.lo) && std::isfinite(g.hi) && g.lo < g.hi, "--grid needs finite lo < hi");
  require(g.points >= 2, "--grid needs at least 2 points");
  return g;
}

void validate(const RunConfig& c) {
  if (c.h) require(*c.h > 0.0 && std::isfinite(*c.h), "--h must be > 0");
  require(c.r >= 0, "--r must be >= 0");
  for (long n : c.n_list) require(n >= 1, "--n must be >= 1");
  if (c.reps) {
    require(*c.reps >= 1, "--reps must be >= 1");
    require(c.seed.has_value(), "--reps needs an explicit --seed");
  }
  if (c.family) require(is_one_of(c.family, {"normal", "cauchy"}), "--family must be normal or cauchy");
  if (c.rule) require(is_one_of(c.rule, {"normal", "ecf", "known"}), "--rule must be normal, ecf or known");
  for (const auto* v : {&c.R, &c.V, &c.C, &c.rho, &c.T}) {
    if (*v) require(**v > 0.0 && std::isfinite(**v), "--R, --V, --C, --rho and --T must be > 0");
  }
  if (c.alpha) require(*c.alpha > 0.0 && *c.alpha <= 2.0, "--alpha must lie in (0, 2]");
  if (c.delta) require(*c.delta > 0.0 && *c.delta < 1.0, "--delta must lie in (0, 1)");
  if (c.c) require(*c.c > 0.0, "--c must be > 0");

  switch (c.subcommand) {
    case Subcommand::estimate:
    case Subcommand::mode:
      require(c.input_path.has_value(), "--input is required");
      require(!c.rule || is_one_of(c.rule, {"normal", "ecf"}), "--rule must be normal or ecf here");
      require(!c.correct || c.r == 0, "--correct applies to density estimates (r = 0) only");
      if (c.subcommand == Subcommand::mode) require(c.r == 0, "mode works on the density (r = 0)");
      require(c.r <= kMaxDerivativeOrder, "--r exceeds the supported maximum");
      break;
    case Subcommand::bandwidth:
      require(c.rule.has_value(), "--rule is required");
      if (*c.rule == "known") {
        require(c.family.has_value(), "--rule known needs --family");
        single_n(c);
      } else {
        require(c.input_path.has_value(), "--input is required for --rule " + *c.rule);
      }
      break;
    case Subcommand::mise_table:
      require(c.family.has_value(), "--family is required");
      require(c.r == 0, "mise-table compares density estimates (r = 0)");
      break;
    case Subcommand::compare_superkernel:
      require(!c.m_list.empty(), "--m is required");
      for (double m : c.m_list) require(m > 3.0, "--m must be > 3");
      single_n(c, 100);
      break;
    case Subcommand::bounds: {
      require(c.regime.has_value(), "--regime is required");
      require(is_one_of(c.regime, {"smooth", "variation", "exponential", "bandlimited"}),
              "--regime must be smooth, variation, exponential or bandlimited");
      single_n(c);
      const std::string& g = *c.regime;
      if (g == "smooth") {
        single_m(c);
        require(c.R || c.family, "--regime smooth needs --R or --family");
      } else if (g == "variation") {
        single_m(c);
        require(c.V.has_value(), "--regime variation needs --V");
        require(c.r == 0, "--regime variation is for r = 0");
      } else if (g == "exponential") {
        require(c.rho && c.alpha, "--regime exponential needs --rho and --alpha");
        require(c.C || c.family, "--regime exponential needs --C or --family");
      } else {
        require(c.T.has_value(), "--regime bandlimited needs --T");
      }
      break;
    }
  }
}

void run(const RunConfig& c, std::ostream& out) {
  validate(c);
  switch (c.subcommand) {
    case Subcommand::estimate: return run_estimate(c, out);
    case Subcommand::mode: return run_mode(c, out);
    case Subcommand::bandwidth: return run_bandwidth(c, out);
    case Subcommand::compare_superkernel: return run_compare(c, out);
    case Subcommand::bounds: return run_bounds(c, out);
    case Subcommand::mise_table: {
      const TableFamily family = *c.family == "cauchy" ? TableFamily::cauchy : TableFamily::normal;
      const auto& sizes = c.n_list.empty() ? kDefaultTableSizes : c.n_list;
      const auto rows = run_mise_table(family, sizes, c.continuous ? HSearch::continuous : HSearch::grid);
      std::vector<std::string> cols{"n", "sinc_h", "sinc_mise", "conventional_h", "conventional_mise", "ratio"};
      if (c.reps) {
        cols.emplace_back("mc_ise");
        cols.emplace_back("mc_std_error");
      }
      CsvWriter csv(out, cols);
      const CharModel model = family_model(*c.family);
      for (const auto& row : rows) {
        std::vector<double> v{static_cast<double>(row.n), row.sinc.h_star, row.sinc.value.total,
                              row.conventional.h_star, row.conventional.value.total, row.ratio};
        if (c.reps) {
          const McIseResult mc = mc_ise_oracle(model, row.n, row.sinc.h_star, 0, *c.reps, *c.seed);
          v.push_back(mc.mean_ise);
          v.push_back(mc.std_error.value_or(std::nan("")));
        }
        csv.row(v);
      }
      return;
    }
  }
}

void run_estimate(const RunConfig& c, std::ostream& out) {
  const Sample s = load_input(c);
  const double h = resolve_h(c, s);
  const GridSpec g = c.grid.value_or(GridSpec{s.min() - 3.0 * h, s.max() + 3.0 * h, 512});
  DensityGrid grid = evaluate_on_grid(SincEstimate(s, h, c.r), g.lo, g.hi, g.points);
  if (c.correct) grid = correct_to_density(grid);
  CsvWriter csv(out, {"x", "f"});
  for (std::size_t i = 0; i < grid.x_values.size(); ++i) csv.row({grid.x_values[i], grid.y_values[i]});
}

void run_mode(const RunConfig& c, std::ostream& out) {
  const Sample s = load_input(c);
  const double h = resolve_h(c, s);
  const ModeEstimate m = estimate_mode(s, h);
  CsvWriter csv(out, {"location", "value", "h", "scan_lo", "scan_hi"});
  csv.row({m.location, m.value, h, m.scan_lo, m.scan_hi});
}

void run_bandwidth(const RunConfig& c, std::ostream& out) {
  BandwidthSelection sel;
  if (*c.rule == "known") {
    sel = solve_opt_bandwidth_known_cf(family_model(*c.family), single_n(c));
  } else {
    const Sample s = load_input(c);
    sel = *c.rule == "ecf" ? ecf_rule(s) : normal_rule(s);
  }
  CsvWriter::comment(out, "rule", to_string(sel.rule));
  CsvWriter::comment(out, "chosen_h", format_double(sel.chosen_h));
  CsvWriter::comment(out, "diagnostics", sel.diagnostics);
  CsvWriter csv(out, {"delta", "h", "mise_offset", "chosen"});
  for (const auto& cand : sel.candidates) {
    csv.row({cand.delta, 1.0 / cand.delta, cand.mise_offset, 1.0 / cand.delta == sel.chosen_h ? 1.0 : 0.0});
  }
}

void run_compare(const RunConfig& c, std::ostream& out) {
  const double delta = c.delta.value_or(0.75);
  const double cc = c.c.value_or(1.0);
  const long n = single_n(c, 100);
  const double h_max = delta / cc;
  const GridSpec g = c.grid.value_or(GridSpec{0.05 * h_max, 0.95 * h_max, 20});
  require(g.lo > 0.0, "--grid must lie in (0, delta/c)");
  CsvWriter csv(out, {"m", "h", "sinc_bias_sq", "trapezoid_bias_sq", "bias_ratio", "sinc_variance",
                      "trapezoid_variance", "variance_gap", "sinc_mise", "trapezoid_mise"});
  for (double m : c.m_list) {
    for (int i = 0; i < g.points; ++i) {
      const double h = i + 1 == g.points ? g.hi : g.lo + (g.hi - g.lo) * i / (g.points - 1);
      const SuperkernelComparison cmp = superkernel_comparison(m, delta, h, n, cc);
      csv.row({m, h, cmp.sinc.bias_sq, cmp.trapezoid.bias_sq, cmp.sinc.bias_sq / cmp.trapezoid.bias_sq,
               cmp.sinc.variance, cmp.trapezoid.variance, cmp.variance_gap, cmp.sinc.total, cmp.trapezoid.total});
    }
  }
}

void run_bounds(const RunConfig& c, std::ostream& out) {
  const long n = single_n(c);
  const std::string& g = *c.regime;
  BoundReport rep;
  if (g == "smooth") {
    const int m = single_m(c);
    const double R = c.R ? *c.R : roughness(family_model(*c.family), c.r + m).value;
    rep = bound_smooth(c.r, m, R, n, c.h);
  } else if (g == "variation") {
    rep = bound_variation(single_m(c), *c.V, n, c.h);
  } else if (g == "exponential") {
    const double C = c.C ? *c.C : weighted_exponential_energy(family_model(*c.family), *c.rho, *c.alpha, c.r).value;
    rep = bound_exponential(c.r, C, *c.rho, *c.alpha, n, c.h, c.weakened);
  } else {
    rep = bound_bandlimited(c.r, *c.T, n, c.h.value_or(1.0 / *c.T));
  }
  CsvWriter::comment(out, "regime", to_string(rep.regime));
  for (const auto& [k, v] : rep.inputs) CsvWriter::comment(out, k, format_double(v));
  CsvWriter csv(out, {"r", "h_used", "optimized", "bound"});
  csv.row({static_cast<double>(rep.r), rep.h_used, rep.optimized ? 1.0 : 0.0, rep.bound});
}

std::vector<MiseTableRow> run_mise_table(TableFamily family, const std::vector<long>& n_list, HSearch search) {
  std::vector<MiseTableRow> rows;
  rows.reserve(n_list.size());
  for (long n : n_list) rows.push_back(mise_table_row(family, n, search));
  return rows;
}

ErrorReport describe_error(const std::exception& e) {
  const auto make = [&](int code, std::string_view kind) {
    std::string msg = e.what();
    for (char& ch : msg) {
      if (ch == '\n') ch = ' ';
    }
    return ErrorReport{code, "error[" + std::string(kind) + "]: " + msg};
  };
  if (dynamic_cast<const UsageError*>(&e)) return make(2, "usage");
  if (dynamic_cast<const DomainError*>(&e)) return make(2, "domain");
  if (dynamic_cast<const UnsupportedError*>(&e)) return make(2, "unsupported");
  if (dynamic_cast<const DataError*>(&e)) return make(3, "data");
  if (dynamic_cast<const DegenerateInputError*>(&e)) return make(3, "degenerate");
  if (dynamic_cast<const InfeasibleError*>(&e)) return make(4, "infeasible");
  if (dynamic_cast<const OutOfValidityError*>(&e)) return make(4, "out-of-validity");
  return make(1, "internal");
}

}  // namespace sincde::cli
