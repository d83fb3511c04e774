#include "commands.hpp"
#include "io.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

namespace {

using sincde::cli::RunConfig;
using sincde::cli::Subcommand;

struct Flags {
  bool input = false, h = false, r = false, rule = false, family = false, n = false, grid = false, seed = false,
       reps = false, regime = false, m = false, R = false, V = false, C = false, rho = false, alpha = false,
       T = false, delta = false, c = false, correct = false, continuous = false, weakened = false;
};

void add_options(CLI::App* cmd, RunConfig& cfg, std::string& grid_text, const Flags& f) {
  cmd->add_option("--output,-o", cfg.output_path, "Write results here instead of standard output");
  if (f.input) cmd->add_option("--input,-i", cfg.input_path, "Data file, one value per line");
  if (f.h) cmd->add_option("--h", cfg.h, "Bandwidth");
  if (f.r) cmd->add_option("--r", cfg.r, "Derivative order")->default_val(0);
  if (f.rule) cmd->add_option("--rule", cfg.rule, "Bandwidth rule: normal, ecf or known");
  if (f.family) cmd->add_option("--family", cfg.family, "Target family: normal or cauchy");
  if (f.n) cmd->add_option("--n", cfg.n_list, "Sample size (repeatable for mise-table)")->take_all();
  if (f.grid) cmd->add_option("--grid", grid_text, "Grid as lo:hi:points");
  if (f.seed) cmd->add_option("--seed", cfg.seed, "Random seed (required with --reps)");
  if (f.reps) cmd->add_option("--reps", cfg.reps, "Monte Carlo replications");
  if (f.regime) cmd->add_option("--regime", cfg.regime, "smooth, variation, exponential or bandlimited");
  if (f.m) cmd->add_option("--m", cfg.m_list, "Smoothness or tail order")->take_all();
  if (f.R) cmd->add_option("--R", cfg.R, "Roughness R(f^(r+m))");
  if (f.V) cmd->add_option("--V", cfg.V, "Total variation of f^(m)");
  if (f.C) cmd->add_option("--C", cfg.C, "Weighted exponential energy constant");
  if (f.rho) cmd->add_option("--rho", cfg.rho, "Exponential decay coefficient");
  if (f.alpha) cmd->add_option("--alpha", cfg.alpha, "Exponential decay degree in (0, 2]");
  if (f.T) cmd->add_option("--T", cfg.T, "Band limit");
  if (f.delta) cmd->add_option("--delta", cfg.delta, "Superkernel flat-top half-width in (0, 1)");
  if (f.c) cmd->add_option("--c", cfg.c, "Power-tail onset");
  if (f.correct) cmd->add_flag("--correct", cfg.correct, "Clip negatives and renormalize");
  if (f.continuous) cmd->add_flag("--continuous", cfg.continuous, "Minimize over continuous h, not the 0.01 grid");
  if (f.weakened) cmd->add_flag("--weakened", cfg.weakened, "Report the looser (ln n)^(1/alpha)/n form");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Sinc-kernel density estimation: estimates, bandwidths, exact MISE tables and bounds"};
  app.set_help_flag("--help", "Print this help message and exit");
  app.require_subcommand(1);
  RunConfig cfg;
  std::string grid_text;

  struct Entry {
    const char* name;
    const char* help;
    Subcommand sub;
    Flags flags;
  };
  Flags est;
  est.input = est.h = est.r = est.rule = est.grid = est.correct = true;
  Flags mode;
  mode.input = mode.h = mode.rule = true;
  Flags bw;
  bw.input = bw.rule = bw.family = bw.n = true;
  Flags table;
  table.family = table.n = table.seed = table.reps = table.continuous = true;
  Flags cmp;
  cmp.m = cmp.delta = cmp.c = cmp.n = cmp.grid = true;
  Flags bnd;
  bnd.regime = bnd.r = bnd.m = bnd.R = bnd.V = bnd.C = bnd.rho = bnd.alpha = bnd.T = bnd.n = bnd.h = bnd.family =
      bnd.weakened = true;
  const Entry entries[] = {
      {"estimate", "Sinc density (or derivative) estimate on a grid", Subcommand::estimate, est},
      {"mode", "Location of the maximum of the sinc estimate", Subcommand::mode, mode},
      {"bandwidth", "Bandwidth selection", Subcommand::bandwidth, bw},
      {"mise-table", "Optimal exact MISE, sinc versus conventional kernel", Subcommand::mise_table, table},
      {"compare-superkernel", "Sinc versus trapezoidal superkernel for power-tail spectra",
       Subcommand::compare_superkernel, cmp},
      {"bounds", "MISE upper bounds", Subcommand::bounds, bnd},
  };
  for (const auto& e : entries) {
    CLI::App* cmd = app.add_subcommand(e.name, e.help);
    add_options(cmd, cfg, grid_text, e.flags);
    const Subcommand sub = e.sub;
    cmd->callback([&cfg, sub] { cfg.subcommand = sub; });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::string msg = e.what();
    for (char& ch : msg) {
      if (ch == '\n') ch = ' ';
    }
    std::cerr << "error[usage]: " << msg << '\n';
    return 2;
  }

  try {
    if (!grid_text.empty()) cfg.grid = sincde::cli::parse_grid(grid_text);
    sincde::cli::validate(cfg);
    if (cfg.output_path) {
      std::ofstream file(*cfg.output_path);
      if (!file) throw sincde::cli::DataError("cannot open output file '" + *cfg.output_path + "'");
      sincde::cli::run(cfg, file);
      file.flush();
      if (!file) throw sincde::cli::DataError("write to '" + *cfg.output_path + "' failed");
    } else {
      sincde::cli::run(cfg, std::cout);
      std::cout.flush();
    }
  } catch (const std::exception& e) {
    const auto report = sincde::cli::describe_error(e);
    std::cerr << report.line << '\n';
    return report.exit_code;
  }
  return 0;
}
