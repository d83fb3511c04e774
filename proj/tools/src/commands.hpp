#pragma once

#include "sincde/mise.hpp"

#include <cstdint>
#include <exception>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace sincde::cli {

enum class Subcommand { estimate, mode, bandwidth, mise_table, compare_superkernel, bounds };

struct GridSpec {
  double lo = 0.0;
  double hi = 0.0;
  int points = 0;
};

/// Parsed command line. Strings hold the raw enum spellings; validate()
/// checks them together with every numeric option.
struct RunConfig {
  Subcommand subcommand = Subcommand::estimate;
  std::optional<std::string> input_path;
  std::optional<std::string> output_path;
  std::optional<double> h;
  int r = 0;
  std::optional<std::string> rule;    ///< normal | ecf | known
  std::optional<std::string> family;  ///< normal | cauchy
  std::vector<long> n_list;
  std::optional<GridSpec> grid;
  std::optional<std::uint64_t> seed;
  std::optional<int> reps;
  std::optional<std::string> regime;  ///< smooth | variation | exponential | bandlimited
  std::vector<double> m_list;
  std::optional<double> R;
  std::optional<double> V;
  std::optional<double> C;
  std::optional<double> rho;
  std::optional<double> alpha;
  std::optional<double> T;
  std::optional<double> delta;
  std::optional<double> c;
  bool correct = false;
  bool continuous = false;
  bool weakened = false;
};

/// "lo:hi:points". Throws UsageError.
GridSpec parse_grid(std::string_view text);

/// Rejects inconsistent or out-of-range options before any computation.
void validate(const RunConfig& config);

/// Runs the configured subcommand, writing CSV to `out`.
void run(const RunConfig& config, std::ostream& out);

void run_estimate(const RunConfig& config, std::ostream& out);
void run_mode(const RunConfig& config, std::ostream& out);
void run_bandwidth(const RunConfig& config, std::ostream& out);
void run_compare(const RunConfig& config, std::ostream& out);
void run_bounds(const RunConfig& config, std::ostream& out);

/// Table rows for `family` at each n.
std::vector<MiseTableRow> run_mise_table(TableFamily family, const std::vector<long>& n_list,
                                         HSearch search = HSearch::grid);

inline const std::vector<long> kDefaultTableSizes{40, 45, 50, 100, 1000};

struct ErrorReport {
  int exit_code = 1;
  std::string line;  ///< "error[kind]: message"
};

/// Maps an exception to its exit status and one-line message.
ErrorReport describe_error(const std::exception& e);

}  // namespace sincde::cli
