#pragma once

#include "sincde/sample.hpp"

#include <filesystem>
#include <istream>
#include <ostream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace sincde::cli {

/// Bad command line or option combination (exit status 2).
class UsageError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Unreadable or malformed input data (exit status 3).
class DataError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// One value per line; blank lines and lines starting with '#' are skipped.
/// Throws DataError naming the offending line.
Sample ingest(const std::filesystem::path& path);
Sample ingest(std::istream& in, std::string_view source);

/// Shortest form with 17 significant digits; parses back to the same double.
std::string format_double(double v);

/// Comma-separated rows after a header line.
class CsvWriter {
public:
  CsvWriter(std::ostream& out, const std::vector<std::string>& columns);

  /// Line starting with "# ", for metadata ahead of the header.
  static void comment(std::ostream& out, std::string_view key, std::string_view value);

  void row(const std::vector<double>& values);

private:
  std::ostream& out_;
  std::size_t width_;
};

}  // namespace sincde::cli
