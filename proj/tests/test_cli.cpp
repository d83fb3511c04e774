#include "commands.hpp"
#include "io.hpp"

#include "sincde/error.hpp"

#include <doctest.h>

#include <charconv>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

using namespace sincde;
using namespace sincde::cli;

namespace {

Sample ingest_text(const std::string& text) {
  std::istringstream in(text);
  return ingest(in, "test");
}

std::vector<std::string> lines_of(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::vector<double> split_row(const std::string& line) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= line.size()) {
    const auto end = std::min(line.find(',', start), line.size());
    double v = 0.0;
    std::from_chars(line.data() + start, line.data() + end, v);
    out.push_back(v);
    start = end + 1;
  }
  return out;
}

std::filesystem::path temp_file(const std::string& name, const std::string& content) {
  const auto p = std::filesystem::temp_directory_path() / name;
  std::ofstream(p) << content;
  return p;
}

}  // namespace

TEST_CASE("ingest examples") {
  const Sample a = ingest_text("0\n");
  CHECK(a.size() == 1);
  CHECK(a[0] == 0.0);

  const Sample b = ingest_text("# header\n1.5\n-2e0\n");
  REQUIRE(b.size() == 2);
  CHECK(b[0] == 1.5);
  CHECK(b[1] == -2.0);

  const Sample c = ingest_text("\n  3.25  \r\n\n#x\n+4\n");
  REQUIRE(c.size() == 2);
  CHECK(c[0] == 3.25);
  CHECK(c[1] == 4.0);

  try {
    ingest_text("1\n2\nabc\n");
    FAIL("expected a data error");
  } catch (const DataError& e) {
    CHECK(std::string(e.what()).find("test:3") != std::string::npos);
  }
  CHECK_THROWS_AS(ingest_text("# nothing\n\n"), DataError);
  CHECK_THROWS_AS(ingest_text("1 2\n"), DataError);
  CHECK_THROWS_AS(ingest_text("nan\n"), DataError);
  CHECK_THROWS_AS(ingest(std::filesystem::path("/nonexistent/file.txt")), DataError);
}

TEST_CASE("CSV round trip is bit exact") {
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> u(-1e6, 1e6);
  std::vector<double> values{0.0, -0.0, 1e-300, 5e-324, 1.0 / 3.0, std::nextafter(1.0, 2.0), 1e300};
  for (int i = 0; i < 200; ++i) values.push_back(u(rng) * std::pow(10.0, i % 20 - 10));
  std::ostringstream out;
  CsvWriter csv(out, {"a", "b"});
  for (std::size_t i = 0; i + 1 < values.size(); i += 2) csv.row({values[i], values[i + 1]});
  const auto lines = lines_of(out.str());
  REQUIRE(lines.front() == "a,b");
  std::size_t k = 0;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    for (double v : split_row(lines[i])) {
      CHECK(v == values[k]);
      CHECK(std::signbit(v) == std::signbit(values[k]));
      ++k;
    }
  }
  std::ostringstream bad;
  CsvWriter short_row(bad, {"a", "b"});
  CHECK_THROWS(short_row.row({1.0}));
}

TEST_CASE("grid parsing and validation") {
  const GridSpec g = parse_grid("-4:4:801");
  CHECK(g.lo == -4.0);
  CHECK(g.hi == 4.0);
  CHECK(g.points == 801);
  CHECK_THROWS_AS(parse_grid("1:2"), UsageError);
  CHECK_THROWS_AS(parse_grid("2:1:10"), UsageError);
  CHECK_THROWS_AS(parse_grid("0:1:1"), UsageError);
  CHECK_THROWS_AS(parse_grid("a:1:10"), UsageError);

  RunConfig c;
  c.subcommand = Subcommand::estimate;
  CHECK_THROWS_AS(validate(c), UsageError);  // no input
  c.input_path = "x";
  c.h = -1.0;
  CHECK_THROWS_AS(validate(c), UsageError);
  c.h = 0.5;
  CHECK_NOTHROW(validate(c));

  RunConfig t;
  t.subcommand = Subcommand::mise_table;
  t.family = "normal";
  t.reps = 10;
  CHECK_THROWS_AS(validate(t), UsageError);  // randomized without a seed
  t.seed = 1;
  CHECK_NOTHROW(validate(t));
  t.family = "gamma";
  CHECK_THROWS_AS(validate(t), UsageError);

  RunConfig b;
  b.subcommand = Subcommand::bounds;
  b.regime = "smooth";
  b.n_list = {1000};
  b.m_list = {2.0};
  CHECK_THROWS_AS(validate(b), UsageError);  // needs --R or --family
  b.R = 0.211571;
  CHECK_NOTHROW(validate(b));
  b.alpha = 3.0;
  CHECK_THROWS_AS(validate(b), UsageError);
}

TEST_CASE("mise-table rows") {
  const auto rows = run_mise_table(TableFamily::normal, {100});
  REQUIRE(rows.size() == 1);
  CHECK(std::abs(rows[0].sinc.value.total - 0.004699) <= 1e-6);
  CHECK(std::abs(rows[0].conventional.value.total - 0.005411) <= 1e-6);
  CHECK(std::abs(rows[0].ratio - 0.868) <= 1e-3);

  RunConfig c;
  c.subcommand = Subcommand::mise_table;
  c.family = "cauchy";
  c.n_list = {1000};
  std::ostringstream out;
  run(c, out);
  const auto lines = lines_of(out.str());
  REQUIRE(lines.size() == 2);
  CHECK(lines[0] == "n,sinc_h,sinc_mise,conventional_h,conventional_mise,ratio");
  const auto v = split_row(lines[1]);
  CHECK(v[0] == 1000.0);
  CHECK(std::abs(v[2] - 0.0011) <= 1e-4);
  CHECK(std::abs(v[4] - 0.002126) <= 1e-6);
  CHECK(std::abs(v[5] - 0.517) <= 1e-3);
}

TEST_CASE("estimate, mode and bandwidth dispatch") {
  std::string data;
  std::mt19937_64 rng(9);
  std::normal_distribution<double> z;
  for (int i = 0; i < 100; ++i) data += format_double(z(rng)) + "\n";
  const auto path = temp_file("sincde_cli_test.txt", data);

  RunConfig e;
  e.subcommand = Subcommand::estimate;
  e.input_path = path.string();
  e.h = 0.4;
  e.grid = parse_grid("-4:4:801");
  std::ostringstream out;
  run(e, out);
  const auto lines = lines_of(out.str());
  CHECK(lines.size() == 802);
  CHECK(lines[0] == "x,f");
  CHECK(split_row(lines[1])[0] == -4.0);
  CHECK(split_row(lines[801])[0] == 4.0);

  RunConfig m;
  m.subcommand = Subcommand::mode;
  m.input_path = path.string();
  m.h = 0.6;
  std::ostringstream mo;
  run(m, mo);
  CHECK(lines_of(mo.str()).size() == 2);

  RunConfig b;
  b.subcommand = Subcommand::bandwidth;
  b.input_path = path.string();
  b.rule = "ecf";
  std::ostringstream bo;
  run(b, bo);
  const std::string text = bo.str();
  CHECK(text.find("# rule: ecf") != std::string::npos);
  CHECK(text.find("# chosen_h: ") != std::string::npos);
  CHECK(text.find("delta,h,mise_offset,chosen") != std::string::npos);

  RunConfig k;
  k.subcommand = Subcommand::bounds;
  k.regime = "smooth";
  k.n_list = {1000};
  k.m_list = {2.0};
  k.R = 0.211571;
  std::ostringstream ko;
  run(k, ko);
  const auto kl = lines_of(ko.str());
  const auto row = split_row(kl.back());
  CHECK(row[2] == 1.0);
  CHECK(std::abs(row[3] - 0.0019262) < 1e-6);
  std::filesystem::remove(path);
}

TEST_CASE("error mapping") {
  CHECK(describe_error(UsageError("x")).exit_code == 2);
  CHECK(describe_error(DomainError("x")).exit_code == 2);
  CHECK(describe_error(DataError("x")).exit_code == 3);
  CHECK(describe_error(DegenerateInputError("x")).exit_code == 3);
  CHECK(describe_error(InfeasibleError("x")).exit_code == 4);
  CHECK(describe_error(OutOfValidityError("x")).exit_code == 4);
  CHECK(describe_error(std::runtime_error("x")).exit_code == 1);
  CHECK(describe_error(DataError("bad\nline")).line == "error[data]: bad line");
}
