#include <doctest.h>

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <iterator>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"
#include "seqsteer/sweep.hpp"

using namespace seqsteer;

namespace {

struct CliResult {
  int code;
  std::string out;
  std::string err;
};

CliResult run_cli(std::vector<std::string> args) {
  args.insert(args.begin(), "seqsteer-sweep");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int code = cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
  return {code, out.str(), err.str()};
}

std::size_t count_lines(const std::string& text) {
  return static_cast<std::size_t>(std::count(text.begin(), text.end(), '\n'));
}

std::filesystem::path temp_file(const std::string& name) {
  return std::filesystem::temp_directory_path() / name;
}

} // namespace

TEST_SUITE("sweep_cli") {

TEST_CASE("symmetric sweep to a file: 101 rows plus header") {
  const auto path = temp_file("seqsteer_cli_fig5.csv");
  const auto r = run_cli({"--mode", "symmetric", "--n", "3", "--points", "101", "--out", path.string()});
  CHECK(r.code == cli::kExitOk);
  std::ifstream in(path);
  const std::string text((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
  CHECK(count_lines(text) == 102);
  std::istringstream parsed(text);
  CHECK(read_csv(parsed).size() == 101);
  std::filesystem::remove(path);
}

TEST_CASE("fixed-b sweep to stdout") {
  const auto r = run_cli({"--mode", "fixed-b", "--eta-b", "0.766", "--n", "3"});
  CHECK(r.code == cli::kExitOk);
  std::istringstream in(r.out);
  const auto rows = read_csv(in);
  REQUIRE(rows.size() == kDefaultGridPoints);
  for (const auto& row : rows) CHECK(row.eta_b == 0.766);
}

TEST_CASE("repeatable --n and default set list") {
  auto r = run_cli({"--n", "3", "--n", "6", "--points", "3"});
  CHECK(r.code == cli::kExitOk);
  CHECK(count_lines(r.out) == 7);

  r = run_cli({"--points", "2"});
  CHECK(r.code == cli::kExitOk);
  CHECK(count_lines(r.out) == 11);
}

TEST_CASE("window summary") {
  auto r = run_cli({"--window", "--n", "3", "--tol", "1e-6"});
  CHECK(r.code == cli::kExitOk);
  CHECK(r.out.find("n=3 window: [0.75983") != std::string::npos);
  CHECK(r.out.find(", 0.76858") != std::string::npos);
  CHECK(count_lines(r.out) == 1);

  r = run_cli({"--window", "--n", "2"});
  CHECK(r.code == cli::kExitOk);
  CHECK(r.out == "n=2 window: empty\n");
}

TEST_CASE("dump-set output reads back") {
  const auto r = run_cli({"--dump-set", "--n", "6"});
  CHECK(r.code == cli::kExitOk);
  std::istringstream in(r.out);
  CHECK(read_measurement_set(in).size() == 6);
}

TEST_CASE("set file: accepted, with a warning when not a 2-design") {
  const auto path = temp_file("seqsteer_cli_set.txt");
  {
    std::ofstream f(path);
    f << "1 0 0\n0 1 0\n";
  }
  auto r = run_cli({"--set-file", path.string(), "--points", "3"});
  CHECK(r.code == cli::kExitOk);
  CHECK(r.err.find("warning") != std::string::npos);
  CHECK(count_lines(r.out) == 4);

  {
    std::ofstream f(path);
    write_measurement_set(f, platonic_set(4));
  }
  r = run_cli({"--set-file", path.string(), "--points", "3"});
  CHECK(r.code == cli::kExitOk);
  CHECK(r.err.empty());

  {
    std::ofstream f(path);
    f << "1 0\n";
  }
  r = run_cli({"--set-file", path.string()});
  CHECK(r.code == cli::kExitBadArguments);
  std::filesystem::remove(path);

  r = run_cli({"--set-file", "/nonexistent-dir/set.txt"});
  CHECK(r.code == cli::kExitIo);
}

TEST_CASE("--no-corr-sign flips the reported correlators") {
  const auto r = run_cli({"--n", "3", "--points", "2", "--no-corr-sign"});
  CHECK(r.code == cli::kExitOk);
  std::istringstream in(r.out);
  const auto rows = read_csv(in);
  REQUIRE(rows.size() == 2);
  CHECK(rows[1].s11 == doctest::Approx(-1.0));
}

TEST_CASE("argument and I/O errors map to exit codes") {
  CHECK(run_cli({"--n", "5"}).code == cli::kExitBadArguments);
  CHECK(run_cli({"--mode", "diagonal"}).code == cli::kExitBadArguments);
  CHECK(run_cli({"--points", "1"}).code == cli::kExitBadArguments);
  CHECK(run_cli({"--eta-start", "0.9", "--eta-end", "0.1"}).code == cli::kExitBadArguments);
  CHECK(run_cli({"--window", "--tol", "1e-12"}).code == cli::kExitBadArguments);
  CHECK(run_cli({"--bogus"}).code == cli::kExitBadArguments);

  const auto io = run_cli({"--n", "3", "--points", "2", "--out", "/nonexistent-dir/x.csv"});
  CHECK(io.code == cli::kExitIo);
  CHECK(io.err.find("/nonexistent-dir/x.csv") != std::string::npos);

  CHECK(run_cli({"--help"}).code == cli::kExitOk);
}

}
