#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "oracles.hpp"
#include "seqsteer/sweep.hpp"

using namespace seqsteer;

namespace {

SweepSpec symmetric_spec(std::vector<int> n_list, std::size_t points) {
  SweepSpec spec;
  spec.mode = SweepMode::symmetric;
  spec.n_list = std::move(n_list);
  spec.points = points;
  return spec;
}

void check_flags_consistent(const SweepRow& r) {
  CHECK(r.violations[0] == (r.s11 > r.c_n));
  CHECK(r.violations[1] == (r.s12 > r.c_n));
  CHECK(r.violations[2] == (r.s21 > r.c_n));
  CHECK(r.violations[3] == (r.s22 > r.c_n));
}

} // namespace

TEST_SUITE("sweep") {

TEST_CASE("validate rejects malformed specs") {
  auto spec = symmetric_spec({3}, 11);
  CHECK_NOTHROW(validate(spec));

  auto bad = spec;
  bad.points = 1;
  CHECK_THROWS_AS(validate(bad), std::invalid_argument);
  bad = spec;
  bad.points = kMaxGridPoints + 1;
  CHECK_THROWS_AS(validate(bad), std::invalid_argument);
  bad = spec;
  bad.eta_start = 0.5;
  bad.eta_end = 0.5;
  CHECK_THROWS_AS(validate(bad), std::invalid_argument);
  bad = spec;
  bad.eta_end = 1.2;
  CHECK_THROWS_AS(validate(bad), std::invalid_argument);
  bad = spec;
  bad.n_list = {5};
  CHECK_THROWS_AS(validate(bad), std::invalid_argument);
  bad = spec;
  bad.n_list.clear();
  CHECK_THROWS_AS(validate(bad), std::invalid_argument);
  bad = spec;
  bad.mode = SweepMode::fixed_b;
  bad.eta_b_fixed = -0.1;
  CHECK_THROWS_AS(validate(bad), std::invalid_argument);
}

TEST_CASE("uniform_grid keeps exact endpoints") {
  const auto g = uniform_grid(0.0, 1.0, 201);
  REQUIRE(g.size() == 201);
  CHECK(g.front() == 0.0);
  CHECK(g.back() == 1.0);
  CHECK(std::abs(g[100] - 0.5) < 1e-15);
}

TEST_CASE("symmetric sweep: ordering, anchors, flags") {
  const auto rows = run_symmetric_sweep(symmetric_spec({6, 3}, 21));
  REQUIRE(rows.size() == 42);
  CHECK(rows.front().n == 6);
  CHECK(rows[21].n == 3);
  for (std::size_t i = 1; i < 21; ++i) CHECK(rows[i].eta_a > rows[i - 1].eta_a);

  const auto& zero = rows[21];
  CHECK(zero.eta_a == 0.0);
  CHECK(zero.s11 == 0.0);
  CHECK(std::abs(zero.s12) < 1e-15);
  CHECK(std::abs(zero.s21) < 1e-15);
  // null first-round observers leave the singlet intact for the sharp pair
  CHECK(std::abs(zero.s22 - 1.0) < 1e-12);
  CHECK(violation_flags(zero.violations) == "0001");

  const auto& one = rows.back();
  CHECK(one.eta_a == 1.0);
  CHECK(std::abs(one.s11 - 1.0) < 1e-12);
  CHECK(std::abs(one.s22 - 1.0 / 9.0) < 1e-12);
  CHECK(violation_flags(one.violations) == "1000");

  for (const auto& r : rows) {
    check_flags_consistent(r);
    CHECK(r.eta_a == r.eta_b);
  }

  auto wrong = symmetric_spec({3}, 5);
  wrong.mode = SweepMode::fixed_b;
  CHECK_THROWS_AS(run_symmetric_sweep(wrong), std::invalid_argument);
}

TEST_CASE("symmetric sweep: all four pairs violate at eta = 0.766") {
  auto spec = symmetric_spec({3}, 2);
  spec.eta_start = 0.5;
  spec.eta_end = 0.766;
  const auto rows = run_symmetric_sweep(spec);
  CHECK(violation_flags(rows.back().violations) == "1111");
}

TEST_CASE("fixed-b sweep") {
  SweepSpec spec;
  spec.mode = SweepMode::fixed_b;
  spec.n_list = {3};
  spec.points = 101;
  spec.eta_b_fixed = 0.766;
  const auto rows = run_fixed_b_sweep(spec);
  REQUIRE(rows.size() == 101);
  CHECK(rows.front().s11 == 0.0);
  CHECK(std::abs(rows.front().s12) < 1e-15);
  CHECK(std::abs(rows.back().s11 - 0.766) < 1e-12);
  double worst = 0;
  for (const auto& r : rows) {
    CHECK(r.eta_b == 0.766);
    worst = std::max(worst, std::abs(r.s11 - r.s12));
    check_flags_consistent(r);
  }
  CHECK(worst <= 0.005);
}

TEST_CASE("custom set replaces the platonic list") {
  SweepSpec spec = symmetric_spec({3, 4}, 5);
  spec.custom_set = MeasurementSet({BlochVector(1, 0, 0), BlochVector(0, 1, 0)});
  const auto rows = run_sweep(spec);
  REQUIRE(rows.size() == 5);
  CHECK(rows[0].n == 2);
  const auto o = oracle::bloch_scenario(*spec.custom_set, rows[2].eta_a, rows[2].eta_b);
  CHECK(std::abs(rows[2].s22 - o.s22) < 1e-12);
}

TEST_CASE("CSV format and round trip") {
  const auto rows = run_symmetric_sweep(symmetric_spec({3, 10}, 17));
  std::ostringstream out;
  write_csv(out, rows);
  const std::string text = out.str();
  CHECK(text.rfind(std::string(kCsvHeader) + "\n", 0) == 0);
  CHECK(text.find('\r') == std::string::npos);

  std::istringstream in(text);
  const auto back = read_csv(in);
  REQUIRE(back.size() == rows.size());
  for (std::size_t i = 0; i < rows.size(); ++i) {
    CHECK(std::abs(back[i].eta_a - rows[i].eta_a) <= 1e-12);
    CHECK(std::abs(back[i].eta_b - rows[i].eta_b) <= 1e-12);
    CHECK(back[i].n == rows[i].n);
    CHECK(std::abs(back[i].s11 - rows[i].s11) <= 1e-12);
    CHECK(std::abs(back[i].s12 - rows[i].s12) <= 1e-12);
    CHECK(std::abs(back[i].s21 - rows[i].s21) <= 1e-12);
    CHECK(std::abs(back[i].s22 - rows[i].s22) <= 1e-12);
    CHECK(std::abs(back[i].c_n - rows[i].c_n) <= 1e-12);
    CHECK(back[i].violations == rows[i].violations);
  }

  std::istringstream no_header("0,0,3,0,0,0,0,0.5,0000\n");
  CHECK_THROWS_AS(read_csv(no_header), std::invalid_argument);
  std::istringstream bad_row(std::string(kCsvHeader) + "\n0,0,3,x,0,0,0,0.5,0000\n");
  CHECK_THROWS_AS(read_csv(bad_row), std::invalid_argument);
}

TEST_CASE("write_csv_file reports the failing path") {
  const std::string bad = "/nonexistent-dir/rows.csv";
  try {
    write_csv_file(bad, {});
    FAIL("expected IoError");
  } catch (const IoError& e) {
    CHECK(e.path() == bad);
    CHECK(std::string(e.what()).find(bad) != std::string::npos);
  }

  const auto path = std::filesystem::temp_directory_path() / "seqsteer_rows.csv";
  const auto rows = run_symmetric_sweep(symmetric_spec({4}, 3));
  write_csv_file(path.string(), rows);
  std::ifstream in(path);
  CHECK(read_csv(in).size() == 3);
  std::filesystem::remove(path);
}

TEST_CASE("find_violation_window") {
  const double c3 = 1 / std::sqrt(3.0);
  const auto w3 = find_violation_window(3, 1e-9);
  REQUIRE(w3.has_value());
  CHECK(std::abs(w3->low - oracle::window_low(c3)) < 1e-8);
  CHECK(std::abs(w3->high - oracle::window_high(c3)) < 1e-8);
  // frozen from the closed forms (20-digit evaluation): 3^(-1/4) and the S22 crossing
  CHECK(std::abs(w3->low - 0.7598356856515925) < 1e-8);
  CHECK(std::abs(w3->high - 0.7685801342740592) < 1e-8);

  const double c6 = lhs_bound(platonic_set(6));
  const auto w6 = find_violation_window(6, 1e-9);
  REQUIRE(w6.has_value());
  CHECK(std::abs(w6->low - oracle::window_low(c6)) < 1e-8);
  CHECK(std::abs(w6->high - oracle::window_high(c6)) < 1e-8);

  CHECK_FALSE(find_violation_window(2, 1e-6).has_value());
  CHECK_THROWS_AS(find_violation_window(3, 1e-11), std::invalid_argument);
}

TEST_CASE("n=2 has no window: brute-force grid scan") {
  const auto rows = run_symmetric_sweep(symmetric_spec({2}, 2001));
  for (const auto& r : rows) {
    CHECK_FALSE((r.s11 > r.c_n && r.s22 > r.c_n));
  }
  CHECK_FALSE(grid_violation_window(rows).has_value());
}

TEST_CASE("grid window is stable under refinement") {
  for (int n : {3, 4, 6, 10}) {
    const auto coarse = grid_violation_window(run_symmetric_sweep(symmetric_spec({n}, 201)));
    const auto fine = grid_violation_window(run_symmetric_sweep(symmetric_spec({n}, 401)));
    REQUIRE(coarse.has_value());
    REQUIRE(fine.has_value());
    const double spacing = 1.0 / 200;
    CHECK(std::abs(coarse->low - fine->low) < spacing);
    CHECK(std::abs(coarse->high - fine->high) < spacing);

    const auto exact = find_violation_window(n, 1e-9);
    REQUIRE(exact.has_value());
    CHECK(fine->low >= exact->low);
    CHECK(fine->high <= exact->high);
  }
}

}
