#include "seqsteer/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <future>
#include <istream>
#include <ostream>
#include <sstream>
#include <thread>

namespace seqsteer {

namespace {

constexpr double kMinWindowTol = 1e-10;
constexpr std::size_t kWindowScanPoints = 1001;

std::vector<MeasurementSet> resolve_sets(const SweepSpec& spec) {
  std::vector<MeasurementSet> sets;
  if (spec.custom_set) {
    sets.push_back(*spec.custom_set);
    return sets;
  }
  for (int n : spec.n_list) sets.push_back(platonic_set(n));
  return sets;
}

// Evaluates fn at every grid index, spread over hardware threads. The output
// order is the index order regardless of scheduling.
std::vector<SweepRow> evaluate_grid(std::size_t count,
                                    const std::function<SweepRow(std::size_t)>& fn) {
  std::vector<SweepRow> rows(count);
  const std::size_t workers =
      std::clamp<std::size_t>(std::thread::hardware_concurrency(), 1, std::max<std::size_t>(count, 1));
  const std::size_t chunk = (count + workers - 1) / workers;
  std::vector<std::future<void>> jobs;
  for (std::size_t begin = 0; begin < count; begin += chunk) {
    const std::size_t end = std::min(count, begin + chunk);
    jobs.push_back(std::async(std::launch::async, [&rows, &fn, begin, end] {
      for (std::size_t i = begin; i < end; ++i) rows[i] = fn(i);
    }));
  }
  for (auto& job : jobs) job.get();
  return rows;
}

std::vector<SweepRow> sweep_over(const SweepSpec& spec,
                                 const std::function<ScenarioResult(double, const MeasurementSet&)>& point) {
  validate(spec);
  const auto grid = uniform_grid(spec.eta_start, spec.eta_end, spec.points);
  std::vector<SweepRow> rows;
  for (const auto& set : resolve_sets(spec)) {
    auto block = evaluate_grid(grid.size(), [&](std::size_t i) { return to_row(point(grid[i], set)); });
    rows.insert(rows.end(), block.begin(), block.end());
  }
  return rows;
}

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string field;
  std::istringstream in(line);
  while (std::getline(in, field, ',')) fields.push_back(field);
  return fields;
}

double parse_number(const std::string& text, std::size_t line_no) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(text, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != text.size()) {
    throw std::invalid_argument("csv line " + std::to_string(line_no) + ": bad number '" + text + "'");
  }
  return v;
}

} // namespace

void validate(const SweepSpec& spec) {
  if (!(spec.eta_start >= 0.0 && spec.eta_start < spec.eta_end && spec.eta_end <= 1.0)) {
    throw std::invalid_argument("sweep: need 0 <= eta-start < eta-end <= 1");
  }
  if (spec.points < 2 || spec.points > kMaxGridPoints) {
    throw std::invalid_argument("sweep: points must be in [2, " + std::to_string(kMaxGridPoints) + "]");
  }
  if (spec.mode == SweepMode::fixed_b && !(spec.eta_b_fixed >= 0.0 && spec.eta_b_fixed <= 1.0)) {
    throw std::invalid_argument("sweep: eta-b must lie in [0,1]");
  }
  if (!spec.custom_set) {
    if (spec.n_list.empty()) throw std::invalid_argument("sweep: no measurement set requested");
    for (int n : spec.n_list) {
      if (std::find(kSupportedSetSizes.begin(), kSupportedSetSizes.end(), n) == kSupportedSetSizes.end()) {
        throw std::invalid_argument("sweep: unsupported n = " + std::to_string(n) +
                                    " (supported: 2, 3, 4, 6, 10)");
      }
    }
  } else if (spec.custom_set->size() > kMaxBoundSetSize) {
    throw std::invalid_argument("sweep: custom set larger than " + std::to_string(kMaxBoundSetSize) +
                                " directions");
  }
}

SweepRow to_row(const ScenarioResult& r) {
  return SweepRow{r.eta_a, r.eta_b, r.n, r.s11, r.s12, r.s21, r.s22, r.c_n, r.violations()};
}

std::vector<double> uniform_grid(double start, double end, std::size_t points) {
  if (points < 2) throw std::invalid_argument("uniform_grid: need at least two points");
  std::vector<double> grid(points);
  const double step = (end - start) / static_cast<double>(points - 1);
  for (std::size_t i = 0; i < points; ++i) grid[i] = start + step * static_cast<double>(i);
  grid.back() = end;
  return grid;
}

std::vector<SweepRow> run_symmetric_sweep(const SweepSpec& spec) {
  if (spec.mode != SweepMode::symmetric) {
    throw std::invalid_argument("run_symmetric_sweep: sweep is not in symmetric mode");
  }
  return sweep_over(spec, [&](double eta, const MeasurementSet& set) {
    return scenario(eta, eta, set, spec.options);
  });
}

std::vector<SweepRow> run_fixed_b_sweep(const SweepSpec& spec) {
  if (spec.mode != SweepMode::fixed_b) {
    throw std::invalid_argument("run_fixed_b_sweep: sweep is not in fixed-b mode");
  }
  return sweep_over(spec, [&](double eta_a, const MeasurementSet& set) {
    return scenario(eta_a, spec.eta_b_fixed, set, spec.options);
  });
}

std::vector<SweepRow> run_sweep(const SweepSpec& spec) {
  return spec.mode == SweepMode::symmetric ? run_symmetric_sweep(spec) : run_fixed_b_sweep(spec);
}

std::string violation_flags(const std::array<bool, 4>& v) {
  std::string s;
  for (bool b : v) s += b ? '1' : '0';
  return s;
}

void write_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  const auto old_precision = out.precision(12);
  out << kCsvHeader << '\n';
  for (const auto& r : rows) {
    out << r.eta_a << ',' << r.eta_b << ',' << r.n << ',' << r.s11 << ',' << r.s12 << ',' << r.s21
        << ',' << r.s22 << ',' << r.c_n << ',' << violation_flags(r.violations) << '\n';
  }
  out.precision(old_precision);
}

std::vector<SweepRow> read_csv(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line != kCsvHeader) {
    throw std::invalid_argument("csv: missing or unexpected header");
  }
  std::vector<SweepRow> rows;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.empty()) continue;
    const auto f = split_csv_line(line);
    if (f.size() != 9 || f[8].size() != 4 ||
        f[8].find_first_not_of("01") != std::string::npos) {
      throw std::invalid_argument("csv line " + std::to_string(line_no) + ": malformed row");
    }
    SweepRow r;
    r.eta_a = parse_number(f[0], line_no);
    r.eta_b = parse_number(f[1], line_no);
    r.n = static_cast<std::size_t>(parse_number(f[2], line_no));
    r.s11 = parse_number(f[3], line_no);
    r.s12 = parse_number(f[4], line_no);
    r.s21 = parse_number(f[5], line_no);
    r.s22 = parse_number(f[6], line_no);
    r.c_n = parse_number(f[7], line_no);
    for (std::size_t i = 0; i < 4; ++i) r.violations[i] = f[8][i] == '1';
    rows.push_back(r);
  }
  return rows;
}

void write_csv_file(const std::string& path, const std::vector<SweepRow>& rows) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError(path, "cannot open for writing");
  write_csv(out, rows);
  out.flush();
  if (!out) throw IoError(path, "write failed");
}

std::optional<ViolationWindow> find_violation_window(const MeasurementSet& set, double tol,
                                                     const SteeringOptions& options) {
  if (!(tol >= kMinWindowTol)) {
    throw std::invalid_argument("find_violation_window: tol must be at least 1e-10");
  }
  const double bound = lhs_bound(set);
  const auto excess = [&](double eta) { return scenario(eta, eta, set, options).min_s() - bound; };

  const auto grid = uniform_grid(0.0, 1.0, kWindowScanPoints);
  std::optional<std::size_t> first;
  std::size_t last = 0;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (excess(grid[i]) > 0.0) {
      if (!first) first = i;
      last = i;
    }
  }
  if (!first) return std::nullopt;

  // inside: excess > 0, outside: excess <= 0
  const auto bisect = [&](double inside, double outside) {
    while (std::abs(inside - outside) > tol) {
      const double mid = 0.5 * (inside + outside);
      (excess(mid) > 0.0 ? inside : outside) = mid;
    }
    return 0.5 * (inside + outside);
  };

  ViolationWindow w{};
  w.low = *first == 0 ? grid.front() : bisect(grid[*first], grid[*first - 1]);
  w.high = last + 1 == grid.size() ? grid.back() : bisect(grid[last], grid[last + 1]);
  return w;
}

std::optional<ViolationWindow> find_violation_window(int n, double tol, const SteeringOptions& options) {
  return find_violation_window(platonic_set(n), tol, options);
}

std::optional<ViolationWindow> grid_violation_window(const std::vector<SweepRow>& rows) {
  std::optional<ViolationWindow> w;
  for (const auto& r : rows) {
    if (!std::all_of(r.violations.begin(), r.violations.end(), [](bool b) { return b; })) continue;
    if (!w) {
      w = ViolationWindow{r.eta_a, r.eta_a};
    } else {
      w->low = std::min(w->low, r.eta_a);
      w->high = std::max(w->high, r.eta_a);
    }
  }
  return w;
}

} // namespace seqsteer
