#pragma once

// Sharpness sweeps over the four-pair scenario, CSV output and the search for
// the interval where all four observer pairs violate the steering bound.

#include <array>
#include <cstddef>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "seqsteer/measurement.hpp"
#include "seqsteer/steering.hpp"

namespace seqsteer {

enum class SweepMode { symmetric, fixed_b };

inline constexpr std::size_t kDefaultGridPoints = 201;
inline constexpr std::size_t kMaxGridPoints = 100000;
inline constexpr double kDefaultFixedEtaB = 0.766;

struct SweepSpec {
  SweepMode mode = SweepMode::symmetric;
  std::vector<int> n_list{2, 3, 4, 6, 10};
  double eta_start = 0.0;
  double eta_end = 1.0;
  std::size_t points = kDefaultGridPoints;
  double eta_b_fixed = kDefaultFixedEtaB;
  std::string output_path;
  /// Replaces n_list when present.
  std::optional<MeasurementSet> custom_set;
  SteeringOptions options;
};

/// Throws std::invalid_argument describing the first violated constraint.
void validate(const SweepSpec& spec);

struct SweepRow {
  double eta_a = 0;
  double eta_b = 0;
  std::size_t n = 0;
  double s11 = 0;
  double s12 = 0;
  double s21 = 0;
  double s22 = 0;
  double c_n = 0;
  std::array<bool, 4> violations{};
};

SweepRow to_row(const ScenarioResult& r);

/// Uniform grid with exact endpoints.
std::vector<double> uniform_grid(double start, double end, std::size_t points);

/// scenario(eta, eta, n) per requested set, rows ordered by (n, eta).
std::vector<SweepRow> run_symmetric_sweep(const SweepSpec& spec);
/// scenario(eta_a, eta_b_fixed, n) over the eta_a grid, rows ordered by (n, eta_a).
std::vector<SweepRow> run_fixed_b_sweep(const SweepSpec& spec);
/// Dispatches on spec.mode.
std::vector<SweepRow> run_sweep(const SweepSpec& spec);

/// "1011"-style flags ordered pair11, pair12, pair21, pair22.
std::string violation_flags(const std::array<bool, 4>& v);

inline constexpr const char* kCsvHeader = "eta_a,eta_b,n,s11,s12,s21,s22,c_n,violations";

void write_csv(std::ostream& out, const std::vector<SweepRow>& rows);
std::vector<SweepRow> read_csv(std::istream& in);

class IoError : public std::runtime_error {
public:
  IoError(const std::string& path, const std::string& what)
      : std::runtime_error(path + ": " + what), path_(path) {}
  const std::string& path() const noexcept { return path_; }

private:
  std::string path_;
};

/// Throws IoError naming the path on failure.
void write_csv_file(const std::string& path, const std::vector<SweepRow>& rows);

struct ViolationWindow {
  double low;
  double high;
};

/// Interval of symmetric sharpness where min(S11,S12,S21,S22) > C_n.
///
/// The sign of min(S) - C_n is scanned on a 1001-point grid over [0,1]; the
/// edges of the outermost positive run are then bisected until the bracket is
/// narrower than tol. Returns nullopt when no scanned point violates.
std::optional<ViolationWindow> find_violation_window(const MeasurementSet& set, double tol,
                                                     const SteeringOptions& options = {});
std::optional<ViolationWindow> find_violation_window(int n, double tol,
                                                     const SteeringOptions& options = {});

/// First and last grid eta (eta_a) at which every pair violates, for rows of a
/// single set size.
std::optional<ViolationWindow> grid_violation_window(const std::vector<SweepRow>& rows);

} // namespace seqsteer
