#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "seqsteer/measurement.hpp"
#include "seqsteer/steering.hpp"
#include "seqsteer/sweep.hpp"

namespace seqsteer::cli {

namespace {

int window_digits(double tol) {
  return std::clamp(static_cast<int>(std::ceil(-std::log10(tol))), 1, 12);
}

std::string set_label(const SweepSpec& spec, const MeasurementSet& set) {
  return spec.custom_set ? "custom (" + std::to_string(set.size()) + " directions)"
                         : "n=" + std::to_string(set.size());
}

std::vector<MeasurementSet> requested_sets(const SweepSpec& spec) {
  if (spec.custom_set) return {*spec.custom_set};
  std::vector<MeasurementSet> sets;
  for (int n : spec.n_list) sets.push_back(platonic_set(n));
  return sets;
}

} // namespace

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Steering parameters of a singlet shared by two sequential observers per qubit"};
  app.name("seqsteer-sweep");

  SweepSpec spec;
  std::string mode = "symmetric";
  std::vector<int> n_list;
  bool window = false;
  double tol = 1e-6;
  std::string set_file;
  bool dump_set = false;
  bool no_corr_sign = false;

  const std::map<std::string, SweepMode> modes{{"symmetric", SweepMode::symmetric},
                                               {"fixed-b", SweepMode::fixed_b}};
  auto* mode_opt = app.add_option("--mode", mode, "Sweep eta_a = eta_b, or eta_a at fixed eta_b")
                       ->check(CLI::IsMember({"symmetric", "fixed-b"}));
  app.add_option("--n", n_list, "Measurement set size (repeatable)")
      ->check(CLI::IsMember({2, 3, 4, 6, 10}));
  app.add_option("--eta-start", spec.eta_start, "First grid sharpness")->capture_default_str();
  app.add_option("--eta-end", spec.eta_end, "Last grid sharpness")->capture_default_str();
  app.add_option("--points", spec.points, "Grid points")->capture_default_str();
  app.add_option("--eta-b", spec.eta_b_fixed, "Bob_1 sharpness in fixed-b mode")->capture_default_str();
  auto* out_opt = app.add_option("--out", spec.output_path, "CSV output path (stdout if omitted)");
  app.add_flag("--window", window, "Report the interval where all four pairs violate");
  app.add_option("--tol", tol, "Window bisection tolerance")->capture_default_str();
  app.add_option("--set-file", set_file, "Measurement set file, one \"x y z\" per line");
  app.add_flag("--dump-set", dump_set, "Print the measurement set(s) and exit");
  app.add_flag("--no-corr-sign", no_corr_sign, "Report raw correlators without the sign flip");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitBadArguments;
  }

  spec.mode = modes.at(mode);
  if (!n_list.empty()) spec.n_list = n_list;
  if (no_corr_sign) spec.options.corr_sign = 1.0;

  try {
    if (!set_file.empty()) {
      std::ifstream in(set_file);
      if (!in) throw IoError(set_file, "cannot open measurement set");
      spec.custom_set = read_measurement_set(in);
      if (!is_spherical_two_design(*spec.custom_set)) {
        err << "warning: " << set_file
            << " is not a spherical 2-design; results will depend on the set\n";
      }
    }

    if (dump_set) {
      for (const auto& set : requested_sets(spec)) {
        out << "# " << set_label(spec, set) << '\n';
        write_measurement_set(out, set);
      }
      return kExitOk;
    }

    validate(spec);

    if (window) {
      const int digits = window_digits(tol);
      for (const auto& set : requested_sets(spec)) {
        const auto w = find_violation_window(set, tol, spec.options);
        out << set_label(spec, set) << " window: ";
        if (w) {
          out << std::fixed << std::setprecision(digits) << '[' << w->low << ", " << w->high << "]\n"
              << std::defaultfloat;
        } else {
          out << "empty\n";
        }
      }
    }

    const bool sweep_requested = !window || out_opt->count() > 0 || mode_opt->count() > 0;
    if (sweep_requested) {
      const auto rows = run_sweep(spec);
      if (spec.output_path.empty()) {
        write_csv(out, rows);
      } else {
        write_csv_file(spec.output_path, rows);
      }
    }
  } catch (const IoError& e) {
    err << "error: " << e.what() << '\n';
    return kExitIo;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kExitBadArguments;
  }
  return kExitOk;
}

} // namespace seqsteer::cli
