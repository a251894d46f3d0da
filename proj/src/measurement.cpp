#include "seqsteer/measurement.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace seqsteer {

namespace {

constexpr double kReadNormTol = 1e-6;

std::string supported_sizes_text() {
  std::string s;
  for (int n : kSupportedSetSizes) {
    if (!s.empty()) s += ", ";
    s += std::to_string(n);
  }
  return s;
}

ComplexMatrix projector(const BlochVector& m) {
  return 0.5 * (pauli::identity() + m.pauli_dot());
}

} // namespace

BlochVector::BlochVector(double x, double y, double z) {
  const double norm = std::sqrt(x * x + y * y + z * z);
  if (!(norm > 0.0) || !std::isfinite(norm)) {
    throw std::invalid_argument("BlochVector: direction must be finite and nonzero");
  }
  x_ = x / norm;
  y_ = y / norm;
  z_ = z / norm;
}

ComplexMatrix BlochVector::pauli_dot() const {
  return {{z_, Complex(x_, -y_)}, {Complex(x_, y_), -z_}};
}

MeasurementSet::MeasurementSet(std::vector<BlochVector> directions)
    : directions_(std::move(directions)) {
  if (directions_.empty()) throw std::invalid_argument("MeasurementSet: no directions");
}

MeasurementSet platonic_set(int n) {
  const double a = (1.0 + std::sqrt(5.0)) / 2.0;
  switch (n) {
  case 2:
    return MeasurementSet({{1, 0, 1}, {1, 0, -1}});
  case 3:
    return MeasurementSet({{1, 0, 0}, {0, 1, 0}, {0, 0, 1}});
  case 4:
    return MeasurementSet({{1, 1, 1}, {1, -1, -1}, {1, 1, -1}, {1, -1, 1}});
  case 6:
    return MeasurementSet({{0, 1, a}, {0, 1, -a}, {1, a, 0}, {1, -a, 0}, {a, 0, 1}, {a, 0, -1}});
  case 10:
    return MeasurementSet({{0, 1 / a, a},
                           {0, 1 / a, -a},
                           {1 / a, a, 0},
                           {1 / a, -a, 0},
                           {a, 0, 1 / a},
                           {a, 0, -1 / a},
                           {1, 1, 1},
                           {1, -1, -1},
                           {1, 1, -1},
                           {1, -1, 1}});
  default:
    throw std::invalid_argument("platonic_set: unsupported n = " + std::to_string(n) +
                                " (supported: " + supported_sizes_text() + ")");
  }
}

double two_design_defect(const MeasurementSet& set) {
  double moment[3][3] = {};
  for (const auto& m : set.directions()) {
    const double v[3] = {m.x(), m.y(), m.z()};
    for (int i = 0; i < 3; ++i)
      for (int j = 0; j < 3; ++j) moment[i][j] += v[i] * v[j];
  }
  double defect = 0.0;
  for (int i = 0; i < 3; ++i) {
    for (int j = 0; j < 3; ++j) {
      const double target = i == j ? 1.0 / 3.0 : 0.0;
      defect = std::max(defect, std::abs(moment[i][j] / static_cast<double>(set.size()) - target));
    }
  }
  return defect;
}

bool is_spherical_two_design(const MeasurementSet& set, double tol) {
  return two_design_defect(set) <= tol;
}

void write_measurement_set(std::ostream& out, const MeasurementSet& set) {
  const auto old_precision = out.precision(17);
  for (const auto& m : set.directions()) out << m.x() << ' ' << m.y() << ' ' << m.z() << '\n';
  out.precision(old_precision);
}

MeasurementSet read_measurement_set(std::istream& in) {
  std::vector<BlochVector> directions;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;

    std::istringstream fields(line);
    double x = 0, y = 0, z = 0;
    std::string extra;
    if (!(fields >> x >> y >> z) || (fields >> extra)) {
      throw std::invalid_argument("measurement set line " + std::to_string(line_no) +
                                  ": expected three numbers \"x y z\"");
    }
    const double norm = std::sqrt(x * x + y * y + z * z);
    if (!(std::abs(norm - 1.0) <= kReadNormTol)) {
      throw std::invalid_argument("measurement set line " + std::to_string(line_no) +
                                  ": direction is not unit length");
    }
    directions.emplace_back(x, y, z);
  }
  if (directions.empty()) throw std::invalid_argument("measurement set: no directions found");
  return MeasurementSet(std::move(directions));
}

KrausPair kraus_pair(const BlochVector& m, double eta) {
  if (!(eta >= 0.0 && eta <= 1.0)) {
    throw std::invalid_argument("kraus_pair: sharpness must lie in [0,1]");
  }
  const ComplexMatrix p_up = projector(m);
  const ComplexMatrix p_down = projector(-m);
  const double hi = std::sqrt((1.0 + eta) / 2.0);
  const double lo = std::sqrt((1.0 - eta) / 2.0);
  return KrausPair{hi * p_up + lo * p_down, lo * p_up + hi * p_down, m, eta};
}

std::pair<ComplexMatrix, ComplexMatrix> povm_effects(const KrausPair& kp) {
  return {adjoint(kp.k_plus) * kp.k_plus, adjoint(kp.k_minus) * kp.k_minus};
}

ComplexMatrix observable(const BlochVector& m, double eta) {
  if (!(eta >= 0.0 && eta <= 1.0)) {
    throw std::invalid_argument("observable: sharpness must lie in [0,1]");
  }
  return eta * m.pauli_dot();
}

} // namespace seqsteer
