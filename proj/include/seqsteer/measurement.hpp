#pragma once

// Measurement directions on the Bloch sphere and the sharpness-parameterized
// dichotomic measurements built on them.

#include <array>
#include <cstddef>
#include <iosfwd>
#include <span>
#include <utility>
#include <vector>

#include "seqsteer/linalg.hpp"

namespace seqsteer {

/// Unit 3-vector. Construction normalizes; a zero vector is rejected.
class BlochVector {
public:
  BlochVector(double x, double y, double z);

  double x() const noexcept { return x_; }
  double y() const noexcept { return y_; }
  double z() const noexcept { return z_; }

  double dot(const BlochVector& other) const noexcept {
    return x_ * other.x_ + y_ * other.y_ + z_ * other.z_;
  }
  BlochVector operator-() const noexcept { return BlochVector(-x_, -y_, -z_, Unchecked{}); }

  /// m . sigma
  ComplexMatrix pauli_dot() const;

private:
  struct Unchecked {};
  BlochVector(double x, double y, double z, Unchecked) noexcept : x_(x), y_(y), z_(z) {}

  double x_;
  double y_;
  double z_;
};

class MeasurementSet {
public:
  /// Arbitrary nonempty list of directions (user-supplied sets).
  explicit MeasurementSet(std::vector<BlochVector> directions);

  std::size_t size() const noexcept { return directions_.size(); }
  std::span<const BlochVector> directions() const noexcept { return directions_; }
  const BlochVector& operator[](std::size_t k) const { return directions_.at(k); }

private:
  std::vector<BlochVector> directions_;
};

inline constexpr std::array<int, 5> kSupportedSetSizes{2, 3, 4, 6, 10};

/// The Platonic-solid settings: one representative per antipodal pair,
/// normalized, in canonical row order. Throws std::invalid_argument for an
/// unsupported n, naming the supported values.
MeasurementSet platonic_set(int n);

/// Largest entrywise deviation of the second-moment tensor (1/n) sum m m^T
/// from I/3. Zero for a spherical 2-design.
double two_design_defect(const MeasurementSet& set);
bool is_spherical_two_design(const MeasurementSet& set, double tol = 1e-10);

/// Plain-text "x y z" per line, 17 significant digits.
void write_measurement_set(std::ostream& out, const MeasurementSet& set);
/// Parses the write_measurement_set format. Blank lines and '#' comments are
/// skipped. Rows must have norm within 1e-6 of one and are renormalized.
MeasurementSet read_measurement_set(std::istream& in);

enum class Outcome { plus, minus };
inline constexpr std::array<Outcome, 2> kOutcomes{Outcome::plus, Outcome::minus};

inline constexpr double sign_of(Outcome o) noexcept { return o == Outcome::plus ? 1.0 : -1.0; }

struct KrausPair {
  ComplexMatrix k_plus;
  ComplexMatrix k_minus;
  BlochVector direction;
  double sharpness;

  const ComplexMatrix& operator[](Outcome o) const noexcept {
    return o == Outcome::plus ? k_plus : k_minus;
  }
};

/// K(+/-) = [sqrt(1 +/- eta) P(m) + sqrt(1 -/+ eta) P(-m)] / sqrt(2) with
/// P(m) = (I + m.sigma)/2. Throws for eta outside [0,1].
KrausPair kraus_pair(const BlochVector& m, double eta);

/// (M+, M-) with M = K^dagger K.
std::pair<ComplexMatrix, ComplexMatrix> povm_effects(const KrausPair& kp);

/// eta * (m . sigma), the difference M+ - M-.
ComplexMatrix observable(const BlochVector& m, double eta);

} // namespace seqsteer
