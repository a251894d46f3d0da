#pragma once

// Sequential two-sided measurement pipeline on a qubit pair: conditional
// post-measurement states, assemblages, linear steering parameters, LHS
// bounds and the unread (averaged) measurement channel.

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

#include "seqsteer/linalg.hpp"
#include "seqsteer/measurement.hpp"

namespace seqsteer {

/// Validated 4x4 density matrix: Hermitian to 1e-12, unit trace to 1e-10,
/// smallest eigenvalue at least -1e-9.
class TwoQubitState {
public:
  explicit TwoQubitState(ComplexMatrix rho);

  const ComplexMatrix& rho() const noexcept { return rho_; }

  static constexpr double kMinEigenvalue = -1e-9;

private:
  ComplexMatrix rho_;
};

TwoQubitState singlet_state();

/// Expectation value Tr(rho * op) (real part).
double expectation(const TwoQubitState& state, const ComplexMatrix& op);

enum class Side { a, b };

struct ObserverConfig {
  Side side;
  double sharpness;
  MeasurementSet set;
};

/// Throws std::invalid_argument when sharpness is outside [0,1].
ObserverConfig make_observer(Side side, double sharpness, MeasurementSet set);

struct ConditionalState {
  ComplexMatrix rho;  // unnormalized
  double probability;
};

/// K_a (x) K_b rho K_a^dagger (x) K_b^dagger and its trace. An absent Kraus
/// pair means no measurement on that side: the identity acts and the outcome
/// argument for that side is ignored.
ConditionalState conditional_state(const TwoQubitState& state,
                                   const std::optional<KrausPair>& kraus_a, Outcome a,
                                   const std::optional<KrausPair>& kraus_b, Outcome b);

/// Unnormalized conditional states of the unmeasured side, indexed by the
/// measuring side's setting k and outcome.
class Assemblage {
public:
  Assemblage(Side measured_side, std::vector<std::array<ComplexMatrix, 2>> entries);

  Side measured_side() const noexcept { return measured_side_; }
  std::size_t size() const noexcept { return entries_.size(); }
  const ComplexMatrix& at(std::size_t k, Outcome o) const {
    return entries_.at(k)[o == Outcome::plus ? 0 : 1];
  }
  /// sum_a sigma_{a|k}
  ComplexMatrix marginal(std::size_t k) const { return at(k, Outcome::plus) + at(k, Outcome::minus); }

private:
  Side measured_side_;
  std::vector<std::array<ComplexMatrix, 2>> entries_;
};

/// For side A: sigma_{a|k} = tr_A((M_{a|k} (x) I) rho). Side B is the mirror
/// image, tracing out B.
Assemblage assemblage(const TwoQubitState& state, const ObserverConfig& cfg);

/// Largest violation of the assemblage invariants: PSD entries, identical
/// marginals across settings, unit-trace marginals. Returned as the worst
/// deviation so tests can compare against their own tolerance.
double assemblage_invariant_defect(const Assemblage& asm_);

/// LHS bound: max over sign patterns of lambda_max((1/n) sum a_k m_k.sigma).
/// Only sign patterns with a_0 = +1 are enumerated. Throws for n > 16.
double lhs_bound(const MeasurementSet& set);

inline constexpr std::size_t kMaxBoundSetSize = 16;

struct SteeringOptions {
  /// Multiplies the correlator so the anticorrelated singlet gives positive S.
  double corr_sign = -1.0;
};

/// S = corr_sign/n * sum_k sum_{a,b} sign(a) sign(b) p(a,b|k,k).
double steering_parameter(const TwoQubitState& state, const MeasurementSet& set, double eta_a,
                          double eta_b, const SteeringOptions& options = {});

/// Unread-measurement channel: uniform average over both sides' settings and
/// all outcomes of the conditional states. A missing side acts as identity.
/// At least one side must be configured.
TwoQubitState averaged_state(const TwoQubitState& state, const std::optional<ObserverConfig>& cfg_a,
                             const std::optional<ObserverConfig>& cfg_b);

struct ScenarioResult {
  double s11;
  double s12;
  double s21;
  double s22;
  double c_n;
  std::size_t n;
  double eta_a;
  double eta_b;

  double min_s() const noexcept;
  /// Bits pair11, pair12, pair21, pair22: S strictly above c_n.
  std::array<bool, 4> violations() const noexcept;
  bool all_violated() const noexcept;
};

/// Four observer pairs for the singlet: first-round observers measure with
/// eta_a / eta_b, second-round observers are sharp.
ScenarioResult scenario(double eta_a, double eta_b, const MeasurementSet& set,
                        const SteeringOptions& options = {});
ScenarioResult scenario(double eta_a, double eta_b, int n, const SteeringOptions& options = {});

} // namespace seqsteer
