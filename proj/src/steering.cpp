#include "seqsteer/steering.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace seqsteer {

namespace {

void require_sharpness(double eta, const char* what) {
  if (!(eta >= 0.0 && eta <= 1.0)) {
    throw std::invalid_argument(std::string(what) + ": sharpness must lie in [0,1]");
  }
}

const ComplexMatrix& kraus_or_identity(const std::optional<KrausPair>& kraus, Outcome o,
                                       const ComplexMatrix& identity) {
  return kraus ? (*kraus)[o] : identity;
}

// One Kraus pair per setting; an absent side is a single identity branch.
std::vector<std::optional<KrausPair>> side_krauses(const std::optional<ObserverConfig>& cfg) {
  std::vector<std::optional<KrausPair>> out;
  if (!cfg) {
    out.emplace_back(std::nullopt);
    return out;
  }
  for (const auto& m : cfg->set.directions()) out.emplace_back(kraus_pair(m, cfg->sharpness));
  return out;
}

std::size_t outcome_branches(const std::optional<KrausPair>& kraus) { return kraus ? 2 : 1; }

} // namespace

TwoQubitState::TwoQubitState(ComplexMatrix rho) : rho_(std::move(rho)) {
  if (rho_.dim() != 4) throw std::invalid_argument("TwoQubitState: density matrix must be 4x4");
  if (!is_hermitian(rho_, kTolerances.hermitian)) {
    throw std::invalid_argument("TwoQubitState: density matrix is not Hermitian");
  }
  if (std::abs(trace(rho_) - 1.0) > kTolerances.trace) {
    throw std::invalid_argument("TwoQubitState: trace differs from one");
  }
  if (min_eigenvalue(rho_) < kMinEigenvalue) {
    throw std::invalid_argument("TwoQubitState: density matrix has a negative eigenvalue");
  }
}

TwoQubitState singlet_state() {
  // |psi-> = (|01> - |10>)/sqrt(2), basis order |00>,|01>,|10>,|11>
  ComplexMatrix rho(4);
  rho(1, 1) = 0.5;
  rho(2, 2) = 0.5;
  rho(1, 2) = -0.5;
  rho(2, 1) = -0.5;
  return TwoQubitState(rho);
}

double expectation(const TwoQubitState& state, const ComplexMatrix& op) {
  return trace(state.rho() * op).real();
}

ObserverConfig make_observer(Side side, double sharpness, MeasurementSet set) {
  require_sharpness(sharpness, "make_observer");
  return ObserverConfig{side, sharpness, std::move(set)};
}

ConditionalState conditional_state(const TwoQubitState& state,
                                   const std::optional<KrausPair>& kraus_a, Outcome a,
                                   const std::optional<KrausPair>& kraus_b, Outcome b) {
  const ComplexMatrix id = pauli::identity();
  const ComplexMatrix k = tensor_product(kraus_or_identity(kraus_a, a, id),
                                         kraus_or_identity(kraus_b, b, id));
  ComplexMatrix out = k * state.rho() * adjoint(k);
  const double p = trace(out).real();
  return {std::move(out), p};
}

Assemblage::Assemblage(Side measured_side, std::vector<std::array<ComplexMatrix, 2>> entries)
    : measured_side_(measured_side), entries_(std::move(entries)) {
  if (entries_.empty()) throw std::invalid_argument("Assemblage: no settings");
}

Assemblage assemblage(const TwoQubitState& state, const ObserverConfig& cfg) {
  require_sharpness(cfg.sharpness, "assemblage");
  const ComplexMatrix id = pauli::identity();
  std::vector<std::array<ComplexMatrix, 2>> entries;
  entries.reserve(cfg.set.size());
  for (const auto& m : cfg.set.directions()) {
    const auto [m_plus, m_minus] = povm_effects(kraus_pair(m, cfg.sharpness));
    if (cfg.side == Side::a) {
      entries.push_back({partial_trace_a(tensor_product(m_plus, id) * state.rho()),
                         partial_trace_a(tensor_product(m_minus, id) * state.rho())});
    } else {
      entries.push_back({partial_trace_b(tensor_product(id, m_plus) * state.rho()),
                         partial_trace_b(tensor_product(id, m_minus) * state.rho())});
    }
  }
  return Assemblage(cfg.side, std::move(entries));
}

double assemblage_invariant_defect(const Assemblage& asm_) {
  double defect = 0.0;
  const ComplexMatrix reference = asm_.marginal(0);
  for (std::size_t k = 0; k < asm_.size(); ++k) {
    for (Outcome o : kOutcomes) {
      const ComplexMatrix& sigma = asm_.at(k, o);
      // entries are Hermitian only up to round-off; symmetrize before the
      // eigenvalue check
      const ComplexMatrix herm = 0.5 * (sigma + adjoint(sigma));
      defect = std::max(defect, max_abs_diff(sigma, herm));
      defect = std::max(defect, -min_eigenvalue(herm));
    }
    const ComplexMatrix marginal = asm_.marginal(k);
    defect = std::max(defect, max_abs_diff(marginal, reference));
    defect = std::max(defect, std::abs(trace(marginal) - 1.0));
  }
  return defect;
}

double lhs_bound(const MeasurementSet& set) {
  const std::size_t n = set.size();
  if (n > kMaxBoundSetSize) {
    throw std::invalid_argument("lhs_bound: set of size " + std::to_string(n) +
                                " exceeds the enumeration limit of " +
                                std::to_string(kMaxBoundSetSize));
  }
  std::vector<ComplexMatrix> terms;
  terms.reserve(n);
  for (const auto& m : set.directions()) terms.push_back(m.pauli_dot());

  const double inv_n = 1.0 / static_cast<double>(n);
  double best = -1.0;
  const std::size_t patterns = std::size_t{1} << (n - 1);
  for (std::size_t mask = 0; mask < patterns; ++mask) {
    ComplexMatrix g = terms[0];
    for (std::size_t k = 1; k < n; ++k) {
      if (mask & (std::size_t{1} << (k - 1))) {
        g -= terms[k];
      } else {
        g += terms[k];
      }
    }
    best = std::max(best, max_eigenvalue(inv_n * g));
  }
  return best;
}

double steering_parameter(const TwoQubitState& state, const MeasurementSet& set, double eta_a,
                          double eta_b, const SteeringOptions& options) {
  require_sharpness(eta_a, "steering_parameter");
  require_sharpness(eta_b, "steering_parameter");
  double total = 0.0;
  for (const auto& m : set.directions()) {
    const std::optional<KrausPair> ka = kraus_pair(m, eta_a);
    const std::optional<KrausPair> kb = kraus_pair(m, eta_b);
    for (Outcome a : kOutcomes) {
      for (Outcome b : kOutcomes) {
        total += sign_of(a) * sign_of(b) * conditional_state(state, ka, a, kb, b).probability;
      }
    }
  }
  // + 0.0 turns a negative zero into +0 for printing
  return options.corr_sign * total / static_cast<double>(set.size()) + 0.0;
}

TwoQubitState averaged_state(const TwoQubitState& state, const std::optional<ObserverConfig>& cfg_a,
                             const std::optional<ObserverConfig>& cfg_b) {
  if (!cfg_a && !cfg_b) {
    throw std::invalid_argument("averaged_state: at least one side must be configured");
  }
  if ((cfg_a && cfg_a->side != Side::a) || (cfg_b && cfg_b->side != Side::b)) {
    throw std::invalid_argument("averaged_state: observer configured for the wrong side");
  }
  if (cfg_a) require_sharpness(cfg_a->sharpness, "averaged_state");
  if (cfg_b) require_sharpness(cfg_b->sharpness, "averaged_state");

  const auto krauses_a = side_krauses(cfg_a);
  const auto krauses_b = side_krauses(cfg_b);

  ComplexMatrix sum(4);
  for (const auto& ka : krauses_a) {
    for (const auto& kb : krauses_b) {
      for (std::size_t ia = 0; ia < outcome_branches(ka); ++ia) {
        for (std::size_t ib = 0; ib < outcome_branches(kb); ++ib) {
          sum += conditional_state(state, ka, kOutcomes[ia], kb, kOutcomes[ib]).rho;
        }
      }
    }
  }
  const double settings = static_cast<double>(krauses_a.size() * krauses_b.size());
  sum *= 1.0 / settings;
  // restore exact Hermiticity lost to round-off in the products
  return TwoQubitState(0.5 * (sum + adjoint(sum)));
}

double ScenarioResult::min_s() const noexcept { return std::min({s11, s12, s21, s22}); }

std::array<bool, 4> ScenarioResult::violations() const noexcept {
  return {s11 > c_n, s12 > c_n, s21 > c_n, s22 > c_n};
}

bool ScenarioResult::all_violated() const noexcept {
  const auto v = violations();
  return std::all_of(v.begin(), v.end(), [](bool b) { return b; });
}

ScenarioResult scenario(double eta_a, double eta_b, const MeasurementSet& set,
                        const SteeringOptions& options) {
  require_sharpness(eta_a, "scenario");
  require_sharpness(eta_b, "scenario");
  const TwoQubitState initial = singlet_state();
  const ObserverConfig alice1{Side::a, eta_a, set};
  const ObserverConfig bob1{Side::b, eta_b, set};

  ScenarioResult r{};
  r.s11 = steering_parameter(initial, set, eta_a, eta_b, options);
  r.s21 = steering_parameter(averaged_state(initial, alice1, std::nullopt), set, 1.0, eta_b, options);
  r.s12 = steering_parameter(averaged_state(initial, std::nullopt, bob1), set, eta_a, 1.0, options);
  r.s22 = steering_parameter(averaged_state(initial, alice1, bob1), set, 1.0, 1.0, options);
  r.c_n = lhs_bound(set);
  r.n = set.size();
  r.eta_a = eta_a;
  r.eta_b = eta_b;
  return r;
}

ScenarioResult scenario(double eta_a, double eta_b, int n, const SteeringOptions& options) {
  return scenario(eta_a, eta_b, platonic_set(n), options);
}

} // namespace seqsteer
