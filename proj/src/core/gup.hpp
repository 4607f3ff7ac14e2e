#pragma once

#include <array>
#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "core/quantum.hpp"
#include "core/tensor.hpp"

namespace gupbell {

// Rules producing the first-order correction J_p from J = n.sigma.

/// J_p = J^3, the spin analogue of p -> p(1 + beta p^2). Degenerate for
/// qubits since (n.sigma)^3 = n.sigma.
struct SelfCubic {};

/// J_p = m.sigma for a fixed unit axis m.
struct Tilt {
  std::array<double, 3> m{0.0, 0.0, 1.0};
};

/// Caller-supplied 2x2 Hermitian J_p, identical for every direction.
struct Custom {
  ComplexMatrix jp;
};

using CorrectionRule = std::variant<SelfCubic, Tilt, Custom>;

/// GUP strength beta plus the rule generating J_p. Validated on construction.
class GupModel {
 public:
  GupModel() : GupModel(0.0, Tilt{}) {}
  GupModel(double beta, CorrectionRule rule);

  double beta() const noexcept { return beta_; }
  const CorrectionRule& rule() const noexcept { return rule_; }

  /// Same rule, different beta.
  GupModel with_beta(double beta) const { return GupModel(beta, rule_); }
  /// J_p for the observable J.
  ComplexMatrix correction_for(const ComplexMatrix& j) const;

 private:
  double beta_;
  CorrectionRule rule_;
};

struct GupObservable {
  ComplexMatrix j_qm;          // j = J / |lambda^J|
  ComplexMatrix j_p;           // J_p
  ComplexMatrix j_gup_unnorm;  // J_GUP = J + beta J_p
  ComplexMatrix j_gup;         // j_GUP = J_GUP / |lambda^J_GUP|
  double lambda_abs = 1.0;     // |lambda^J|
  double lambda_p_plus = 0.0;  // <+|J_p|+> on the lambda = +|lambda^J| branch
  double lambda_p_minus = 0.0; // <-|J_p|-> on the lambda = -|lambda^J| branch
  double lambda_gup_abs = 1.0;       // |eigenvalue of J_GUP|, positive branch
  double lambda_gup_abs_minus = 1.0; // |eigenvalue of J_GUP|, negative branch
  double lambda_gup_first_order = 1.0;  // |lambda^J + beta lambda^J_p|, positive branch
  double beta_prime = 0.0;   // beta lambda^J_p / lambda^J
  double beta_dprime = 0.0;  // beta / |lambda^J|
  bool perturbative_warning = false;  // |beta'| > 0.3
};

GupObservable gup_correct_observable(const Direction& n, const GupModel& model);

/// First-order Rayleigh-Schrodinger state: |xi_GUP> = |xi> + beta |xi>_p.
struct PerturbedState {
  PureState xi;
  std::array<Complex, 4> xi_p{};
  double beta = 0.0;

  std::array<Complex, 4> corrected() const;
};

PerturbedState perturb_state(const ComplexMatrix& h0, const ComplexMatrix& hp,
                             int level_index, double beta);

/// -(sx (x) sx + sz (x) sz); unique PhiPlus ground state, gap 2.
ComplexMatrix default_h0();
/// First-order change of default_h0() when every local factor J picks up
/// beta * model.correction_for(J).
ComplexMatrix default_hp(const GupModel& model);

enum class Scenario { Qm, S1, S2, S3 };

const char* scenario_name(Scenario s);

struct ChshTerm {
  std::string label;
  double value = 0.0;
};

struct ChshResult {
  Scenario scenario = Scenario::Qm;
  double value = 0.0;
  double bound = kClassicalBound;
  std::vector<ChshTerm> terms;
  double beta = 0.0;
  double norm_deviation = 0.0;  // ||xi_GUP||^2 - 1, scenario 3 only

  double term(const std::string& label) const;
};

/// Corrected operators, QM state.
ChshResult scenario1_chsh(const PureState& state, const ChshSettings& s,
                          const GupModel& model);
/// QM operators, perturbed state; first-order value and bound.
ChshResult scenario2_chsh(const PerturbedState& ps, const ChshSettings& s);
/// Corrected normalized operators on the (renormalized) perturbed state.
ChshResult scenario3_chsh(const PerturbedState& ps, const ChshSettings& s,
                          const GupModel& model);
ChshResult qm_chsh(const PureState& state, const ChshSettings& s);

/// Everything needed to evaluate one scenario at arbitrary settings.
struct ScenarioConfig {
  Scenario scenario = Scenario::Qm;
  GupModel model{};
  PureState state = bell_state(BellKind::PhiPlus);  // QM and scenario 1
  std::optional<ComplexMatrix> h0;  // scenarios 2/3; default_h0() if empty
  std::optional<ComplexMatrix> hp;  // default_hp(model) if empty
  int level = 0;
};

/// Pre-solves the perturbed state once, then evaluates cheaply per settings.
class ScenarioEvaluator {
 public:
  explicit ScenarioEvaluator(ScenarioConfig config);

  const ScenarioConfig& config() const noexcept { return config_; }
  const std::optional<PerturbedState>& perturbed() const noexcept { return perturbed_; }

  ChshResult evaluate(const ChshSettings& s) const;
  double value(const ChshSettings& s) const { return evaluate(s).value; }

  /// The normalized state a shot experiment for this scenario samples from.
  PureState sampling_state() const;
  /// The four observables (a, a', b, b') a shot experiment measures; with
  /// raw_eigenvalues the unnormalized J_GUP are used for GUP scenarios.
  std::array<ComplexMatrix, 4> sampling_observables(const ChshSettings& s,
                                                    bool raw_eigenvalues) const;

 private:
  ScenarioConfig config_;
  std::optional<PerturbedState> perturbed_;
};

}  // namespace gupbell
