#include "core/gup.hpp"

#include <cmath>
#include <string>

#include "core/error.hpp"

namespace gupbell {

namespace {

constexpr double kAxisUnitTol = 1e-12;
constexpr double kCustomHermitianTol = 1e-12;
constexpr double kBranchMismatchTol = 1e-8;
constexpr double kPerturbativeWarnLevel = 0.3;
constexpr double kHamiltonianHermitianTol = 1e-10;
constexpr double kMinimumGap = 1e-8;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

}  // namespace

GupModel::GupModel(double beta, CorrectionRule rule) : beta_(beta), rule_(std::move(rule)) {
  if (!std::isfinite(beta_)) {
    throw Error(ErrorCode::InvalidArgument, "beta must be finite");
  }
  if (beta_ < 0.0) {
    throw Error(ErrorCode::InvalidArgument, "negative beta models are out of scope");
  }
  std::visit(overloaded{
                 [](const SelfCubic&) {},
                 [](const Tilt& t) {
                   const double n = std::sqrt(t.m[0] * t.m[0] + t.m[1] * t.m[1] +
                                              t.m[2] * t.m[2]);
                   if (!std::isfinite(n) || std::abs(n - 1.0) > kAxisUnitTol) {
                     throw Error(ErrorCode::InvalidArgument,
                                 "tilt axis must be a unit vector (norm " +
                                     std::to_string(n) + ")");
                   }
                 },
                 [](const Custom& c) {
                   if (c.jp.dim() != 2) {
                     throw Error(ErrorCode::Dimension, "custom J_p must be 2x2");
                   }
                   if (!c.jp.is_hermitian(kCustomHermitianTol)) {
                     throw Error(ErrorCode::NotHermitian, "custom J_p must be Hermitian");
                   }
                 },
             },
             rule_);
}

ComplexMatrix GupModel::correction_for(const ComplexMatrix& j) const {
  return std::visit(overloaded{
                        [&](const SelfCubic&) { return j * j * j; },
                        [](const Tilt& t) { return dot_sigma(t.m); },
                        [](const Custom& c) { return c.jp; },
                    },
                    rule_);
}

GupObservable gup_correct_observable(const Direction& n, const GupModel& model) {
  const double beta = model.beta();
  const ComplexMatrix big_j = spin_observable(n);
  const EigenSystem j_eig = eig_hermitian(big_j);
  const double lambda_plus = j_eig.eigenvalues[1];

  GupObservable obs;
  obs.lambda_abs = std::abs(lambda_plus);
  obs.j_qm = big_j * (1.0 / obs.lambda_abs);
  obs.j_p = model.correction_for(big_j);
  obs.j_gup_unnorm = big_j + beta * obs.j_p;

  const auto v_minus = j_eig.vector(0);
  const auto v_plus = j_eig.vector(1);
  obs.lambda_p_minus = sandwich(v_minus, obs.j_p, v_minus).real();
  obs.lambda_p_plus = sandwich(v_plus, obs.j_p, v_plus).real();

  const EigenSystem gup_eig = eig_hermitian(obs.j_gup_unnorm);
  obs.lambda_gup_abs_minus = std::abs(gup_eig.eigenvalues[0]);
  obs.lambda_gup_abs = std::abs(gup_eig.eigenvalues[1]);
  if (std::abs(obs.lambda_gup_abs - obs.lambda_gup_abs_minus) > kBranchMismatchTol) {
    throw Error(ErrorCode::Ambiguous,
                "J_GUP branch magnitudes differ (" + std::to_string(obs.lambda_gup_abs) +
                    " vs " + std::to_string(obs.lambda_gup_abs_minus) +
                    "); normalization |lambda_GUP| is ambiguous");
  }
  if (!(obs.lambda_gup_abs > 0.0)) {
    throw Error(ErrorCode::Numeric, "J_GUP has a vanishing eigenvalue");
  }
  obs.j_gup = obs.j_gup_unnorm * (1.0 / obs.lambda_gup_abs);

  obs.lambda_gup_first_order = std::abs(lambda_plus + beta * obs.lambda_p_plus);
  obs.beta_prime = beta * obs.lambda_p_plus / lambda_plus;
  obs.beta_dprime = beta / obs.lambda_abs;
  obs.perturbative_warning = std::abs(obs.beta_prime) > kPerturbativeWarnLevel;
  return obs;
}

std::array<Complex, 4> PerturbedState::corrected() const {
  std::array<Complex, 4> out{};
  for (std::size_t i = 0; i < 4; ++i) out[i] = xi.amplitudes()[i] + beta * xi_p[i];
  return out;
}

PerturbedState perturb_state(const ComplexMatrix& h0, const ComplexMatrix& hp,
                             int level_index, double beta) {
  if (h0.dim() != 4 || hp.dim() != 4) {
    throw Error(ErrorCode::Dimension, "perturb_state needs 4x4 Hamiltonians");
  }
  if (!hp.is_hermitian(kHamiltonianHermitianTol)) {
    throw Error(ErrorCode::NotHermitian, "perturbation Hamiltonian not Hermitian");
  }
  if (level_index < 0 || level_index > 3) {
    throw Error(ErrorCode::InvalidArgument,
                "level index " + std::to_string(level_index) + " out of range");
  }
  if (!std::isfinite(beta) || beta < 0.0) {
    throw Error(ErrorCode::InvalidArgument, "beta must be finite and >= 0");
  }
  const EigenSystem eig = eig_hermitian(h0);
  const auto level = static_cast<std::size_t>(level_index);
  const double energy = eig.eigenvalues[level];
  for (std::size_t k = 0; k < 4; ++k) {
    if (k != level && std::abs(eig.eigenvalues[k] - energy) < kMinimumGap) {
      throw Error(ErrorCode::Degenerate,
                  "level " + std::to_string(level_index) +
                      " is degenerate; first-order correction undefined");
    }
  }

  const auto xi = eig.vector(level);
  const auto hp_xi = hp * std::span<const Complex>(xi);
  std::array<Complex, 4> xi_p{};
  for (std::size_t k = 0; k < 4; ++k) {
    if (k == level) continue;
    const auto vk = eig.vector(k);
    const Complex coeff = inner(vk, hp_xi) / (energy - eig.eigenvalues[k]);
    for (std::size_t i = 0; i < 4; ++i) xi_p[i] += coeff * vk[i];
  }
  return PerturbedState{PureState::normalized(xi), xi_p, beta};
}

ComplexMatrix default_h0() {
  return -1.0 * (kron(pauli::x(), pauli::x()) + kron(pauli::z(), pauli::z()));
}

ComplexMatrix default_hp(const GupModel& model) {
  const ComplexMatrix sx = pauli::x();
  const ComplexMatrix sz = pauli::z();
  const ComplexMatrix px = model.correction_for(sx);
  const ComplexMatrix pz = model.correction_for(sz);
  return -1.0 * (kron(px, sx) + kron(sx, px) + kron(pz, sz) + kron(sz, pz));
}

const char* scenario_name(Scenario s) {
  switch (s) {
    case Scenario::Qm: return "qm";
    case Scenario::S1: return "s1";
    case Scenario::S2: return "s2";
    case Scenario::S3: return "s3";
  }
  return "?";
}

double ChshResult::term(const std::string& label) const {
  for (const auto& t : terms) {
    if (t.label == label) return t.value;
  }
  throw Error(ErrorCode::InvalidArgument, "no term labelled " + label);
}

ChshResult qm_chsh(const PureState& state, const ChshSettings& s) {
  ChshResult r;
  r.scenario = Scenario::Qm;
  r.value = chsh_value(state, s);
  r.bound = kClassicalBound;
  return r;
}

ChshResult scenario1_chsh(const PureState& state, const ChshSettings& s,
                          const GupModel& model) {
  const GupObservable a = gup_correct_observable(s.a, model);
  const GupObservable ap = gup_correct_observable(s.a_prime, model);
  const GupObservable b = gup_correct_observable(s.b, model);
  const GupObservable bp = gup_correct_observable(s.b_prime, model);

  const auto psi = state.span();
  const ComplexMatrix b_sum = b.j_gup + bp.j_gup;
  const ComplexMatrix b_diff = b.j_gup - bp.j_gup;

  ChshResult r;
  r.scenario = Scenario::S1;
  r.beta = model.beta();
  r.value = expect(psi, kron(a.j_gup, b_sum) + kron(ap.j_gup, b_diff));

  // Correction brackets, signs and operator cases as in the substituted
  // inequality: the beta'' brackets carry the unnormalized A_GUP / B_GUP.
  const double alice_prime =
      -expect(psi, a.beta_prime * kron(a.j_gup, b_sum) +
                       ap.beta_prime * kron(ap.j_gup, b_diff));
  const double bob_prime =
      -expect(psi, kron(a.j_gup, b.beta_prime * b.j_gup + bp.beta_prime * bp.j_gup) +
                       kron(ap.j_gup, b.beta_prime * b.j_gup - bp.beta_prime * bp.j_gup));
  const double alice_dprime =
      expect(psi, a.beta_dprime * kron(a.j_gup_unnorm, b_sum) +
                      ap.beta_dprime * kron(ap.j_gup_unnorm, b_diff));
  const double bob_dprime = expect(
      psi, kron(a.j_gup, b.beta_dprime * b.j_gup_unnorm + bp.beta_dprime * bp.j_gup_unnorm) +
               kron(ap.j_gup,
                    b.beta_dprime * b.j_gup_unnorm - bp.beta_dprime * bp.j_gup_unnorm));

  r.terms = {{"alice_beta_prime", alice_prime},
             {"bob_beta_prime", bob_prime},
             {"alice_beta_dprime", alice_dprime},
             {"bob_beta_dprime", bob_dprime}};
  r.bound = kClassicalBound + alice_prime + bob_prime + alice_dprime + bob_dprime;
  return r;
}

ChshResult scenario2_chsh(const PerturbedState& ps, const ChshSettings& s) {
  const ComplexMatrix bell = bell_operator(s);
  const double qm = expect(ps.xi.span(), bell);
  const double cross = sandwich(ps.xi.span(), bell, ps.xi_p).real();

  ChshResult r;
  r.scenario = Scenario::S2;
  r.beta = ps.beta;
  r.value = qm + 2.0 * ps.beta * cross;
  r.bound = 2.0 * (1.0 + ps.beta * cross);
  r.terms = {{"qm", qm}, {"cross", cross}};
  return r;
}

ChshResult scenario3_chsh(const PerturbedState& ps, const ChshSettings& s,
                          const GupModel& model) {
  const ComplexMatrix bell_gup = chsh_combination(
      gup_correct_observable(s.a, model).j_gup,
      gup_correct_observable(s.a_prime, model).j_gup,
      gup_correct_observable(s.b, model).j_gup,
      gup_correct_observable(s.b_prime, model).j_gup);
  const auto xi_gup = ps.corrected();
  const double norm2 = norm_squared(xi_gup);

  ChshResult r;
  r.scenario = Scenario::S3;
  r.beta = model.beta();
  r.value = sandwich(xi_gup, bell_gup, xi_gup).real() / norm2;
  r.bound = kClassicalBound;
  r.norm_deviation = norm2 - 1.0;
  return r;
}

ScenarioEvaluator::ScenarioEvaluator(ScenarioConfig config) : config_(std::move(config)) {
  if (config_.scenario == Scenario::S2 || config_.scenario == Scenario::S3) {
    const ComplexMatrix h0 = config_.h0 ? *config_.h0 : default_h0();
    const ComplexMatrix hp = config_.hp ? *config_.hp : default_hp(config_.model);
    perturbed_ = perturb_state(h0, hp, config_.level, config_.model.beta());
  }
}

ChshResult ScenarioEvaluator::evaluate(const ChshSettings& s) const {
  switch (config_.scenario) {
    case Scenario::Qm: return qm_chsh(config_.state, s);
    case Scenario::S1: return scenario1_chsh(config_.state, s, config_.model);
    case Scenario::S2: return scenario2_chsh(*perturbed_, s);
    case Scenario::S3: return scenario3_chsh(*perturbed_, s, config_.model);
  }
  throw Error(ErrorCode::InvalidArgument, "unknown scenario");
}

PureState ScenarioEvaluator::sampling_state() const {
  if (perturbed_) {
    const auto v = perturbed_->corrected();
    return PureState::normalized(v);
  }
  return config_.state;
}

std::array<ComplexMatrix, 4> ScenarioEvaluator::sampling_observables(
    const ChshSettings& s, bool raw_eigenvalues) const {
  const std::array<Direction, 4> dirs{s.a, s.a_prime, s.b, s.b_prime};
  std::array<ComplexMatrix, 4> out;
  const bool corrected =
      config_.scenario == Scenario::S1 || config_.scenario == Scenario::S3;
  for (std::size_t i = 0; i < 4; ++i) {
    if (corrected) {
      const GupObservable o = gup_correct_observable(dirs[i], config_.model);
      out[i] = raw_eigenvalues ? o.j_gup_unnorm : o.j_gup;
    } else {
      out[i] = spin_observable(dirs[i]);
    }
  }
  return out;
}

}  // namespace gupbell
