#include "gupbell/gupbell.h"

#include <algorithm>
#include <cstring>
#include <exception>
#include <new>
#include <string>
#include <vector>

#include "core/appsec.hpp"
#include "core/error.hpp"
#include "core/gup.hpp"
#include "core/lab.hpp"
#include "core/quantum.hpp"
#include "core/shots.hpp"
#include "core/tensor.hpp"

using namespace gupbell;

struct gb_model {
  GupModel model;
};

struct gb_scenario {
  ScenarioEvaluator evaluator;
};

struct gb_scan {
  ScanGrid grid;
};

struct gb_sweep {
  std::vector<SweepCurve> curves;
  std::vector<double> theta;
};

namespace {

thread_local std::string g_last_error;

gb_status to_status(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return GB_ERR_INVALID_ARGUMENT;
    case ErrorCode::Dimension: return GB_ERR_DIMENSION;
    case ErrorCode::NotHermitian: return GB_ERR_NOT_HERMITIAN;
    case ErrorCode::Numeric: return GB_ERR_NUMERIC;
    case ErrorCode::Degenerate: return GB_ERR_DEGENERATE;
    case ErrorCode::Ambiguous: return GB_ERR_AMBIGUOUS;
    case ErrorCode::NotDichotomic: return GB_ERR_NOT_DICHOTOMIC;
    case ErrorCode::Undefined: return GB_ERR_UNDEFINED;
  }
  return GB_ERR_INTERNAL;
}

template <class Fn>
gb_status guarded(Fn&& fn) {
  try {
    fn();
    g_last_error.clear();
    return GB_OK;
  } catch (const Error& e) {
    g_last_error = e.what();
    return to_status(e.code());
  } catch (const std::bad_alloc&) {
    g_last_error = "out of memory";
    return GB_ERR_ALLOC;
  } catch (const std::exception& e) {
    g_last_error = e.what();
    return GB_ERR_INTERNAL;
  } catch (...) {
    g_last_error = "unknown failure";
    return GB_ERR_INTERNAL;
  }
}

void require(const void* p, const char* what) {
  if (p == nullptr) {
    throw Error(ErrorCode::InvalidArgument, std::string(what) + " must not be NULL");
  }
}

Complex from_c(gb_complex c) { return {c.re, c.im}; }
gb_complex to_c(Complex c) { return {c.real(), c.imag()}; }

ComplexMatrix matrix_from_c(const gb_complex* entries, std::size_t dim) {
  std::vector<Complex> v(dim * dim);
  for (std::size_t k = 0; k < v.size(); ++k) v[k] = from_c(entries[k]);
  return ComplexMatrix(dim, std::move(v));
}

void matrix_to_c(const ComplexMatrix& m, gb_complex* out) {
  const auto e = m.entries();
  for (std::size_t k = 0; k < e.size(); ++k) out[k] = to_c(e[k]);
}

PureState state_from_c(const gb_complex* amplitudes) {
  PureState::Amplitudes a{};
  for (std::size_t i = 0; i < 4; ++i) a[i] = from_c(amplitudes[i]);
  return PureState(a);
}

Direction direction_from_c(gb_direction d) { return Direction(d.theta, d.phi); }
gb_direction direction_to_c(const Direction& d) { return {d.theta(), d.phi()}; }

ChshSettings settings_from_c(const gb_settings* s) {
  require(s, "settings");
  return {direction_from_c(s->a), direction_from_c(s->a_prime), direction_from_c(s->b),
          direction_from_c(s->b_prime)};
}

gb_settings settings_to_c(const ChshSettings& s) {
  return {direction_to_c(s.a), direction_to_c(s.a_prime), direction_to_c(s.b),
          direction_to_c(s.b_prime)};
}

Scenario scenario_from_c(gb_scenario_kind k) {
  switch (k) {
    case GB_SCENARIO_QM: return Scenario::Qm;
    case GB_SCENARIO_S1: return Scenario::S1;
    case GB_SCENARIO_S2: return Scenario::S2;
    case GB_SCENARIO_S3: return Scenario::S3;
  }
  throw Error(ErrorCode::InvalidArgument, "unknown scenario kind");
}

gb_scenario_kind scenario_to_c(Scenario s) {
  switch (s) {
    case Scenario::Qm: return GB_SCENARIO_QM;
    case Scenario::S1: return GB_SCENARIO_S1;
    case Scenario::S2: return GB_SCENARIO_S2;
    case Scenario::S3: return GB_SCENARIO_S3;
  }
  return GB_SCENARIO_QM;
}

void result_to_c(const ChshResult& r, gb_chsh_result* out) {
  *out = gb_chsh_result{};
  out->scenario = scenario_to_c(r.scenario);
  out->value = r.value;
  out->bound = r.bound;
  out->beta = r.beta;
  out->norm_deviation = r.norm_deviation;
  out->term_count = std::min<std::size_t>(r.terms.size(), GB_MAX_TERMS);
  for (std::size_t i = 0; i < out->term_count; ++i) {
    std::strncpy(out->terms[i].label, r.terms[i].label.c_str(), GB_TERM_LABEL_SIZE - 1);
    out->terms[i].value = r.terms[i].value;
  }
}

PerturbedState perturbed_from_c(const gb_perturbed_state* ps) {
  require(ps, "perturbed state");
  std::array<Complex, 4> xi{};
  std::array<Complex, 4> xi_p{};
  for (std::size_t i = 0; i < 4; ++i) {
    xi[i] = from_c(ps->xi[i]);
    xi_p[i] = from_c(ps->xi_p[i]);
  }
  return PerturbedState{PureState(xi), xi_p, ps->beta};
}

void perturbed_to_c(const PerturbedState& ps, gb_perturbed_state* out) {
  for (std::size_t i = 0; i < 4; ++i) {
    out->xi[i] = to_c(ps.xi.amplitudes()[i]);
    out->xi_p[i] = to_c(ps.xi_p[i]);
  }
  out->beta = ps.beta;
}

AxisSpec axis_from_c(const gb_axis* a) {
  require(a, "axis");
  return {a->min, a->max, a->steps};
}

void estimate_to_c(const ChshEstimate& e, gb_estimate* out) {
  *out = gb_estimate{};
  out->s_hat = e.s_hat;
  out->std_error = e.std_error;
  for (std::size_t j = 0; j < 4; ++j) {
    out->correlators[j] = e.correlators[j];
    for (std::size_t q = 0; q < 4; ++q) out->counts[j].n[q] = e.counts[j].n[q];
    for (std::size_t q = 0; q < 2; ++q) {
      out->counts[j].values_a[q] = e.counts[j].values_a[q];
      out->counts[j].values_b[q] = e.counts[j].values_b[q];
    }
  }
}

CountsTable counts_from_c(const gb_pair_counts* counts) {
  require(counts, "counts");
  CountsTable table{};
  for (std::size_t j = 0; j < 4; ++j) {
    for (std::size_t q = 0; q < 4; ++q) table[j].n[q] = counts[j].n[q];
    for (std::size_t q = 0; q < 2; ++q) {
      table[j].values_a[q] = counts[j].values_a[q];
      table[j].values_b[q] = counts[j].values_b[q];
    }
    if (table[j].total() == 0) {
      throw Error(ErrorCode::InvalidArgument,
                  std::string("pair ") + kPairNames[j] + " has no shots");
    }
  }
  return table;
}

ChshEstimate estimate_from_c(const gb_estimate* e) {
  require(e, "estimate");
  ChshEstimate out;
  out.s_hat = e->s_hat;
  out.std_error = e->std_error;
  for (std::size_t j = 0; j < 4; ++j) out.correlators[j] = e->correlators[j];
  return out;
}

}  // namespace

extern "C" {

const char* gb_status_string(gb_status status) {
  switch (status) {
    case GB_OK: return "ok";
    case GB_ERR_INVALID_ARGUMENT: return "invalid argument";
    case GB_ERR_DIMENSION: return "dimension error";
    case GB_ERR_NOT_HERMITIAN: return "not Hermitian";
    case GB_ERR_NUMERIC: return "numeric error";
    case GB_ERR_DEGENERATE: return "degenerate level";
    case GB_ERR_AMBIGUOUS: return "ambiguous normalization";
    case GB_ERR_NOT_DICHOTOMIC: return "observable not dichotomic";
    case GB_ERR_UNDEFINED: return "undefined significance";
    case GB_ERR_ALLOC: return "out of memory";
    case GB_ERR_INTERNAL: return "internal error";
  }
  return "unknown status";
}

const char* gb_last_error(void) { return g_last_error.c_str(); }

const char* gb_version(void) { return "0.1.0"; }

gb_status gb_kron(const gb_complex* a, size_t dim_a, const gb_complex* b, size_t dim_b,
                  gb_complex* out) {
  return guarded([&] {
    require(a, "a");
    require(b, "b");
    require(out, "out");
    matrix_to_c(kron(matrix_from_c(a, dim_a), matrix_from_c(b, dim_b)), out);
  });
}

gb_status gb_eig_hermitian(const gb_complex* m, size_t dim, double* eigenvalues,
                           gb_complex* eigenvectors) {
  return guarded([&] {
    require(m, "matrix");
    require(eigenvalues, "eigenvalues");
    require(eigenvectors, "eigenvectors");
    const EigenSystem eig = eig_hermitian(matrix_from_c(m, dim));
    std::copy(eig.eigenvalues.begin(), eig.eigenvalues.end(), eigenvalues);
    matrix_to_c(eig.eigenvectors, eigenvectors);
  });
}

gb_status gb_expect(const gb_complex* psi, const gb_complex* op, size_t dim, double* out) {
  return guarded([&] {
    require(psi, "psi");
    require(op, "op");
    require(out, "out");
    std::vector<Complex> v(dim);
    for (std::size_t i = 0; i < dim; ++i) v[i] = from_c(psi[i]);
    *out = expect(v, matrix_from_c(op, dim));
  });
}

gb_status gb_bell_state(gb_bell_kind kind, gb_complex out[4]) {
  return guarded([&] {
    require(out, "out");
    if (kind < GB_PHI_PLUS || kind > GB_PSI_MINUS) {
      throw Error(ErrorCode::InvalidArgument, "unknown Bell state kind");
    }
    const PureState s = bell_state(static_cast<BellKind>(kind));
    for (std::size_t i = 0; i < 4; ++i) out[i] = to_c(s.amplitudes()[i]);
  });
}

gb_status gb_canonical_settings(gb_settings* out) {
  return guarded([&] {
    require(out, "out");
    *out = settings_to_c(ChshSettings::canonical());
  });
}

gb_status gb_spin_observable(gb_direction n, gb_complex out[4]) {
  return guarded([&] {
    require(out, "out");
    matrix_to_c(spin_observable(direction_from_c(n)), out);
  });
}

gb_status gb_bell_operator(const gb_settings* s, gb_complex out[16]) {
  return guarded([&] {
    require(out, "out");
    matrix_to_c(bell_operator(settings_from_c(s)), out);
  });
}

gb_status gb_chsh_value(const gb_complex state[4], const gb_settings* s, double* out) {
  return guarded([&] {
    require(state, "state");
    require(out, "out");
    *out = chsh_value(state_from_c(state), settings_from_c(s));
  });
}

gb_status gb_model_create_self_cubic(double beta, gb_model** out) {
  return guarded([&] {
    require(out, "out");
    *out = new gb_model{GupModel(beta, SelfCubic{})};
  });
}

gb_status gb_model_create_tilt(double beta, const double m[3], gb_model** out) {
  return guarded([&] {
    require(m, "m");
    require(out, "out");
    *out = new gb_model{GupModel(beta, Tilt{{m[0], m[1], m[2]}})};
  });
}

gb_status gb_model_create_custom(double beta, const gb_complex jp[4], gb_model** out) {
  return guarded([&] {
    require(jp, "jp");
    require(out, "out");
    *out = new gb_model{GupModel(beta, Custom{matrix_from_c(jp, 2)})};
  });
}

void gb_model_destroy(gb_model* model) { delete model; }

double gb_model_beta(const gb_model* model) { return model ? model->model.beta() : 0.0; }

gb_status gb_gup_correct_observable(gb_direction n, const gb_model* model,
                                    gb_gup_observable* out) {
  return guarded([&] {
    require(model, "model");
    require(out, "out");
    const GupObservable o = gup_correct_observable(direction_from_c(n), model->model);
    *out = gb_gup_observable{};
    matrix_to_c(o.j_qm, out->j_qm);
    matrix_to_c(o.j_p, out->j_p);
    matrix_to_c(o.j_gup_unnorm, out->j_gup_unnorm);
    matrix_to_c(o.j_gup, out->j_gup);
    out->lambda_abs = o.lambda_abs;
    out->lambda_p_plus = o.lambda_p_plus;
    out->lambda_p_minus = o.lambda_p_minus;
    out->lambda_gup_abs = o.lambda_gup_abs;
    out->lambda_gup_abs_minus = o.lambda_gup_abs_minus;
    out->lambda_gup_first_order = o.lambda_gup_first_order;
    out->beta_prime = o.beta_prime;
    out->beta_dprime = o.beta_dprime;
    out->perturbative_warning = o.perturbative_warning ? 1 : 0;
  });
}

gb_status gb_perturb_state(const gb_complex h0[16], const gb_complex hp[16], int level,
                           double beta, gb_perturbed_state* out) {
  return guarded([&] {
    require(h0, "h0");
    require(hp, "hp");
    require(out, "out");
    perturbed_to_c(perturb_state(matrix_from_c(h0, 4), matrix_from_c(hp, 4), level, beta),
                   out);
  });
}

gb_status gb_default_h0(gb_complex out[16]) {
  return guarded([&] {
    require(out, "out");
    matrix_to_c(default_h0(), out);
  });
}

gb_status gb_default_hp(const gb_model* model, gb_complex out[16]) {
  return guarded([&] {
    require(model, "model");
    require(out, "out");
    matrix_to_c(default_hp(model->model), out);
  });
}

gb_status gb_scenario1_chsh(const gb_complex state[4], const gb_settings* s,
                            const gb_model* model, gb_chsh_result* out) {
  return guarded([&] {
    require(state, "state");
    require(model, "model");
    require(out, "out");
    result_to_c(scenario1_chsh(state_from_c(state), settings_from_c(s), model->model), out);
  });
}

gb_status gb_scenario2_chsh(const gb_perturbed_state* ps, const gb_settings* s,
                            gb_chsh_result* out) {
  return guarded([&] {
    require(out, "out");
    result_to_c(scenario2_chsh(perturbed_from_c(ps), settings_from_c(s)), out);
  });
}

gb_status gb_scenario3_chsh(const gb_perturbed_state* ps, const gb_settings* s,
                            const gb_model* model, gb_chsh_result* out) {
  return guarded([&] {
    require(model, "model");
    require(out, "out");
    result_to_c(scenario3_chsh(perturbed_from_c(ps), settings_from_c(s), model->model), out);
  });
}

gb_status gb_scenario_create(const gb_scenario_desc* desc, gb_scenario** out) {
  return guarded([&] {
    require(desc, "desc");
    require(out, "out");
    ScenarioConfig cfg;
    cfg.scenario = scenario_from_c(desc->kind);
    if (desc->model != nullptr) {
      cfg.model = desc->model->model;
    } else if (cfg.scenario != Scenario::Qm) {
      throw Error(ErrorCode::InvalidArgument, "GUP scenarios need a model");
    }
    if (desc->state != nullptr) cfg.state = state_from_c(desc->state);
    if (desc->h0 != nullptr) cfg.h0 = matrix_from_c(desc->h0, 4);
    if (desc->hp != nullptr) cfg.hp = matrix_from_c(desc->hp, 4);
    cfg.level = desc->level;
    *out = new gb_scenario{ScenarioEvaluator(std::move(cfg))};
  });
}

void gb_scenario_destroy(gb_scenario* scenario) { delete scenario; }

gb_status gb_scenario_evaluate(const gb_scenario* scenario, const gb_settings* s,
                               gb_chsh_result* out) {
  return guarded([&] {
    require(scenario, "scenario");
    require(out, "out");
    result_to_c(scenario->evaluator.evaluate(settings_from_c(s)), out);
  });
}

gb_status gb_scenario_perturbed(const gb_scenario* scenario, gb_perturbed_state* out) {
  return guarded([&] {
    require(scenario, "scenario");
    require(out, "out");
    const auto& ps = scenario->evaluator.perturbed();
    if (!ps) {
      throw Error(ErrorCode::InvalidArgument, "scenario has no perturbed state");
    }
    perturbed_to_c(*ps, out);
  });
}

gb_status gb_two_angle_settings(double theta1, double theta2, gb_settings* out) {
  return guarded([&] {
    require(out, "out");
    *out = settings_to_c(two_angle_settings(theta1, theta2));
  });
}

gb_status gb_sweep_settings(double theta, gb_settings* out) {
  return guarded([&] {
    require(out, "out");
    *out = settings_to_c(sweep_settings(theta));
  });
}

gb_status gb_grid_scan(const gb_scenario* scenario, const gb_axis* theta1,
                       const gb_axis* theta2, unsigned threads, gb_scan** out) {
  return guarded([&] {
    require(scenario, "scenario");
    require(out, "out");
    *out = new gb_scan{
        grid_scan(scenario->evaluator, axis_from_c(theta1), axis_from_c(theta2), threads)};
  });
}

void gb_scan_destroy(gb_scan* scan) { delete scan; }
size_t gb_scan_rows(const gb_scan* scan) { return scan ? scan->grid.theta1_axis.size() : 0; }
size_t gb_scan_cols(const gb_scan* scan) { return scan ? scan->grid.theta2_axis.size() : 0; }
const double* gb_scan_theta1(const gb_scan* scan) {
  return scan ? scan->grid.theta1_axis.data() : nullptr;
}
const double* gb_scan_theta2(const gb_scan* scan) {
  return scan ? scan->grid.theta2_axis.data() : nullptr;
}
const double* gb_scan_values(const gb_scan* scan) {
  return scan ? scan->grid.values.data() : nullptr;
}
size_t gb_scan_count_regions(const gb_scan* scan, double threshold) {
  return scan ? count_regions_above(scan->grid, threshold) : 0;
}

gb_status gb_beta_sweep(const gb_scenario* base, const double* betas, size_t n_betas,
                        const gb_axis* theta, const gb_scenario_kind* kinds, size_t n_kinds,
                        unsigned threads, gb_sweep** out) {
  return guarded([&] {
    require(base, "base");
    require(out, "out");
    if (n_betas > 0) require(betas, "betas");
    if (n_kinds > 0) require(kinds, "kinds");
    std::vector<Scenario> scenarios;
    for (std::size_t k = 0; k < n_kinds; ++k) scenarios.push_back(scenario_from_c(kinds[k]));
    auto curves = beta_sweep(base->evaluator.config(),
                             std::vector<double>(betas, betas + n_betas), axis_from_c(theta),
                             scenarios, threads);
    std::vector<double> axis = axis_from_c(theta).values();
    *out = new gb_sweep{std::move(curves), std::move(axis)};
  });
}

void gb_sweep_destroy(gb_sweep* sweep) { delete sweep; }
size_t gb_sweep_curve_count(const gb_sweep* sweep) { return sweep ? sweep->curves.size() : 0; }
size_t gb_sweep_theta_count(const gb_sweep* sweep) { return sweep ? sweep->theta.size() : 0; }
const double* gb_sweep_theta(const gb_sweep* sweep) {
  return sweep ? sweep->theta.data() : nullptr;
}
double gb_sweep_beta(const gb_sweep* sweep, size_t curve) {
  return sweep && curve < sweep->curves.size() ? sweep->curves[curve].beta : 0.0;
}
const double* gb_sweep_series(const gb_sweep* sweep, size_t curve, gb_scenario_kind kind) {
  if (!sweep || curve >= sweep->curves.size()) return nullptr;
  for (const auto& [scenario, values] : sweep->curves[curve].series) {
    if (scenario_to_c(scenario) == kind) return values.data();
  }
  return nullptr;
}

void gb_optimize_options_default(gb_optimize_options* out) {
  if (!out) return;
  const OptimizeOptions d;
  out->restarts = d.restarts;
  out->seed = d.seed;
  out->full_sphere = d.full_sphere ? 1 : 0;
  out->coarse_points = d.coarse_points;
  out->max_evaluations = d.max_evaluations;
  out->tolerance = d.tolerance;
}

gb_status gb_optimize_angles(const gb_scenario* scenario, const gb_optimize_options* options,
                             unsigned threads, gb_optimum* out) {
  return guarded([&] {
    require(scenario, "scenario");
    require(out, "out");
    OptimizeOptions opt;
    if (options != nullptr) {
      opt.restarts = options->restarts;
      opt.seed = options->seed;
      opt.full_sphere = options->full_sphere != 0;
      opt.coarse_points = options->coarse_points;
      opt.max_evaluations = options->max_evaluations;
      opt.tolerance = options->tolerance;
    }
    const Optimum best = optimize_angles(scenario->evaluator, opt, threads);
    out->settings = settings_to_c(best.settings);
    out->value = best.value;
    out->coarse_value = best.coarse_value;
    out->evaluations = best.evaluations;
    out->best_restart = best.best_restart;
    out->budget_exhausted = best.budget_exhausted ? 1 : 0;
  });
}

gb_status gb_classify(double s, gb_region* out) {
  return guarded([&] {
    require(out, "out");
    *out = static_cast<gb_region>(classify(s));
  });
}

const char* gb_region_name(gb_region region) {
  if (region < GB_REGION_CLASSICAL || region > GB_REGION_UNPHYSICAL) return "?";
  return region_name(static_cast<Region>(region));
}

gb_status gb_depolarize(const gb_complex state[4], double p, gb_complex rho[16]) {
  return guarded([&] {
    require(state, "state");
    require(rho, "rho");
    matrix_to_c(depolarize(state_from_c(state), p).matrix(), rho);
  });
}

gb_status gb_measure_pair(const gb_complex rho[16], const gb_complex obs_a[4],
                          const gb_complex obs_b[4], double draw, double* out_a,
                          double* out_b) {
  return guarded([&] {
    require(rho, "rho");
    require(obs_a, "obs_a");
    require(obs_b, "obs_b");
    require(out_a, "out_a");
    require(out_b, "out_b");
    const PairOutcome o = measure_pair(DensityMatrix(matrix_from_c(rho, 4)),
                                       matrix_from_c(obs_a, 2), matrix_from_c(obs_b, 2), draw);
    *out_a = o.a;
    *out_b = o.b;
  });
}

gb_status gb_estimate_chsh(const gb_scenario* scenario, const gb_settings* s,
                           const gb_shot_plan* plan, int raw_eigenvalues, unsigned threads,
                           gb_estimate* out) {
  return guarded([&] {
    require(scenario, "scenario");
    require(plan, "plan");
    require(out, "out");
    const ChshSettings settings = settings_from_c(s);
    const ShotPlan p{plan->shots_per_pair, plan->seed, plan->noise_p};
    estimate_to_c(estimate_chsh(scenario->evaluator.sampling_state(),
                                scenario->evaluator.sampling_observables(
                                    settings, raw_eigenvalues != 0),
                                p, threads),
                  out);
  });
}

gb_status gb_estimate_chsh_observables(const gb_complex state[4],
                                       const gb_complex observables[16],
                                       const gb_shot_plan* plan, unsigned threads,
                                       gb_estimate* out) {
  return guarded([&] {
    require(state, "state");
    require(observables, "observables");
    require(plan, "plan");
    require(out, "out");
    std::array<ComplexMatrix, 4> obs;
    for (std::size_t i = 0; i < 4; ++i) obs[i] = matrix_from_c(observables + 4 * i, 2);
    const ShotPlan p{plan->shots_per_pair, plan->seed, plan->noise_p};
    estimate_to_c(estimate_chsh(state_from_c(state), obs, p, threads), out);
  });
}

gb_status gb_estimate_from_counts(const gb_pair_counts counts[4], gb_estimate* out) {
  return guarded([&] {
    require(out, "out");
    estimate_to_c(ChshEstimate::from_counts(counts_from_c(counts)), out);
  });
}

gb_status gb_lhv_max(int* max_s, int* min_s, gb_lhv_strategy table[16]) {
  return guarded([&] {
    const LhvTable t = lhv_max();
    if (max_s) *max_s = t.max_s;
    if (min_s) *min_s = t.min_s;
    if (table) {
      for (std::size_t k = 0; k < 16; ++k) {
        for (std::size_t q = 0; q < 4; ++q) table[k].assignment[q] = t.strategies[k].assignment[q];
        table[k].s = t.strategies[k].s;
      }
    }
  });
}

gb_status gb_violation_margin(double s, double* out) {
  return guarded([&] {
    require(out, "out");
    *out = violation_margin(s);
  });
}

gb_status gb_minentropy_bound(double s, double* bits, int* beyond_quantum) {
  return guarded([&] {
    require(bits, "bits");
    const MinEntropy h = minentropy_bound(s);
    *bits = h.bits;
    if (beyond_quantum) *beyond_quantum = h.beyond_quantum ? 1 : 0;
  });
}

gb_status gb_eavesdrop_test(const gb_estimate* baseline, const gb_estimate* observed,
                            double k_sigma, int* alarm, double* drop_sigma) {
  return guarded([&] {
    const EavesdropVerdict v =
        eavesdrop_test(estimate_from_c(baseline), estimate_from_c(observed), k_sigma);
    if (alarm) *alarm = v.alarm ? 1 : 0;
    if (drop_sigma) *drop_sigma = v.drop_sigma;
  });
}

gb_status gb_security_report_build(const gb_estimate* baseline, const gb_estimate* observed,
                                   double k_sigma, gb_security_report* out) {
  return guarded([&] {
    require(out, "out");
    const SecurityReport r =
        security_report(estimate_from_c(baseline), estimate_from_c(observed), k_sigma);
    out->s_observed = r.s_observed;
    out->s_baseline = r.s_baseline;
    out->margin = r.margin;
    out->minentropy_bits = r.minentropy_bits;
    out->beyond_quantum = r.beyond_quantum ? 1 : 0;
    out->alarm = r.alarm ? 1 : 0;
    out->alarm_sigma = r.alarm_sigma;
    out->k_sigma = r.k_sigma;
  });
}

}  // extern "C"
