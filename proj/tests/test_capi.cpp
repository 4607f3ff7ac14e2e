#include <cmath>
#include <cstring>
#include <string>
#include <vector>

#include "doctest.h"
#include "gupbell/gupbell.h"

namespace {

constexpr double kTsirelson = 2.8284271247461903;
constexpr double kPi = 3.14159265358979323846;

struct Scenario {
  gb_model* model = nullptr;
  gb_scenario* scenario = nullptr;
  ~Scenario() {
    gb_scenario_destroy(scenario);
    gb_model_destroy(model);
  }
};

void make(Scenario& s, gb_scenario_kind kind, double beta) {
  const double z[3] = {0.0, 0.0, 1.0};
  REQUIRE(gb_model_create_tilt(beta, z, &s.model) == GB_OK);
  gb_scenario_desc desc{};
  desc.kind = kind;
  desc.model = s.model;
  REQUIRE(gb_scenario_create(&desc, &s.scenario) == GB_OK);
}

}  // namespace

TEST_CASE("status strings and version") {
  for (int k = GB_OK; k <= GB_ERR_INTERNAL; ++k) {
    CHECK(std::strlen(gb_status_string(static_cast<gb_status>(k))) > 0);
  }
  CHECK(std::string(gb_version()) == "0.1.0");
}

TEST_CASE("null arguments are rejected with a message") {
  CHECK(gb_chsh_value(nullptr, nullptr, nullptr) == GB_ERR_INVALID_ARGUMENT);
  CHECK(std::string(gb_last_error()).find("NULL") != std::string::npos);
  gb_settings s{};
  CHECK(gb_canonical_settings(&s) == GB_OK);
  CHECK(std::string(gb_last_error()).empty());
  CHECK(gb_scan_rows(nullptr) == 0);
  CHECK(gb_scan_values(nullptr) == nullptr);
  gb_model_destroy(nullptr);
  gb_scenario_destroy(nullptr);
}

TEST_CASE("core errors map onto status codes") {
  gb_model* m = nullptr;
  CHECK(gb_model_create_self_cubic(-0.5, &m) == GB_ERR_INVALID_ARGUMENT);
  CHECK(std::string(gb_last_error()).find("out of scope") != std::string::npos);
  CHECK(m == nullptr);

  const gb_complex nonherm[4] = {{0, 0}, {1, 0}, {0, 0}, {0, 0}};
  CHECK(gb_model_create_custom(0.1, nonherm, &m) == GB_ERR_NOT_HERMITIAN);

  const gb_complex ident[4] = {{1, 0}, {0, 0}, {0, 0}, {1, 0}};
  REQUIRE(gb_model_create_custom(0.1, ident, &m) == GB_OK);
  gb_gup_observable obs{};
  CHECK(gb_gup_correct_observable({0.3, 0.0}, m, &obs) == GB_ERR_AMBIGUOUS);
  gb_model_destroy(m);

  gb_region r{};
  CHECK(gb_classify(NAN, &r) == GB_ERR_INVALID_ARGUMENT);

  gb_estimate zero{};
  zero.s_hat = 2.5;
  int alarm = 0;
  double sigma = 0.0;
  CHECK(gb_eavesdrop_test(&zero, &zero, 5.0, &alarm, &sigma) == GB_ERR_UNDEFINED);

  gb_complex h0[16];
  REQUIRE(gb_default_h0(h0) == GB_OK);
  gb_perturbed_state ps{};
  CHECK(gb_perturb_state(h0, h0, 1, 0.1, &ps) == GB_ERR_DEGENERATE);
}

TEST_CASE("linear algebra through the C API") {
  gb_complex h0[16];
  REQUIRE(gb_default_h0(h0) == GB_OK);
  double w[4];
  gb_complex v[16];
  REQUIRE(gb_eig_hermitian(h0, 4, w, v) == GB_OK);
  CHECK(w[0] == doctest::Approx(-2.0));
  CHECK(w[3] == doctest::Approx(2.0));

  gb_complex sx[4], sz[4], k[16];
  REQUIRE(gb_spin_observable({kPi / 2.0, 0.0}, sx) == GB_OK);
  REQUIRE(gb_spin_observable({0.0, 0.0}, sz) == GB_OK);
  REQUIRE(gb_kron(sz, 2, sx, 2, k) == GB_OK);
  CHECK(k[1].re == doctest::Approx(1.0));
  CHECK(k[11].re == doctest::Approx(-1.0));

  gb_complex phi[4];
  REQUIRE(gb_bell_state(GB_PHI_PLUS, phi) == GB_OK);
  double e = 0.0;
  gb_complex zz[16];
  REQUIRE(gb_kron(sz, 2, sz, 2, zz) == GB_OK);
  REQUIRE(gb_expect(phi, zz, 4, &e) == GB_OK);
  CHECK(e == doctest::Approx(1.0));
  CHECK(gb_bell_state(static_cast<gb_bell_kind>(9), phi) == GB_ERR_INVALID_ARGUMENT);
}

TEST_CASE("CHSH value and scenario handles") {
  gb_complex phi[4];
  REQUIRE(gb_bell_state(GB_PHI_PLUS, phi) == GB_OK);
  gb_settings s{};
  REQUIRE(gb_canonical_settings(&s) == GB_OK);
  double v = 0.0;
  REQUIRE(gb_chsh_value(phi, &s, &v) == GB_OK);
  CHECK(std::abs(v - kTsirelson) < 1e-12);

  Scenario s1;
  make(s1, GB_SCENARIO_S1, 0.1);
  gb_chsh_result r{};
  REQUIRE(gb_scenario_evaluate(s1.scenario, &s, &r) == GB_OK);
  CHECK(r.scenario == GB_SCENARIO_S1);
  CHECK(std::abs(r.value - 2.815738559973453) < 1e-12);
  CHECK(r.term_count == 4);
  CHECK(std::string(r.terms[0].label) == "alice_beta_prime");
  CHECK(std::abs(r.bound - 2.2498760808985221) < 1e-12);
  gb_perturbed_state ps{};
  CHECK(gb_scenario_perturbed(s1.scenario, &ps) == GB_ERR_INVALID_ARGUMENT);

  gb_chsh_result direct{};
  REQUIRE(gb_scenario1_chsh(phi, &s, s1.model, &direct) == GB_OK);
  CHECK(direct.value == r.value);

  Scenario s2;
  make(s2, GB_SCENARIO_S2, 0.1);
  REQUIRE(gb_scenario_perturbed(s2.scenario, &ps) == GB_OK);
  CHECK(ps.beta == 0.1);
  gb_chsh_result r2{};
  REQUIRE(gb_scenario2_chsh(&ps, &s, &r2) == GB_OK);
  CHECK(std::abs(r2.value - kTsirelson) < 1e-12);
  gb_chsh_result r3{};
  REQUIRE(gb_scenario3_chsh(&ps, &s, s2.model, &r3) == GB_OK);
  CHECK(r3.scenario == GB_SCENARIO_S3);

  gb_scenario_desc bad{};
  bad.kind = GB_SCENARIO_S1;
  gb_scenario* out = nullptr;
  CHECK(gb_scenario_create(&bad, &out) == GB_ERR_INVALID_ARGUMENT);
}

TEST_CASE("custom Hamiltonians through the scenario descriptor") {
  gb_complex h0[16];
  REQUIRE(gb_default_h0(h0) == GB_OK);
  // sx (x) sz + sz (x) I
  gb_complex hp[16] = {};
  const double sxsz[4][4] = {{0, 0, 1, 0}, {0, 0, 0, -1}, {1, 0, 0, 0}, {0, -1, 0, 0}};
  const double szi[4] = {1, 1, -1, -1};
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) hp[i * 4 + j].re = sxsz[i][j] + (i == j ? szi[i] : 0.0);
  }
  const double z[3] = {0.0, 0.0, 1.0};
  gb_model* m = nullptr;
  REQUIRE(gb_model_create_tilt(0.1, z, &m) == GB_OK);
  gb_scenario_desc desc{GB_SCENARIO_S2, m, nullptr, h0, hp, 0};
  gb_scenario* sc = nullptr;
  REQUIRE(gb_scenario_create(&desc, &sc) == GB_OK);
  gb_settings off{{0.0, 0.0}, {kPi / 3.0, 0.0}, {kPi / 5.0, 0.0}, {-kPi / 7.0, 0.0}};
  gb_chsh_result r{};
  REQUIRE(gb_scenario_evaluate(sc, &off, &r) == GB_OK);
  CHECK(std::abs(r.value - 2.5860196596975573) < 1e-12);
  gb_scenario_destroy(sc);
  gb_model_destroy(m);
}

TEST_CASE("scan, sweep and optimize handles") {
  Scenario qm;
  make(qm, GB_SCENARIO_QM, 0.1);
  const gb_axis axis{0.0, 2.0 * kPi, 201};
  gb_scan* scan = nullptr;
  REQUIRE(gb_grid_scan(qm.scenario, &axis, &axis, 0, &scan) == GB_OK);
  CHECK(gb_scan_rows(scan) == 201);
  CHECK(gb_scan_cols(scan) == 201);
  CHECK(gb_scan_theta1(scan)[200] == 2.0 * kPi);
  CHECK(gb_scan_count_regions(scan, 2.0) == 2);
  const double* vals = gb_scan_values(scan);
  double mx = -10;
  for (std::size_t i = 0; i < 201 * 201; ++i) mx = std::max(mx, vals[i]);
  CHECK(std::abs(mx - kTsirelson) < 1e-12);
  gb_scan_destroy(scan);

  const double betas[2] = {0.1, 0.5};
  const gb_scenario_kind kinds[2] = {GB_SCENARIO_QM, GB_SCENARIO_S1};
  const gb_axis theta{0.0, kPi, 721};
  gb_sweep* sweep = nullptr;
  REQUIRE(gb_beta_sweep(qm.scenario, betas, 2, &theta, kinds, 2, 1, &sweep) == GB_OK);
  CHECK(gb_sweep_curve_count(sweep) == 2);
  CHECK(gb_sweep_theta_count(sweep) == 721);
  CHECK(gb_sweep_beta(sweep, 1) == 0.5);
  REQUIRE(gb_sweep_series(sweep, 1, GB_SCENARIO_S1) != nullptr);
  CHECK(std::abs(gb_sweep_series(sweep, 1, GB_SCENARIO_S1)[90] - 1.6594823280071291) < 1e-12);
  CHECK(gb_sweep_series(sweep, 1, GB_SCENARIO_S3) == nullptr);
  CHECK(gb_sweep_series(sweep, 5, GB_SCENARIO_QM) == nullptr);
  gb_sweep_destroy(sweep);

  gb_optimize_options opt{};
  gb_optimize_options_default(&opt);
  CHECK(opt.restarts == 4);
  CHECK(opt.seed == 42);
  gb_optimum best{};
  REQUIRE(gb_optimize_angles(qm.scenario, &opt, 1, &best) == GB_OK);
  CHECK(std::abs(best.value - kTsirelson) < 1e-6);
}

TEST_CASE("shots, counts and security through the C API") {
  Scenario qm;
  make(qm, GB_SCENARIO_QM, 0.1);
  gb_settings s{};
  REQUIRE(gb_canonical_settings(&s) == GB_OK);
  const gb_shot_plan plan{100000, 42, 0.0};
  gb_estimate a{}, b{};
  REQUIRE(gb_estimate_chsh(qm.scenario, &s, &plan, 0, 1, &a) == GB_OK);
  REQUIRE(gb_estimate_chsh(qm.scenario, &s, &plan, 0, 4, &b) == GB_OK);
  CHECK(std::memcmp(&a, &b, sizeof a) == 0);
  CHECK(std::abs(a.s_hat - kTsirelson) < 6.0 * a.std_error);

  gb_estimate rebuilt{};
  REQUIRE(gb_estimate_from_counts(a.counts, &rebuilt) == GB_OK);
  CHECK(rebuilt.s_hat == a.s_hat);
  CHECK(rebuilt.std_error == a.std_error);

  gb_pair_counts empty[4] = {};
  CHECK(gb_estimate_from_counts(empty, &rebuilt) == GB_ERR_INVALID_ARGUMENT);

  gb_complex phi[4], obs[16];
  REQUIRE(gb_bell_state(GB_PHI_PLUS, phi) == GB_OK);
  REQUIRE(gb_spin_observable(s.a, obs) == GB_OK);
  REQUIRE(gb_spin_observable(s.a_prime, obs + 4) == GB_OK);
  REQUIRE(gb_spin_observable(s.b, obs + 8) == GB_OK);
  REQUIRE(gb_spin_observable(s.b_prime, obs + 12) == GB_OK);
  gb_estimate c{};
  REQUIRE(gb_estimate_chsh_observables(phi, obs, &plan, 1, &c) == GB_OK);
  CHECK(c.s_hat == a.s_hat);

  gb_complex rho[16];
  REQUIRE(gb_depolarize(phi, 0.2, rho) == GB_OK);
  CHECK(rho[0].re == doctest::Approx(0.8 * 0.5 + 0.05));
  double oa = 0, ob = 0;
  REQUIRE(gb_measure_pair(rho, obs, obs, 0.01, &oa, &ob) == GB_OK);
  CHECK(oa == ob);

  int mx = 0, mn = 0;
  gb_lhv_strategy table[16];
  REQUIRE(gb_lhv_max(&mx, &mn, table) == GB_OK);
  CHECK(mx == 2);
  CHECK(mn == -2);

  double bits = -1;
  int beyond = -1;
  REQUIRE(gb_minentropy_bound(2.0, &bits, &beyond) == GB_OK);
  CHECK(bits == 0.0);
  REQUIRE(gb_minentropy_bound(kTsirelson, &bits, &beyond) == GB_OK);
  CHECK(bits == 1.0);
  CHECK(beyond == 0);
  double margin = 0;
  REQUIRE(gb_violation_margin(2.5, &margin) == GB_OK);
  CHECK(margin == 0.5);

  gb_estimate base{}, seen{};
  base.s_hat = 2.9;
  base.std_error = 0.01;
  seen.s_hat = 2.7;
  seen.std_error = 0.01;
  gb_security_report rep{};
  REQUIRE(gb_security_report_build(&base, &seen, 5.0, &rep) == GB_OK);
  CHECK(rep.alarm == 1);
  CHECK(std::abs(rep.alarm_sigma - 14.142135623730951) < 1e-9);
  CHECK(rep.margin == doctest::Approx(0.7));

  gb_region region{};
  REQUIRE(gb_classify(3.0, &region) == GB_OK);
  CHECK(region == GB_REGION_SUPERQUANTUM);
  CHECK(std::string(gb_region_name(region)) == "superquantum");
}
