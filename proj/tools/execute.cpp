#include "execute.hpp"

#include <algorithm>
#include <array>
#include <filesystem>
#include <fstream>

#include "output.hpp"

namespace gbcli {

namespace fs = std::filesystem;
using nlohmann::json;
using nlohmann::ordered_json;

namespace {

constexpr std::array<gb_scenario_kind, 4> kAllKinds{GB_SCENARIO_QM, GB_SCENARIO_S1,
                                                     GB_SCENARIO_S2, GB_SCENARIO_S3};
constexpr std::array<const char*, 4> kOutcomeKeys{"++", "+-", "-+", "--"};

gb_axis to_axis(const AxisConfig& a) { return {a.min, a.max, a.steps}; }

gb_region region_of(double s) {
  gb_region r{};
  check(gb_classify(s, &r));
  return r;
}

ordered_json model_json(const RunConfig& cfg) {
  ordered_json m;
  switch (cfg.model.kind) {
    case ModelKind::SelfCubic:
      m["kind"] = "self-cubic";
      break;
    case ModelKind::Tilt:
      m["kind"] = "tilt";
      m["m"] = cfg.model.m;
      break;
    case ModelKind::Custom: {
      m["kind"] = "custom";
      ordered_json rows = ordered_json::array();
      for (std::size_t r = 0; r < 2; ++r) {
        ordered_json row = ordered_json::array();
        for (std::size_t c = 0; c < 2; ++c) {
          const gb_complex z = cfg.model.jp[r * 2 + c];
          row.push_back({z.re, z.im});
        }
        rows.push_back(row);
      }
      m["jp"] = rows;
      break;
    }
  }
  return m;
}

ordered_json direction_json(gb_direction d) { return {{"theta", d.theta}, {"phi", d.phi}}; }

ordered_json settings_json(const gb_settings& s) {
  return {{"a", direction_json(s.a)},
          {"a_prime", direction_json(s.a_prime)},
          {"b", direction_json(s.b)},
          {"b_prime", direction_json(s.b_prime)}};
}

ordered_json header(const RunConfig& cfg) {
  ordered_json doc;
  doc["command"] = command_name(cfg.command);
  doc["scenario"] = scenario_label(cfg.scenario);
  doc["beta"] = cfg.beta;
  doc["model"] = model_json(cfg);
  return doc;
}

std::string dump(const ordered_json& doc) { return doc.dump(2) + "\n"; }

Summary run_scan(const RunConfig& cfg, unsigned threads) {
  const ModelPtr model = make_model(cfg);
  const ScenarioPtr scenario = make_scenario(cfg, cfg.scenario, model.get());
  const gb_axis axis = to_axis(cfg.grid);
  gb_scan* raw = nullptr;
  check(gb_grid_scan(scenario.get(), &axis, &axis, threads, &raw));
  const ScanPtr scan(raw);

  const std::size_t rows = gb_scan_rows(scan.get());
  const std::size_t cols = gb_scan_cols(scan.get());
  const GridView view{{gb_scan_theta1(scan.get()), rows},
                      {gb_scan_theta2(scan.get()), cols},
                      {gb_scan_values(scan.get()), rows * cols}};
  const fs::path dir(cfg.out_dir);
  ensure_directory(dir);
  write_file(dir / "scan.csv", scan_csv(view));
  write_file(dir / "scan.svg", heatmap_svg(view));

  const double s = *std::max_element(view.values.begin(), view.values.end());
  return {s, region_of(s)};
}

Summary run_sweep(const RunConfig& cfg, unsigned threads) {
  const ModelPtr model = make_model(cfg);
  const ScenarioPtr base = make_scenario(cfg, GB_SCENARIO_QM, model.get());
  const gb_axis axis = to_axis(cfg.sweep_theta);
  gb_sweep* raw = nullptr;
  check(gb_beta_sweep(base.get(), cfg.betas.data(), cfg.betas.size(), &axis, kAllKinds.data(),
                      kAllKinds.size(), threads, &raw));
  const SweepPtr sweep(raw);

  SweepTable table;
  const std::size_t n = gb_sweep_theta_count(sweep.get());
  table.theta.assign(gb_sweep_theta(sweep.get()), gb_sweep_theta(sweep.get()) + n);
  double s_max = -1e300;
  for (std::size_t c = 0; c < gb_sweep_curve_count(sweep.get()); ++c) {
    table.betas.push_back(gb_sweep_beta(sweep.get(), c));
    auto& curve = table.series.emplace_back();
    for (gb_scenario_kind kind : kAllKinds) {
      const double* v = gb_sweep_series(sweep.get(), c, kind);
      curve.emplace_back(v, v + n);
      s_max = std::max(s_max, *std::max_element(v, v + n));
    }
  }
  const fs::path dir(cfg.out_dir);
  ensure_directory(dir);
  write_file(dir / "sweep.csv", sweep_csv(table));
  return {s_max, region_of(s_max)};
}

Summary run_optimize(const RunConfig& cfg, unsigned threads) {
  const ModelPtr model = make_model(cfg);
  const ScenarioPtr scenario = make_scenario(cfg, cfg.scenario, model.get());
  gb_optimize_options opt{};
  gb_optimize_options_default(&opt);
  opt.restarts = cfg.restarts;
  opt.seed = cfg.seed;
  opt.full_sphere = cfg.full_sphere ? 1 : 0;
  gb_optimum best{};
  check(gb_optimize_angles(scenario.get(), &opt, threads, &best));

  ordered_json doc = header(cfg);
  doc["settings"] = settings_json(best.settings);
  doc["value"] = best.value;
  doc["coarse_value"] = best.coarse_value;
  doc["evaluations"] = best.evaluations;
  doc["restarts"] = cfg.restarts;
  doc["best_restart"] = best.best_restart;
  doc["seed"] = cfg.seed;
  doc["full_sphere"] = cfg.full_sphere;
  doc["budget_exhausted"] = best.budget_exhausted != 0;
  const gb_region region = region_of(best.value);
  doc["region"] = gb_region_name(region);

  const fs::path dir(cfg.out_dir);
  ensure_directory(dir);
  write_file(dir / "optimum.json", dump(doc));
  return {best.value, region};
}

gb_estimate simulate(const RunConfig& cfg, std::uint64_t seed, double noise_p, unsigned threads,
                     double* s_exact) {
  const ModelPtr model = make_model(cfg);
  const ScenarioPtr scenario = make_scenario(cfg, cfg.scenario, model.get());
  const gb_shot_plan plan{cfg.shots, seed, noise_p};
  gb_estimate est{};
  check(gb_estimate_chsh(scenario.get(), &cfg.settings, &plan, cfg.raw_eigenvalues ? 1 : 0,
                         threads, &est));
  if (s_exact) {
    gb_chsh_result r{};
    check(gb_scenario_evaluate(scenario.get(), &cfg.settings, &r));
    *s_exact = r.value;
  }
  return est;
}

Summary run_sample(const RunConfig& cfg, unsigned threads) {
  double s_exact = 0.0;
  const gb_estimate est = simulate(cfg, cfg.seed, cfg.noise_p, threads, &s_exact);
  const fs::path dir(cfg.out_dir);
  ensure_directory(dir);
  write_file(dir / "sample.json", dump(sample_document(cfg, est, s_exact)));
  return {est.s_hat, region_of(est.s_hat)};
}

json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw CliError(kExitConfig, "cannot read '" + path + "'");
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw CliError(kExitConfig, "'" + path + "' is not valid JSON: " + e.what());
  }
}

Summary run_audit(const RunConfig& cfg, unsigned threads) {
  gb_estimate baseline{};
  gb_estimate observed{};
  ordered_json doc = header(cfg);
  if (!cfg.baseline.empty()) {
    baseline = estimate_from_document(read_json_file(cfg.baseline), cfg.baseline);
    observed = estimate_from_document(read_json_file(cfg.observed), cfg.observed);
    doc["baseline_source"] = cfg.baseline;
    doc["observed_source"] = cfg.observed;
  } else {
    baseline = simulate(cfg, cfg.seed, 0.0, threads, nullptr);
    observed = simulate(cfg, cfg.seed + 1, cfg.noise_p, threads, nullptr);
    doc["shots_per_pair"] = cfg.shots;
    doc["baseline_seed"] = cfg.seed;
    doc["observed_seed"] = cfg.seed + 1;
    doc["observed_noise_p"] = cfg.noise_p;
  }
  gb_security_report report{};
  check(gb_security_report_build(&baseline, &observed, cfg.k_sigma, &report));

  doc["s_baseline"] = report.s_baseline;
  doc["baseline_stderr"] = baseline.std_error;
  doc["s_observed"] = report.s_observed;
  doc["observed_stderr"] = observed.std_error;
  doc["margin"] = report.margin;
  doc["minentropy_bits"] = report.minentropy_bits;
  doc["beyond_quantum"] = report.beyond_quantum != 0;
  doc["alarm"] = report.alarm != 0;
  doc["alarm_sigma"] = report.alarm_sigma;
  doc["k_sigma"] = report.k_sigma;
  const gb_region region = region_of(report.s_observed);
  doc["region"] = gb_region_name(region);

  const fs::path dir(cfg.out_dir);
  ensure_directory(dir);
  write_file(dir / "audit.json", dump(doc));
  return {report.s_observed, region};
}

}  // namespace

ModelPtr make_model(const RunConfig& cfg) {
  gb_model* raw = nullptr;
  switch (cfg.model.kind) {
    case ModelKind::SelfCubic:
      check(gb_model_create_self_cubic(cfg.beta, &raw));
      break;
    case ModelKind::Tilt:
      check(gb_model_create_tilt(cfg.beta, cfg.model.m.data(), &raw));
      break;
    case ModelKind::Custom:
      check(gb_model_create_custom(cfg.beta, cfg.model.jp.data(), &raw));
      break;
  }
  return ModelPtr(raw);
}

ScenarioPtr make_scenario(const RunConfig& cfg, gb_scenario_kind kind, const gb_model* model) {
  std::array<gb_complex, 4> state{};
  check(gb_bell_state(cfg.state, state.data()));
  gb_scenario_desc desc{};
  desc.kind = kind;
  desc.model = model;
  desc.state = state.data();
  desc.h0 = cfg.h0 ? cfg.h0->data() : nullptr;
  desc.hp = cfg.hp ? cfg.hp->data() : nullptr;
  desc.level = cfg.level;
  gb_scenario* raw = nullptr;
  check(gb_scenario_create(&desc, &raw));
  return ScenarioPtr(raw);
}

ordered_json sample_document(const RunConfig& cfg, const gb_estimate& est, double s_exact) {
  static constexpr std::array<const char*, 4> kPairs{"ab", "ab'", "a'b", "a'b'"};
  ordered_json doc = header(cfg);
  doc["state"] = cfg.state == GB_PHI_PLUS    ? "phi+"
                 : cfg.state == GB_PHI_MINUS ? "phi-"
                 : cfg.state == GB_PSI_PLUS  ? "psi+"
                                             : "psi-";
  doc["settings"] = settings_json(cfg.settings);
  doc["shots_per_pair"] = cfg.shots;
  doc["seed"] = cfg.seed;
  doc["noise_p"] = cfg.noise_p;
  doc["raw_eigenvalues"] = cfg.raw_eigenvalues;
  ordered_json pairs = ordered_json::array();
  for (std::size_t j = 0; j < 4; ++j) {
    const gb_pair_counts& c = est.counts[j];
    ordered_json counts;
    for (std::size_t q = 0; q < 4; ++q) counts[kOutcomeKeys[q]] = c.n[q];
    pairs.push_back({{"pair", kPairs[j]},
                     {"counts", counts},
                     {"values_a", {c.values_a[0], c.values_a[1]}},
                     {"values_b", {c.values_b[0], c.values_b[1]}},
                     {"correlator", est.correlators[j]}});
  }
  doc["pairs"] = pairs;
  doc["s_hat"] = est.s_hat;
  doc["stderr"] = est.std_error;
  doc["s_exact"] = s_exact;
  doc["region"] = gb_region_name(region_of(est.s_hat));
  return doc;
}

gb_estimate estimate_from_document(const json& doc, const std::string& source) {
  const auto bad = [&](const std::string& path, const std::string& what) {
    return CliError(kExitConfig, "'" + source + "' at '" + path + "': " + what);
  };
  if (!doc.is_object() || !doc.contains("pairs")) throw bad("pairs", "missing");
  const json& pairs = doc["pairs"];
  if (!pairs.is_array() || pairs.size() != 4) throw bad("pairs", "expected 4 setting pairs");
  std::array<gb_pair_counts, 4> counts{};
  for (std::size_t j = 0; j < 4; ++j) {
    const std::string p = "pairs[" + std::to_string(j) + "]";
    const json& entry = pairs[j];
    if (!entry.is_object() || !entry.contains("counts")) throw bad(p + ".counts", "missing");
    for (std::size_t q = 0; q < 4; ++q) {
      const json& n = entry["counts"].value(kOutcomeKeys[q], json());
      if (!n.is_number_unsigned()) {
        throw bad(p + ".counts." + kOutcomeKeys[q], "expected a non-negative integer");
      }
      counts[j].n[q] = n.get<std::uint64_t>();
    }
    for (const char* key : {"values_a", "values_b"}) {
      double* dst = key[7] == 'a' ? counts[j].values_a : counts[j].values_b;
      if (!entry.contains(key)) {
        dst[0] = 1.0;
        dst[1] = -1.0;
        continue;
      }
      const json& v = entry[key];
      if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number()) {
        throw bad(p + "." + key, "expected [plus, minus]");
      }
      dst[0] = v[0].get<double>();
      dst[1] = v[1].get<double>();
    }
  }
  gb_estimate est{};
  check(gb_estimate_from_counts(counts.data(), &est));
  return est;
}

Summary execute(const RunConfig& cfg, unsigned threads) {
  switch (cfg.command) {
    case Command::Scan: return run_scan(cfg, threads);
    case Command::Sweep: return run_sweep(cfg, threads);
    case Command::Optimize: return run_optimize(cfg, threads);
    case Command::Sample: return run_sample(cfg, threads);
    case Command::Audit: return run_audit(cfg, threads);
  }
  return {};
}

std::string summary_line(Command command, const Summary& summary) {
  return std::string(command_name(command)) + " S=" + format_csv(summary.s) +
         " region=" + gb_region_name(summary.region);
}

}  // namespace gbcli
