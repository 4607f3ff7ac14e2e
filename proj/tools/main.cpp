#include <cstdint>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "capi.hpp"
#include "config.hpp"
#include "execute.hpp"

namespace {

using gbcli::Command;

template <class T>
void take(CLI::Option* opt, const T& value, std::optional<T>& dst) {
  if (opt->count() > 0) dst = value;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"gupbell: CHSH laboratory with first-order GUP corrections"};
  app.require_subcommand(1);
  app.fallthrough();

  std::string config_path;
  std::string scenario, model, m, betas, out, baseline, observed;
  double beta = 0.0, noise_p = 0.0, k_sigma = 0.0;
  std::size_t grid_steps = 0;
  std::uint64_t shots = 0, seed = 0;
  int restarts = 0;

  auto* o_config = app.add_option("--config", config_path, "JSON run configuration");
  auto* o_scenario = app.add_option("--scenario", scenario, "qm, s1, s2 or s3");
  auto* o_beta = app.add_option("--beta", beta, "GUP strength (>= 0)");
  auto* o_model = app.add_option("--model", model, "self-cubic, tilt or custom");
  auto* o_m = app.add_option("--m", m, "tilt axis x,y,z");
  auto* o_steps = app.add_option("--grid-steps", grid_steps, "points per scan axis");
  auto* o_betas = app.add_option("--betas", betas, "comma-separated sweep betas");
  auto* o_shots = app.add_option("--shots", shots, "shots per setting pair");
  auto* o_seed = app.add_option("--seed", seed, "random stream seed");
  auto* o_noise = app.add_option("--noise-p", noise_p, "depolarizing probability");
  auto* o_out = app.add_option("--out", out, "output directory");
  auto* o_k = app.add_option("--k-sigma", k_sigma, "eavesdrop alarm threshold");
  auto* o_base = app.add_option("--baseline", baseline, "audit: baseline sample.json");
  auto* o_obs = app.add_option("--observed", observed, "audit: observed sample.json");
  auto* o_restarts = app.add_option("--restarts", restarts, "optimize: seeded restarts");

  Command command = Command::Scan;
  const auto sub = [&](const char* name, const char* help, Command c) {
    app.add_subcommand(name, help)->callback([&command, c] { command = c; });
  };
  sub("scan", "two-angle grid scan -> scan.csv, scan.svg", Command::Scan);
  sub("sweep", "beta sweep of all scenarios -> sweep.csv", Command::Sweep);
  sub("optimize", "maximize S over measurement angles -> optimum.json", Command::Optimize);
  sub("sample", "finite-shot CHSH estimate -> sample.json", Command::Sample);
  sub("audit", "device-independent security report -> audit.json", Command::Audit);

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return gbcli::kExitConfig;
  }

  try {
    gbcli::FlagOverrides flags;
    take(o_scenario, scenario, flags.scenario);
    take(o_beta, beta, flags.beta);
    take(o_model, model, flags.model);
    take(o_m, m, flags.m);
    take(o_steps, grid_steps, flags.grid_steps);
    take(o_betas, betas, flags.betas);
    take(o_shots, shots, flags.shots);
    take(o_seed, seed, flags.seed);
    take(o_noise, noise_p, flags.noise_p);
    take(o_out, out, flags.out);
    take(o_k, k_sigma, flags.k_sigma);
    take(o_base, baseline, flags.baseline);
    take(o_obs, observed, flags.observed);
    take(o_restarts, restarts, flags.restarts);
    std::optional<std::string> path;
    take(o_config, config_path, path);

    gbcli::RunConfig cfg = gbcli::resolve_config(command, path, flags);
    for (const auto& w : cfg.warnings) std::cerr << "warning: " << w << "\n";
    const unsigned threads = gbcli::threads_from_env();
    const gbcli::Summary summary = gbcli::execute(cfg, threads);
    std::cout << gbcli::summary_line(command, summary) << std::endl;
    return 0;
  } catch (const gbcli::CliError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.exit_code();
  } catch (const gbcli::ApiError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return gbcli::kExitEvaluator;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return gbcli::kExitEvaluator;
  }
}
