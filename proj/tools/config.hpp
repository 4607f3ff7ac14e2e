#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "gupbell/gupbell.h"
#include "json.hpp"

namespace gbcli {

inline constexpr int kExitConfig = 2;
inline constexpr int kExitIo = 3;
inline constexpr int kExitEvaluator = 4;

/// Error carrying the process exit code it maps to.
class CliError : public std::runtime_error {
 public:
  CliError(int exit_code, const std::string& message)
      : std::runtime_error(message), exit_code_(exit_code) {}
  int exit_code() const noexcept { return exit_code_; }

 private:
  int exit_code_;
};

enum class Command { Scan, Sweep, Optimize, Sample, Audit };

const char* command_name(Command c);

enum class ModelKind { SelfCubic, Tilt, Custom };

struct ModelConfig {
  ModelKind kind = ModelKind::Tilt;
  std::array<double, 3> m{0.0, 0.0, 1.0};
  std::array<gb_complex, 4> jp{};
  bool has_jp = false;
};

struct AxisConfig {
  double min = 0.0;
  double max = 0.0;
  std::size_t steps = 0;
};

using Matrix4 = std::array<gb_complex, 16>;

struct RunConfig {
  Command command = Command::Scan;
  gb_scenario_kind scenario = GB_SCENARIO_QM;
  double beta = 0.1;
  ModelConfig model;
  gb_bell_kind state = GB_PHI_PLUS;
  gb_settings settings{};
  AxisConfig grid{0.0, 2.0 * 3.14159265358979323846, 201};
  AxisConfig sweep_theta{0.0, 3.14159265358979323846, 721};
  std::vector<double> betas{0.1, 0.2, 0.5, 0.9};
  std::uint64_t shots = 1000000;
  std::uint64_t seed = 42;
  double noise_p = 0.0;
  double k_sigma = 5.0;
  bool raw_eigenvalues = false;
  std::optional<Matrix4> h0;
  std::optional<Matrix4> hp;
  int level = 0;
  int restarts = 4;
  bool full_sphere = false;
  std::string baseline;
  std::string observed;
  std::string out_dir = ".";
  std::vector<std::string> warnings;
};

/// Command-line overrides; unset members leave the file/default value alone.
struct FlagOverrides {
  std::optional<std::string> scenario;
  std::optional<double> beta;
  std::optional<std::string> model;
  std::optional<std::string> m;
  std::optional<std::size_t> grid_steps;
  std::optional<std::string> betas;
  std::optional<std::uint64_t> shots;
  std::optional<std::uint64_t> seed;
  std::optional<double> noise_p;
  std::optional<std::string> out;
  std::optional<double> k_sigma;
  std::optional<std::string> baseline;
  std::optional<std::string> observed;
  std::optional<int> restarts;
};

RunConfig default_config(Command command);

/// Applies a JSON document onto cfg. Unknown keys and type mismatches throw
/// CliError(kExitConfig) naming the key path.
void apply_json(RunConfig& cfg, const nlohmann::json& doc);

void apply_flags(RunConfig& cfg, const FlagOverrides& flags);

/// Range checks after all sources are merged; may rewrite a nearly-unit m.
void validate(RunConfig& cfg);

/// defaults <- file (if any) <- flags, then validated.
RunConfig resolve_config(Command command, const std::optional<std::string>& config_path,
                         const FlagOverrides& flags);

gb_scenario_kind parse_scenario(const std::string& name);
const char* scenario_label(gb_scenario_kind kind);
std::vector<double> parse_number_list(const std::string& text, const std::string& key);

/// Worker cap from GUPBELL_THREADS; 0 means "all hardware threads".
unsigned threads_from_env();

}  // namespace gbcli
