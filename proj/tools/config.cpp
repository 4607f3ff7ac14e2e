#include "config.hpp"

#include <algorithm>
#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <limits>
#include <sstream>

#include "capi.hpp"

namespace gbcli {

using nlohmann::json;

namespace {

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw CliError(kExitConfig, "config error at '" + path + "': " + what);
}

std::string join(const std::string& parent, const std::string& key) {
  return parent.empty() ? key : parent + "." + key;
}

double number(const json& v, const std::string& path) {
  if (!v.is_number()) fail(path, "expected a number");
  const double x = v.get<double>();
  if (!std::isfinite(x)) fail(path, "must be finite");
  return x;
}

std::uint64_t unsigned_int(const json& v, const std::string& path) {
  if (!v.is_number_integer() || (!v.is_number_unsigned() && v.get<std::int64_t>() < 0)) {
    fail(path, "expected a non-negative integer");
  }
  return v.get<std::uint64_t>();
}

int integer(const json& v, const std::string& path) {
  if (!v.is_number_integer()) fail(path, "expected an integer");
  const auto x = v.is_number_unsigned() ? static_cast<double>(v.get<std::uint64_t>())
                                        : static_cast<double>(v.get<std::int64_t>());
  if (x < std::numeric_limits<int>::min() || x > std::numeric_limits<int>::max()) {
    fail(path, "integer out of range");
  }
  return v.get<int>();
}

bool boolean(const json& v, const std::string& path) {
  if (!v.is_boolean()) fail(path, "expected true or false");
  return v.get<bool>();
}

std::string string(const json& v, const std::string& path) {
  if (!v.is_string()) fail(path, "expected a string");
  return v.get<std::string>();
}

void expect_object(const json& v, const std::string& path) {
  if (!v.is_object()) fail(path.empty() ? "<root>" : path, "expected an object");
}

// A complex entry is a number (real) or a [re, im] pair.
gb_complex complex_entry(const json& v, const std::string& path) {
  if (v.is_number()) return {number(v, path), 0.0};
  if (!v.is_array() || v.size() != 2) fail(path, "expected a number or [re, im]");
  return {number(v[0], path + "[0]"), number(v[1], path + "[1]")};
}

template <std::size_t Dim>
std::array<gb_complex, Dim * Dim> complex_matrix(const json& v, const std::string& path) {
  if (!v.is_array() || v.size() != Dim) {
    fail(path, "expected " + std::to_string(Dim) + " rows");
  }
  std::array<gb_complex, Dim * Dim> out{};
  for (std::size_t r = 0; r < Dim; ++r) {
    const std::string row_path = path + "[" + std::to_string(r) + "]";
    if (!v[r].is_array() || v[r].size() != Dim) {
      fail(row_path, "expected " + std::to_string(Dim) + " entries");
    }
    for (std::size_t c = 0; c < Dim; ++c) {
      out[r * Dim + c] = complex_entry(v[r][c], row_path + "[" + std::to_string(c) + "]");
    }
  }
  return out;
}

AxisConfig axis(const json& v, const std::string& path, AxisConfig base) {
  expect_object(v, path);
  for (const auto& [key, value] : v.items()) {
    const std::string p = join(path, key);
    if (key == "min") {
      base.min = number(value, p);
    } else if (key == "max") {
      base.max = number(value, p);
    } else if (key == "steps") {
      base.steps = unsigned_int(value, p);
    } else {
      fail(p, "unknown key");
    }
  }
  return base;
}

gb_direction direction(const json& v, const std::string& path) {
  if (v.is_number()) return {number(v, path), 0.0};
  expect_object(v, path);
  gb_direction d{0.0, 0.0};
  for (const auto& [key, value] : v.items()) {
    const std::string p = join(path, key);
    if (key == "theta") {
      d.theta = number(value, p);
    } else if (key == "phi") {
      d.phi = number(value, p);
    } else {
      fail(p, "unknown key");
    }
  }
  return d;
}

ModelKind parse_model_kind(const std::string& name, const std::string& path) {
  if (name == "self-cubic") return ModelKind::SelfCubic;
  if (name == "tilt") return ModelKind::Tilt;
  if (name == "custom") return ModelKind::Custom;
  fail(path, "unknown model '" + name + "' (self-cubic, tilt, custom)");
}

gb_bell_kind parse_state(const std::string& name, const std::string& path) {
  if (name == "phi+") return GB_PHI_PLUS;
  if (name == "phi-") return GB_PHI_MINUS;
  if (name == "psi+") return GB_PSI_PLUS;
  if (name == "psi-") return GB_PSI_MINUS;
  fail(path, "unknown state '" + name + "' (phi+, phi-, psi+, psi-)");
}

void apply_model(ModelConfig& model, const json& v) {
  expect_object(v, "model");
  for (const auto& [key, value] : v.items()) {
    const std::string p = join("model", key);
    if (key == "kind") {
      model.kind = parse_model_kind(string(value, p), p);
    } else if (key == "m") {
      if (!value.is_array() || value.size() != 3) fail(p, "expected [x, y, z]");
      for (std::size_t i = 0; i < 3; ++i) {
        model.m[i] = number(value[i], p + "[" + std::to_string(i) + "]");
      }
    } else if (key == "jp") {
      model.jp = complex_matrix<2>(value, p);
      model.has_jp = true;
    } else {
      fail(p, "unknown key");
    }
  }
}

void apply_settings(gb_settings& s, const json& v) {
  expect_object(v, "settings");
  for (const auto& [key, value] : v.items()) {
    const std::string p = join("settings", key);
    if (key == "a") {
      s.a = direction(value, p);
    } else if (key == "a_prime") {
      s.a_prime = direction(value, p);
    } else if (key == "b") {
      s.b = direction(value, p);
    } else if (key == "b_prime") {
      s.b_prime = direction(value, p);
    } else {
      fail(p, "unknown key");
    }
  }
}

void check_axis(const AxisConfig& a, const std::string& path) {
  if (a.steps < 2) fail(path + ".steps", "must be >= 2");
  if (!(a.min < a.max)) fail(path, "min must be smaller than max");
}

}  // namespace

const char* command_name(Command c) {
  switch (c) {
    case Command::Scan: return "scan";
    case Command::Sweep: return "sweep";
    case Command::Optimize: return "optimize";
    case Command::Sample: return "sample";
    case Command::Audit: return "audit";
  }
  return "?";
}

gb_scenario_kind parse_scenario(const std::string& name) {
  if (name == "qm") return GB_SCENARIO_QM;
  if (name == "s1") return GB_SCENARIO_S1;
  if (name == "s2") return GB_SCENARIO_S2;
  if (name == "s3") return GB_SCENARIO_S3;
  fail("scenario", "unknown scenario '" + name + "' (qm, s1, s2, s3)");
}

const char* scenario_label(gb_scenario_kind kind) {
  switch (kind) {
    case GB_SCENARIO_QM: return "qm";
    case GB_SCENARIO_S1: return "s1";
    case GB_SCENARIO_S2: return "s2";
    case GB_SCENARIO_S3: return "s3";
  }
  return "?";
}

std::vector<double> parse_number_list(const std::string& text, const std::string& key) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const char* begin = item.c_str();
    char* end = nullptr;
    errno = 0;
    const double x = std::strtod(begin, &end);
    while (end && *end == ' ') ++end;
    if (end == begin || *end != '\0' || errno != 0 || !std::isfinite(x)) {
      fail(key, "'" + item + "' is not a number");
    }
    out.push_back(x);
  }
  if (out.empty()) fail(key, "empty list");
  return out;
}

RunConfig default_config(Command command) {
  RunConfig cfg;
  cfg.command = command;
  check(gb_canonical_settings(&cfg.settings));
  return cfg;
}

void apply_json(RunConfig& cfg, const json& doc) {
  expect_object(doc, "");
  for (const auto& [key, value] : doc.items()) {
    if (key == "scenario") {
      cfg.scenario = parse_scenario(string(value, key));
    } else if (key == "beta") {
      cfg.beta = number(value, key);
    } else if (key == "model") {
      apply_model(cfg.model, value);
    } else if (key == "state") {
      cfg.state = parse_state(string(value, key), key);
    } else if (key == "settings") {
      apply_settings(cfg.settings, value);
    } else if (key == "grid") {
      cfg.grid = axis(value, key, cfg.grid);
    } else if (key == "sweep_theta") {
      cfg.sweep_theta = axis(value, key, cfg.sweep_theta);
    } else if (key == "betas") {
      if (!value.is_array()) fail(key, "expected an array of numbers");
      cfg.betas.clear();
      for (std::size_t i = 0; i < value.size(); ++i) {
        cfg.betas.push_back(number(value[i], key + "[" + std::to_string(i) + "]"));
      }
    } else if (key == "shots") {
      cfg.shots = unsigned_int(value, key);
    } else if (key == "seed") {
      cfg.seed = unsigned_int(value, key);
    } else if (key == "noise_p") {
      cfg.noise_p = number(value, key);
    } else if (key == "k_sigma") {
      cfg.k_sigma = number(value, key);
    } else if (key == "raw_eigenvalues") {
      cfg.raw_eigenvalues = boolean(value, key);
    } else if (key == "h0") {
      cfg.h0 = complex_matrix<4>(value, key);
    } else if (key == "hp") {
      cfg.hp = complex_matrix<4>(value, key);
    } else if (key == "level") {
      cfg.level = integer(value, key);
    } else if (key == "restarts") {
      cfg.restarts = integer(value, key);
    } else if (key == "full_sphere") {
      cfg.full_sphere = boolean(value, key);
    } else if (key == "baseline") {
      cfg.baseline = string(value, key);
    } else if (key == "observed") {
      cfg.observed = string(value, key);
    } else if (key == "out") {
      cfg.out_dir = string(value, key);
    } else {
      fail(key, "unknown key");
    }
  }
}

void apply_flags(RunConfig& cfg, const FlagOverrides& f) {
  if (f.scenario) cfg.scenario = parse_scenario(*f.scenario);
  if (f.beta) cfg.beta = *f.beta;
  if (f.model) cfg.model.kind = parse_model_kind(*f.model, "--model");
  if (f.m) {
    const auto v = parse_number_list(*f.m, "--m");
    if (v.size() != 3) fail("--m", "expected x,y,z");
    cfg.model.m = {v[0], v[1], v[2]};
  }
  if (f.grid_steps) cfg.grid.steps = *f.grid_steps;
  if (f.betas) cfg.betas = parse_number_list(*f.betas, "--betas");
  if (f.shots) cfg.shots = *f.shots;
  if (f.seed) cfg.seed = *f.seed;
  if (f.noise_p) cfg.noise_p = *f.noise_p;
  if (f.out) cfg.out_dir = *f.out;
  if (f.k_sigma) cfg.k_sigma = *f.k_sigma;
  if (f.baseline) cfg.baseline = *f.baseline;
  if (f.observed) cfg.observed = *f.observed;
  if (f.restarts) cfg.restarts = *f.restarts;
}

void validate(RunConfig& cfg) {
  if (!std::isfinite(cfg.beta)) fail("beta", "must be finite");
  if (cfg.beta < 0.0) fail("beta", "negative beta models are out of scope");
  for (std::size_t i = 0; i < cfg.betas.size(); ++i) {
    const double b = cfg.betas[i];
    if (!std::isfinite(b) || b < 0.0) {
      fail("betas[" + std::to_string(i) + "]", "negative beta models are out of scope");
    }
  }
  if (cfg.betas.empty()) fail("betas", "must not be empty");
  check_axis(cfg.grid, "grid");
  check_axis(cfg.sweep_theta, "sweep_theta");
  if (cfg.shots < 1) fail("shots", "must be >= 1");
  if (!(cfg.noise_p >= 0.0 && cfg.noise_p <= 1.0)) fail("noise_p", "must lie in [0, 1]");
  if (!std::isfinite(cfg.k_sigma)) fail("k_sigma", "must be finite");
  if (cfg.level < 0 || cfg.level > 3) fail("level", "must be 0..3");
  if (cfg.restarts < 1) fail("restarts", "must be >= 1");

  if (cfg.model.kind == ModelKind::Tilt) {
    auto& m = cfg.model.m;
    const double norm = std::sqrt(m[0] * m[0] + m[1] * m[1] + m[2] * m[2]);
    const double defect = std::abs(norm - 1.0);
    if (defect > 1e-6) {
      fail("model.m", "must be a unit vector (norm " + std::to_string(norm) + ")");
    }
    if (defect > 1e-12) {
      for (auto& x : m) x /= norm;
      cfg.warnings.push_back("model.m normalized (norm was " + std::to_string(norm) + ")");
    }
  }
  if (cfg.model.kind == ModelKind::Custom && !cfg.model.has_jp) {
    fail("model.jp", "custom model needs a 2x2 Hermitian jp");
  }
  if (cfg.command == Command::Audit && (cfg.baseline.empty() != cfg.observed.empty())) {
    fail("baseline", "baseline and observed must be given together");
  }
}

RunConfig resolve_config(Command command, const std::optional<std::string>& config_path,
                         const FlagOverrides& flags) {
  RunConfig cfg = default_config(command);
  if (config_path) {
    std::ifstream in(*config_path);
    if (!in) throw CliError(kExitConfig, "cannot read config file '" + *config_path + "'");
    json doc;
    try {
      doc = json::parse(in);
    } catch (const json::parse_error& e) {
      throw CliError(kExitConfig, "config file '" + *config_path + "' is not valid JSON: " +
                                      e.what());
    }
    apply_json(cfg, doc);
  }
  apply_flags(cfg, flags);
  validate(cfg);
  return cfg;
}

unsigned threads_from_env() {
  const char* env = std::getenv("GUPBELL_THREADS");
  if (env == nullptr || *env == '\0') return 0;
  char* end = nullptr;
  errno = 0;
  const long n = std::strtol(env, &end, 10);
  if (*end != '\0' || errno != 0 || n < 1) {
    throw CliError(kExitConfig, "GUPBELL_THREADS must be a positive integer");
  }
  return static_cast<unsigned>(std::min<long>(n, 256));
}

}  // namespace gbcli
