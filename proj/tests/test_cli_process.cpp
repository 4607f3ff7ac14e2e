// Drives the gupbell binary end to end: exit codes, artifacts, determinism.

#include <sys/wait.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"

namespace fs = std::filesystem;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " " GUPBELL_CLI_PATH " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = ::popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  char buf[4096];
  while (std::fgets(buf, sizeof buf, pipe)) r.out += buf;
  const int status = ::pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

fs::path fresh_dir(const std::string& name) {
  const fs::path dir = fs::temp_directory_path() / ("gupbell_cli_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

void write(const fs::path& p, const std::string& text) { std::ofstream(p) << text; }

std::vector<std::vector<double>> read_csv(const fs::path& p, std::string* header) {
  std::ifstream in(p);
  std::string line;
  std::getline(in, line);
  if (header) *header = line;
  std::vector<std::vector<double>> rows;
  while (std::getline(in, line)) {
    std::vector<double> row;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) row.push_back(std::strtod(cell.c_str(), nullptr));
    rows.push_back(row);
  }
  return rows;
}

}  // namespace

TEST_CASE("scan writes a CSV and a heatmap that agree cell by cell") {
  const fs::path dir = fresh_dir("scan");
  const Run r = run("scan --grid-steps 41 --out " + dir.string());
  REQUIRE(r.code == 0);
  CHECK(r.out == "scan S=2.82842712 region=quantum\n");

  std::string header;
  const auto rows = read_csv(dir / "scan.csv", &header);
  CHECK(header == "theta1,theta2,S");
  REQUIRE(rows.size() == 41u * 41u);
  const double step = 2.0 * 3.14159265358979323846 / 40.0;
  for (std::size_t k = 0; k < rows.size(); ++k) {
    const auto& row = rows[k];
    REQUIRE(row.size() == 3);
    const double t1 = static_cast<double>(k / 41) * step;
    const double t2 = static_cast<double>(k % 41) * step;
    CHECK(std::abs(row[0] - t1) <= 5e-9 * t1);
    const double closed = 2.0 * std::cos(t2) + 2.0 * std::sin(t1) * std::sin(t2);
    CHECK(std::abs(row[2] - closed) <= 5e-9 * std::abs(closed) + 1e-9);
  }

  // Cells appear in the SVG in CSV order; outlines must match S > 2.
  const std::string svg = slurp(dir / "scan.svg");
  std::size_t pos = 0;
  std::size_t idx = 0;
  std::size_t mismatches = 0;
  while ((pos = svg.find("<rect class=\"cell", pos)) != std::string::npos) {
    const bool above = svg.compare(pos, 23, "<rect class=\"cell above") == 0;
    REQUIRE(idx < rows.size());
    if (above != (rows[idx][2] > 2.0)) ++mismatches;
    ++idx;
    ++pos;
  }
  CHECK(idx == rows.size());
  CHECK(mismatches == 0);
}

TEST_CASE("sweep writes one row per beta and theta") {
  const fs::path dir = fresh_dir("sweep");
  const Run r = run("sweep --betas 0.1,0.5 --out " + dir.string());
  REQUIRE(r.code == 0);
  CHECK(r.out.rfind("sweep S=", 0) == 0);
  std::string header;
  const auto rows = read_csv(dir / "sweep.csv", &header);
  CHECK(header == "beta,theta,S_qm,S_s1,S_s2,S_s3");
  CHECK(rows.size() == 2u * 721u);
  for (const auto& row : rows) {
    REQUIRE(row.size() == 6);
    for (std::size_t c = 2; c < 6; ++c) CHECK(row[c] <= 4.0);
  }
}

TEST_CASE("optimize reports the optimum as JSON") {
  const fs::path dir = fresh_dir("optimize");
  const Run r = run("optimize --out " + dir.string());
  REQUIRE(r.code == 0);
  const auto doc = nlohmann::json::parse(slurp(dir / "optimum.json"));
  CHECK(std::abs(doc["value"].get<double>() - 2.8284271247461903) < 1e-6);
  CHECK(doc["region"] == "quantum");
  CHECK(doc["settings"].contains("b_prime"));
}

TEST_CASE("sample is byte-identical across runs and thread counts") {
  const fs::path a = fresh_dir("sample_a");
  const fs::path b = fresh_dir("sample_b");
  const fs::path c = fresh_dir("sample_c");
  REQUIRE(run("sample --shots 200000 --out " + a.string(), "GUPBELL_THREADS=1").code == 0);
  REQUIRE(run("sample --shots 200000 --out " + b.string(), "GUPBELL_THREADS=4").code == 0);
  REQUIRE(run("sample --shots 200000 --out " + c.string(), "GUPBELL_THREADS=1").code == 0);
  const std::string ja = slurp(a / "sample.json");
  CHECK(!ja.empty());
  CHECK(ja == slurp(b / "sample.json"));
  CHECK(ja == slurp(c / "sample.json"));
  const auto doc = nlohmann::json::parse(ja);
  CHECK(doc["pairs"][0]["counts"]["++"].get<std::uint64_t>() > 0);
  CHECK(doc["seed"] == 42);
}

TEST_CASE("audit consumes two sample files") {
  const fs::path base = fresh_dir("audit_base");
  const fs::path seen = fresh_dir("audit_seen");
  const fs::path out = fresh_dir("audit_out");
  REQUIRE(run("sample --shots 100000 --out " + base.string()).code == 0);
  REQUIRE(run("sample --shots 100000 --seed 9 --noise-p 0.3 --out " + seen.string()).code == 0);
  const Run r = run("audit --baseline " + (base / "sample.json").string() + " --observed " +
                    (seen / "sample.json").string() + " --out " + out.string());
  REQUIRE(r.code == 0);
  const auto doc = nlohmann::json::parse(slurp(out / "audit.json"));
  CHECK(doc["alarm"] == true);
  CHECK(doc["alarm_sigma"].get<double>() > 5.0);
  CHECK(doc["margin"].get<double>() ==
        doc["s_observed"].get<double>() - 2.0);

  const Run sim = run("audit --shots 100000 --noise-p 0 --out " + out.string());
  REQUIRE(sim.code == 0);
  CHECK(nlohmann::json::parse(slurp(out / "audit.json"))["alarm"] == false);
}

TEST_CASE("config file and flag precedence") {
  const fs::path dir = fresh_dir("config");
  write(dir / "cfg.json", R"({"scenario": "s1", "beta": 0.1, "shots": 1000})");
  const Run r = run("sample --config " + (dir / "cfg.json").string() + " --beta 0.5 --out " +
                    dir.string());
  REQUIRE(r.code == 0);
  const auto doc = nlohmann::json::parse(slurp(dir / "sample.json"));
  CHECK(doc["beta"] == 0.5);
  CHECK(doc["scenario"] == "s1");
  CHECK(doc["shots_per_pair"] == 1000);
}

TEST_CASE("exit-code contract") {
  const fs::path dir = fresh_dir("codes");
  write(dir / "unknown.json", R"({"grid": {"stepz": 3}})");
  CHECK(run("scan --config " + (dir / "unknown.json").string()).code == 2);
  write(dir / "broken.json", "{not json");
  CHECK(run("scan --config " + (dir / "broken.json").string()).code == 2);
  CHECK(run("scan --beta -0.1 --out " + dir.string()).code == 2);
  CHECK(run("scan --m 0,0,2 --out " + dir.string()).code == 2);
  CHECK(run("scan --no-such-flag").code == 2);
  CHECK(run("").code == 2);
  CHECK(run("sample --shots 10", "GUPBELL_THREADS=-3").code == 2);

  write(dir / "blocker", "x");
  CHECK(run("scan --grid-steps 5 --out " + (dir / "blocker" / "sub").string()).code == 3);

  // J_p = identity makes the GUP normalization ambiguous inside the evaluator.
  write(dir / "ambiguous.json",
        R"({"scenario": "s1", "model": {"kind": "custom", "jp": [[1, 0], [0, 1]]}})");
  CHECK(run("scan --grid-steps 5 --config " + (dir / "ambiguous.json").string() + " --out " +
            dir.string())
            .code == 4);
  write(dir / "nonherm.json",
        R"({"scenario": "s1", "model": {"kind": "custom", "jp": [[0, 1], [0, 0]]}})");
  CHECK(run("scan --grid-steps 5 --config " + (dir / "nonherm.json").string() + " --out " +
            dir.string())
            .code == 4);
}

TEST_CASE("nearly-unit m is accepted with a warning") {
  const fs::path dir = fresh_dir("warn");
  const Run r = run("scan --grid-steps 5 --scenario s1 --m 0,0,1.0000005 --out " + dir.string());
  CHECK(r.code == 0);
}
