#pragma once

#include <cstddef>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace gbcli {

/// Shortest decimal form that parses back to x, capped at max_digits
/// significant digits.
std::string format_number(double x, int max_digits);
inline std::string format_csv(double x) { return format_number(x, 9); }

/// Non-owning view of a scan; values are row-major with theta1 outer.
struct GridView {
  std::span<const double> theta1;
  std::span<const double> theta2;
  std::span<const double> values;

  double at(std::size_t i, std::size_t j) const { return values[i * theta2.size() + j]; }
};

std::string scan_csv(const GridView& grid);

struct SweepTable {
  std::vector<double> betas;
  std::vector<double> theta;
  // series[curve][kind] holds theta.size() values, kinds in qm, s1, s2, s3 order.
  std::vector<std::vector<std::vector<double>>> series;
};

std::string sweep_csv(const SweepTable& table);

/// Heatmap: one rect per cell coloured blue -> white -> red over
/// [min S, max S] (fallback [-4, 4] for a constant grid), cells above the
/// threshold outlined unless the grid is constant.
std::string heatmap_svg(const GridView& grid, double threshold = 2.0);

/// Writes content to path; failures throw CliError with the I/O exit code.
void write_file(const std::filesystem::path& path, const std::string& content);

/// Creates the directory if needed; failure maps to the I/O exit code.
void ensure_directory(const std::filesystem::path& dir);

}  // namespace gbcli
