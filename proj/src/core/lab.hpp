#pragma once

#include <cstddef>
#include <cstdint>
#include <utility>
#include <vector>

#include "core/gup.hpp"
#include "core/quantum.hpp"

namespace gupbell {

struct AxisSpec {
  double min = 0.0;
  double max = 2.0 * kPi;
  std::size_t steps = 201;

  /// Evenly spaced, both endpoints included. Requires steps >= 2.
  std::vector<double> values() const;
};

/// Landscape family: a = 0, a' = t1, b = t2, b' = -t2 (x-z plane).
/// For PhiPlus, S = 2 cos t2 + 2 sin t1 sin t2.
ChshSettings two_angle_settings(double theta1, double theta2);

/// Sweep family: a = 0, a' = 2t, b = t, b' = 3t (x-z plane).
ChshSettings sweep_settings(double theta);

struct ScanGrid {
  std::vector<double> theta1_axis;
  std::vector<double> theta2_axis;
  std::vector<double> values;  // row-major, theta1 outer
  Scenario scenario = Scenario::Qm;
  double beta = 0.0;

  double at(std::size_t i, std::size_t j) const {
    return values[i * theta2_axis.size() + j];
  }
  double max_value() const;
  double min_value() const;
};

ScanGrid grid_scan(const ScenarioEvaluator& evaluator, const AxisSpec& theta1,
                   const AxisSpec& theta2, unsigned threads = 1);

/// Number of 4-connected components of cells with value > threshold.
std::size_t count_regions_above(const ScanGrid& grid, double threshold = kClassicalBound);

struct SweepCurve {
  double beta = 0.0;
  std::vector<double> theta_axis;
  std::vector<std::pair<Scenario, std::vector<double>>> series;

  const std::vector<double>& series_for(Scenario s) const;
};

/// One curve per beta; `base` supplies rule, state and Hamiltonian overrides
/// and has its beta replaced by each entry in `betas`.
std::vector<SweepCurve> beta_sweep(const ScenarioConfig& base,
                                   const std::vector<double>& betas,
                                   const AxisSpec& theta,
                                   const std::vector<Scenario>& scenarios,
                                   unsigned threads = 1);

struct OptimizeOptions {
  int restarts = 4;
  std::uint64_t seed = 42;
  bool full_sphere = false;  // also optimize the four azimuths
  std::size_t coarse_points = 17;
  std::size_t max_evaluations = 10000;  // per Nelder-Mead run
  double tolerance = 1e-9;              // simplex diameter
};

struct Optimum {
  ChshSettings settings;
  double value = 0.0;
  double coarse_value = 0.0;
  std::size_t evaluations = 0;
  int best_restart = 0;
  bool budget_exhausted = false;
};

/// Coarse grid over the four polar angles, then Nelder-Mead refinement
/// (reflection 1, expansion 2, contraction 0.5, shrink 0.5) from the best
/// grid point and from seeded perturbations of it.
Optimum optimize_angles(const ScenarioEvaluator& evaluator, const OptimizeOptions& options,
                        unsigned threads = 1);

enum class Region { Classical, Quantum, Superquantum, Unphysical };

Region classify(double s);
const char* region_name(Region r);

}  // namespace gupbell
