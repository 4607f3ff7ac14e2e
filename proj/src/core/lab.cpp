#include "core/lab.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <string>

#include "core/error.hpp"
#include "core/parallel.hpp"
#include "core/random.hpp"

namespace gupbell {

namespace {

constexpr double kCeilingSlack = 1e-9;

void check_grid_value(double v) {
  if (!std::isfinite(v) || v > kBoxworldBound + kCeilingSlack) {
    throw Error(ErrorCode::Numeric,
                "CHSH value " + std::to_string(v) + " outside [-inf, 4]");
  }
}

ChshSettings settings_from_params(const std::vector<double>& x, bool full_sphere) {
  if (!full_sphere) return ChshSettings::planar(x[0], x[1], x[2], x[3]);
  return {Direction(x[0], x[4]), Direction(x[1], x[5]), Direction(x[2], x[6]),
          Direction(x[3], x[7])};
}

struct NelderMeadResult {
  std::vector<double> x;
  double f = 0.0;
  std::size_t evaluations = 0;
  bool exhausted = false;
};

// Minimizes f starting from x0 with an axis-aligned initial simplex.
template <class F>
NelderMeadResult nelder_mead(F&& f, std::vector<double> x0, double step,
                             std::size_t max_evaluations, double tolerance) {
  constexpr double kReflect = 1.0;
  constexpr double kExpand = 2.0;
  constexpr double kContract = 0.5;
  constexpr double kShrink = 0.5;

  const std::size_t d = x0.size();
  std::vector<std::vector<double>> pts(d + 1, x0);
  for (std::size_t i = 0; i < d; ++i) pts[i + 1][i] += step;
  std::vector<double> fv(d + 1);
  std::size_t evals = 0;
  auto eval = [&](const std::vector<double>& x) {
    ++evals;
    return f(x);
  };
  for (std::size_t i = 0; i <= d; ++i) fv[i] = eval(pts[i]);

  std::vector<std::size_t> order(d + 1);
  auto along = [&](const std::vector<double>& from, const std::vector<double>& to,
                   double t) {
    std::vector<double> out(d);
    for (std::size_t k = 0; k < d; ++k) out[k] = from[k] + t * (to[k] - from[k]);
    return out;
  };

  bool exhausted = false;
  for (;;) {
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t i, std::size_t j) { return fv[i] < fv[j]; });
    {
      std::vector<std::vector<double>> sp(d + 1);
      std::vector<double> sf(d + 1);
      for (std::size_t i = 0; i <= d; ++i) {
        sp[i] = std::move(pts[order[i]]);
        sf[i] = fv[order[i]];
      }
      pts = std::move(sp);
      fv = std::move(sf);
    }

    double diameter = 0.0;
    for (std::size_t i = 1; i <= d; ++i) {
      double dist2 = 0.0;
      for (std::size_t k = 0; k < d; ++k) {
        const double diff = pts[i][k] - pts[0][k];
        dist2 += diff * diff;
      }
      diameter = std::max(diameter, std::sqrt(dist2));
    }
    if (diameter < tolerance) break;
    if (evals >= max_evaluations) {
      exhausted = true;
      break;
    }

    std::vector<double> centroid(d, 0.0);
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t k = 0; k < d; ++k) centroid[k] += pts[i][k] / static_cast<double>(d);
    }
    const std::vector<double>& worst = pts[d];
    const std::vector<double> xr = along(centroid, worst, -kReflect);
    const double fr = eval(xr);

    if (fr < fv[0]) {
      const std::vector<double> xe = along(centroid, worst, -kReflect * kExpand);
      const double fe = eval(xe);
      if (fe < fr) {
        pts[d] = xe;
        fv[d] = fe;
      } else {
        pts[d] = xr;
        fv[d] = fr;
      }
      continue;
    }
    if (fr < fv[d - 1]) {
      pts[d] = xr;
      fv[d] = fr;
      continue;
    }
    if (fr < fv[d]) {
      const std::vector<double> xc = along(centroid, xr, kContract);
      const double fc = eval(xc);
      if (fc <= fr) {
        pts[d] = xc;
        fv[d] = fc;
        continue;
      }
    } else {
      const std::vector<double> xcc = along(centroid, worst, kContract);
      const double fcc = eval(xcc);
      if (fcc < fv[d]) {
        pts[d] = xcc;
        fv[d] = fcc;
        continue;
      }
    }
    for (std::size_t i = 1; i <= d; ++i) {
      pts[i] = along(pts[0], pts[i], kShrink);
      fv[i] = eval(pts[i]);
    }
  }
  return {pts[0], fv[0], evals, exhausted};
}

}  // namespace

std::vector<double> AxisSpec::values() const {
  if (steps < 2) {
    throw Error(ErrorCode::InvalidArgument, "axis needs at least 2 steps");
  }
  if (!std::isfinite(min) || !std::isfinite(max) || !(max > min)) {
    throw Error(ErrorCode::InvalidArgument, "axis needs finite min < max");
  }
  std::vector<double> out(steps);
  const double span = max - min;
  const double last = static_cast<double>(steps - 1);
  for (std::size_t i = 0; i < steps; ++i) {
    out[i] = min + span * (static_cast<double>(i) / last);
  }
  out.back() = max;
  return out;
}

ChshSettings two_angle_settings(double theta1, double theta2) {
  return ChshSettings::planar(0.0, theta1, theta2, -theta2);
}

ChshSettings sweep_settings(double theta) {
  return ChshSettings::planar(0.0, 2.0 * theta, theta, 3.0 * theta);
}

double ScanGrid::max_value() const { return *std::max_element(values.begin(), values.end()); }
double ScanGrid::min_value() const { return *std::min_element(values.begin(), values.end()); }

ScanGrid grid_scan(const ScenarioEvaluator& evaluator, const AxisSpec& theta1,
                   const AxisSpec& theta2, unsigned threads) {
  ScanGrid grid;
  grid.theta1_axis = theta1.values();
  grid.theta2_axis = theta2.values();
  grid.scenario = evaluator.config().scenario;
  grid.beta = evaluator.config().model.beta();
  const std::size_t cols = grid.theta2_axis.size();
  grid.values.assign(grid.theta1_axis.size() * cols, 0.0);
  parallel_for(grid.values.size(), threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t idx = begin; idx < end; ++idx) {
      const double v = evaluator.value(
          two_angle_settings(grid.theta1_axis[idx / cols], grid.theta2_axis[idx % cols]));
      check_grid_value(v);
      grid.values[idx] = v;
    }
  });
  return grid;
}

std::size_t count_regions_above(const ScanGrid& grid, double threshold) {
  const std::size_t rows = grid.theta1_axis.size();
  const std::size_t cols = grid.theta2_axis.size();
  std::vector<char> seen(rows * cols, 0);
  std::vector<std::size_t> stack;
  std::size_t regions = 0;
  for (std::size_t start = 0; start < rows * cols; ++start) {
    if (seen[start] || !(grid.values[start] > threshold)) continue;
    ++regions;
    seen[start] = 1;
    stack.push_back(start);
    while (!stack.empty()) {
      const std::size_t idx = stack.back();
      stack.pop_back();
      const std::size_t i = idx / cols;
      const std::size_t j = idx % cols;
      auto visit = [&](std::size_t n) {
        if (!seen[n] && grid.values[n] > threshold) {
          seen[n] = 1;
          stack.push_back(n);
        }
      };
      if (i > 0) visit(idx - cols);
      if (i + 1 < rows) visit(idx + cols);
      if (j > 0) visit(idx - 1);
      if (j + 1 < cols) visit(idx + 1);
    }
  }
  return regions;
}

const std::vector<double>& SweepCurve::series_for(Scenario s) const {
  for (const auto& [scenario, values] : series) {
    if (scenario == s) return values;
  }
  throw Error(ErrorCode::InvalidArgument,
              std::string("sweep has no series for scenario ") + scenario_name(s));
}

std::vector<SweepCurve> beta_sweep(const ScenarioConfig& base,
                                   const std::vector<double>& betas,
                                   const AxisSpec& theta,
                                   const std::vector<Scenario>& scenarios,
                                   unsigned threads) {
  const std::vector<double> axis = theta.values();
  std::vector<SweepCurve> curves;
  curves.reserve(betas.size());
  for (const double beta : betas) {
    if (!(beta >= 0.0)) {
      throw Error(ErrorCode::InvalidArgument, "sweep betas must be >= 0");
    }
    SweepCurve curve;
    curve.beta = beta;
    curve.theta_axis = axis;
    for (const Scenario scenario : scenarios) {
      ScenarioConfig cfg = base;
      cfg.scenario = scenario;
      cfg.model = base.model.with_beta(beta);
      const ScenarioEvaluator evaluator(std::move(cfg));
      std::vector<double> values(axis.size());
      parallel_for(axis.size(), threads, [&](std::size_t begin, std::size_t end) {
        for (std::size_t k = begin; k < end; ++k) {
          const double v = evaluator.value(sweep_settings(axis[k]));
          check_grid_value(v);
          values[k] = v;
        }
      });
      curve.series.emplace_back(scenario, std::move(values));
    }
    curves.push_back(std::move(curve));
  }
  return curves;
}

Optimum optimize_angles(const ScenarioEvaluator& evaluator, const OptimizeOptions& options,
                        unsigned threads) {
  if (options.restarts < 1) {
    throw Error(ErrorCode::InvalidArgument, "optimize needs at least one restart");
  }
  if (options.coarse_points < 2) {
    throw Error(ErrorCode::InvalidArgument, "coarse grid needs at least 2 points");
  }

  const std::vector<double> coarse =
      AxisSpec{0.0, 2.0 * kPi, options.coarse_points}.values();
  const std::size_t n = coarse.size();
  const std::size_t total = n * n * n * n;
  std::vector<double> coarse_values(total);
  parallel_for(total, threads, [&](std::size_t begin, std::size_t end) {
    for (std::size_t idx = begin; idx < end; ++idx) {
      std::size_t r = idx;
      const std::size_t l = r % n;
      r /= n;
      const std::size_t k = r % n;
      r /= n;
      const std::size_t j = r % n;
      const std::size_t i = r / n;
      coarse_values[idx] =
          evaluator.value(ChshSettings::planar(coarse[i], coarse[j], coarse[k], coarse[l]));
    }
  });
  // First maximum by index keeps the choice independent of sharding.
  std::size_t best_idx = 0;
  for (std::size_t idx = 1; idx < total; ++idx) {
    if (coarse_values[idx] > coarse_values[best_idx]) best_idx = idx;
  }
  std::vector<double> start(options.full_sphere ? 8 : 4, 0.0);
  {
    std::size_t r = best_idx;
    for (int q = 3; q >= 0; --q) {
      start[static_cast<std::size_t>(q)] = coarse[r % n];
      r /= n;
    }
  }

  Optimum best;
  best.value = -std::numeric_limits<double>::infinity();
  best.coarse_value = coarse_values[best_idx];
  best.evaluations = total;

  const double jitter = kPi / 8.0;
  const double step = kPi / 16.0;
  const bool full = options.full_sphere;
  auto objective = [&](const std::vector<double>& x) {
    return -evaluator.value(settings_from_params(x, full));
  };
  for (int restart = 0; restart < options.restarts; ++restart) {
    std::vector<double> x0 = start;
    if (restart > 0) {
      for (std::size_t k = 0; k < x0.size(); ++k) {
        const std::uint64_t index =
            static_cast<std::uint64_t>(restart) * x0.size() + k;
        x0[k] += jitter * (2.0 * stream_uniform(options.seed, index) - 1.0);
      }
    }
    const NelderMeadResult nm =
        nelder_mead(objective, x0, step, options.max_evaluations, options.tolerance);
    best.evaluations += nm.evaluations;
    const double value = -nm.f;
    if (value > best.value) {
      best.value = value;
      best.settings = settings_from_params(nm.x, full);
      best.best_restart = restart;
      best.budget_exhausted = nm.exhausted;
    }
  }
  if (best.coarse_value > best.value) {
    best.value = best.coarse_value;
    best.settings = settings_from_params(start, full);
    best.best_restart = -1;
    best.budget_exhausted = false;
  }
  return best;
}

Region classify(double s) {
  if (!std::isfinite(s)) {
    throw Error(ErrorCode::InvalidArgument, "classify needs a finite value");
  }
  if (s <= kClassicalBound) return Region::Classical;
  if (s <= kTsirelsonBound) return Region::Quantum;
  if (s <= kBoxworldBound) return Region::Superquantum;
  return Region::Unphysical;
}

const char* region_name(Region r) {
  switch (r) {
    case Region::Classical: return "classical";
    case Region::Quantum: return "quantum";
    case Region::Superquantum: return "superquantum";
    case Region::Unphysical: return "unphysical";
  }
  return "?";
}

}  // namespace gupbell
