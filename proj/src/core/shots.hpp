#pragma once

#include <array>
#include <cstdint>
#include <vector>

#include "core/quantum.hpp"
#include "core/tensor.hpp"

namespace gupbell {

struct ShotPlan {
  std::uint64_t shots_per_pair = 1000000;
  std::uint64_t seed = 42;
  double noise_p = 0.0;

  void validate() const;
};

/// Joint outcome distribution of two dichotomic observables on one state.
/// Outcome index 0 is the larger eigenvalue ("+"), 1 the smaller ("-").
struct JointDistribution {
  std::array<double, 2> values_a{};  // eigenvalues, "+" first
  std::array<double, 2> values_b{};
  std::array<double, 4> probs{};     // (+,+), (+,-), (-,+), (-,-)

  static JointDistribution compute(const DensityMatrix& rho, const ComplexMatrix& obs_a,
                                   const ComplexMatrix& obs_b);
  /// Outcome index 0..3 for a uniform draw in [0, 1).
  int sample(double draw) const;
};

struct PairOutcome {
  double a = 0.0;
  double b = 0.0;
};

/// One Born-rule sample; outcomes are the observables' actual eigenvalues.
PairOutcome measure_pair(const DensityMatrix& rho, const ComplexMatrix& obs_a,
                         const ComplexMatrix& obs_b, double draw);

/// (1 - p)|psi><psi| + p I/4.
DensityMatrix depolarize(const PureState& psi, double p);

/// Setting pairs in the fixed order (a,b), (a,b'), (a',b), (a',b').
inline constexpr std::array<const char*, 4> kPairNames{"ab", "ab'", "a'b", "a'b'"};

struct PairCounts {
  std::array<std::uint64_t, 4> n{};  // (+,+), (+,-), (-,+), (-,-)
  std::array<double, 2> values_a{1.0, -1.0};
  std::array<double, 2> values_b{1.0, -1.0};

  std::uint64_t total() const { return n[0] + n[1] + n[2] + n[3]; }
  /// Mean of outcome products.
  double correlator() const;
  /// Plug-in variance of one outcome product.
  double product_variance() const;
};

using CountsTable = std::array<PairCounts, 4>;

struct ChshEstimate {
  double s_hat = 0.0;
  double std_error = 0.0;
  std::array<double, 4> correlators{};
  CountsTable counts{};

  /// Rebuilds correlators, S-hat and its standard error from counts.
  static ChshEstimate from_counts(const CountsTable& counts);
};

/// Samples every setting pair from the depolarized state. Shot k of pair j
/// draws the stream value at index j*N + k, so the counts are independent of
/// the thread count.
ChshEstimate estimate_chsh(const PureState& state,
                           const std::array<ComplexMatrix, 4>& observables,
                           const ShotPlan& plan, unsigned threads = 1);

/// QM spin observables for the settings.
std::array<ComplexMatrix, 4> qm_observables(const ChshSettings& s);

struct LhvStrategy {
  std::array<int, 4> assignment{};  // a, a', b, b' in {+1, -1}
  int s = 0;
};

struct LhvTable {
  int max_s = 0;
  int min_s = 0;
  std::array<LhvStrategy, 16> strategies{};
};

/// Enumerates all 16 deterministic local strategies.
LhvTable lhv_max();

}  // namespace gupbell
