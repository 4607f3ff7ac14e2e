#include "core/shots.hpp"

#include <atomic>
#include <cmath>
#include <string>

#include "core/error.hpp"
#include "core/parallel.hpp"
#include "core/random.hpp"

namespace gupbell {

namespace {

constexpr double kDistinctEigenTol = 1e-12;

struct Dichotomic {
  std::array<double, 2> values;               // "+" (larger) first
  std::array<std::vector<Complex>, 2> vectors;
};

Dichotomic split(const ComplexMatrix& obs, const char* who) {
  if (obs.dim() != 2) {
    throw Error(ErrorCode::Dimension, std::string(who) + " observable must be 2x2");
  }
  const EigenSystem eig = eig_hermitian(obs);
  if (eig.eigenvalues[1] - eig.eigenvalues[0] <= kDistinctEigenTol) {
    throw Error(ErrorCode::NotDichotomic,
                std::string(who) + " observable has a single degenerate eigenvalue");
  }
  return {{eig.eigenvalues[1], eig.eigenvalues[0]}, {eig.vector(1), eig.vector(0)}};
}

}  // namespace

void ShotPlan::validate() const {
  if (shots_per_pair < 1) {
    throw Error(ErrorCode::InvalidArgument, "shots per pair must be >= 1");
  }
  if (!(noise_p >= 0.0 && noise_p <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "noise probability must lie in [0, 1]");
  }
}

JointDistribution JointDistribution::compute(const DensityMatrix& rho,
                                             const ComplexMatrix& obs_a,
                                             const ComplexMatrix& obs_b) {
  const Dichotomic a = split(obs_a, "Alice");
  const Dichotomic b = split(obs_b, "Bob");
  JointDistribution d;
  d.values_a = a.values;
  d.values_b = b.values;
  double total = 0.0;
  for (std::size_t i = 0; i < 2; ++i) {
    for (std::size_t j = 0; j < 2; ++j) {
      std::vector<Complex> u(4);
      for (std::size_t p = 0; p < 2; ++p) {
        for (std::size_t q = 0; q < 2; ++q) u[p * 2 + q] = a.vectors[i][p] * b.vectors[j][q];
      }
      const double prob = std::max(0.0, sandwich(u, rho.matrix(), u).real());
      d.probs[i * 2 + j] = prob;
      total += prob;
    }
  }
  for (auto& p : d.probs) p /= total;
  return d;
}

int JointDistribution::sample(double draw) const {
  double cumulative = 0.0;
  for (int k = 0; k < 3; ++k) {
    cumulative += probs[static_cast<std::size_t>(k)];
    if (draw < cumulative) return k;
  }
  return 3;
}

PairOutcome measure_pair(const DensityMatrix& rho, const ComplexMatrix& obs_a,
                         const ComplexMatrix& obs_b, double draw) {
  if (!(draw >= 0.0 && draw < 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "draw must lie in [0, 1)");
  }
  const JointDistribution d = JointDistribution::compute(rho, obs_a, obs_b);
  const int k = d.sample(draw);
  return {d.values_a[static_cast<std::size_t>(k / 2)],
          d.values_b[static_cast<std::size_t>(k % 2)]};
}

DensityMatrix depolarize(const PureState& psi, double p) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw Error(ErrorCode::InvalidArgument, "depolarizing probability must lie in [0, 1]");
  }
  ComplexMatrix rho = DensityMatrix::from_pure(psi).matrix() * (1.0 - p);
  for (std::size_t i = 0; i < 4; ++i) rho(i, i) += p / 4.0;
  return DensityMatrix(std::move(rho));
}

double PairCounts::correlator() const {
  const double n_total = static_cast<double>(total());
  if (n_total == 0.0) throw Error(ErrorCode::InvalidArgument, "empty counts");
  double sum = 0.0;
  for (std::size_t k = 0; k < 4; ++k) {
    sum += static_cast<double>(n[k]) * values_a[k / 2] * values_b[k % 2];
  }
  return sum / n_total;
}

double PairCounts::product_variance() const {
  const double n_total = static_cast<double>(total());
  if (n_total == 0.0) throw Error(ErrorCode::InvalidArgument, "empty counts");
  double second = 0.0;
  for (std::size_t k = 0; k < 4; ++k) {
    const double x = values_a[k / 2] * values_b[k % 2];
    second += static_cast<double>(n[k]) * x * x;
  }
  const double mean = correlator();
  return std::max(0.0, second / n_total - mean * mean);
}

ChshEstimate ChshEstimate::from_counts(const CountsTable& counts) {
  ChshEstimate e;
  e.counts = counts;
  double variance = 0.0;
  for (std::size_t j = 0; j < 4; ++j) {
    e.correlators[j] = counts[j].correlator();
    variance += counts[j].product_variance() / static_cast<double>(counts[j].total());
  }
  e.s_hat = e.correlators[0] + e.correlators[1] + e.correlators[2] - e.correlators[3];
  e.std_error = std::sqrt(variance);
  return e;
}

std::array<ComplexMatrix, 4> qm_observables(const ChshSettings& s) {
  return {spin_observable(s.a), spin_observable(s.a_prime), spin_observable(s.b),
          spin_observable(s.b_prime)};
}

ChshEstimate estimate_chsh(const PureState& state,
                           const std::array<ComplexMatrix, 4>& observables,
                           const ShotPlan& plan, unsigned threads) {
  plan.validate();
  const DensityMatrix rho = depolarize(state, plan.noise_p);
  // (x, y) indices into observables for each pair, in kPairNames order.
  constexpr std::array<std::array<std::size_t, 2>, 4> pairs{{{0, 2}, {0, 3}, {1, 2}, {1, 3}}};
  const std::uint64_t n = plan.shots_per_pair;

  CountsTable table{};
  for (std::size_t j = 0; j < 4; ++j) {
    const JointDistribution dist =
        JointDistribution::compute(rho, observables[pairs[j][0]], observables[pairs[j][1]]);
    std::array<std::atomic<std::uint64_t>, 4> counts{};
    const std::uint64_t offset = static_cast<std::uint64_t>(j) * n;
    parallel_for(static_cast<std::size_t>(n), threads, [&](std::size_t begin, std::size_t end) {
      std::array<std::uint64_t, 4> local{};
      for (std::size_t k = begin; k < end; ++k) {
        ++local[static_cast<std::size_t>(
            dist.sample(stream_uniform(plan.seed, offset + k)))];
      }
      for (std::size_t q = 0; q < 4; ++q) counts[q] += local[q];
    });
    for (std::size_t q = 0; q < 4; ++q) table[j].n[q] = counts[q].load();
    table[j].values_a = dist.values_a;
    table[j].values_b = dist.values_b;
  }
  return ChshEstimate::from_counts(table);
}

LhvTable lhv_max() {
  LhvTable table;
  table.max_s = -100;
  table.min_s = 100;
  for (int bits = 0; bits < 16; ++bits) {
    LhvStrategy st;
    for (int q = 0; q < 4; ++q) st.assignment[static_cast<std::size_t>(q)] = (bits >> q) & 1 ? -1 : 1;
    const auto& [a, ap, b, bp] = st.assignment;
    st.s = a * (b + bp) + ap * (b - bp);
    table.strategies[static_cast<std::size_t>(bits)] = st;
    table.max_s = std::max(table.max_s, st.s);
    table.min_s = std::min(table.min_s, st.s);
  }
  return table;
}

}  // namespace gupbell
