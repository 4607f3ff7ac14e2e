#include "core/appsec.hpp"

#include <algorithm>
#include <cmath>

#include "core/error.hpp"
#include "core/quantum.hpp"

namespace gupbell {

double violation_margin(double s) {
  if (!std::isfinite(s)) throw Error(ErrorCode::InvalidArgument, "S must be finite");
  return s - kClassicalBound;
}

MinEntropy minentropy_bound(double s) {
  if (!std::isfinite(s)) throw Error(ErrorCode::InvalidArgument, "S must be finite");
  if (s <= kClassicalBound) return {0.0, false};
  if (s >= kTsirelsonBound) return {1.0, s > kTsirelsonBound};
  const double radicand = std::max(0.0, 2.0 - s * s / 4.0);
  const double guess = 0.5 + 0.5 * std::sqrt(radicand);
  return {std::clamp(-std::log2(guess), 0.0, 1.0), false};
}

EavesdropVerdict eavesdrop_test(const ChshEstimate& baseline, const ChshEstimate& observed,
                                double k_sigma) {
  const double sigma = std::hypot(baseline.std_error, observed.std_error);
  if (!(sigma > 0.0)) {
    throw Error(ErrorCode::Undefined,
                "eavesdrop test undefined: both estimates have zero standard error");
  }
  EavesdropVerdict v;
  v.drop_sigma = (baseline.s_hat - observed.s_hat) / sigma;
  v.alarm = v.drop_sigma > k_sigma;
  return v;
}

SecurityReport security_report(const ChshEstimate& baseline, const ChshEstimate& observed,
                               double k_sigma) {
  SecurityReport r;
  r.s_observed = observed.s_hat;
  r.s_baseline = baseline.s_hat;
  r.margin = violation_margin(observed.s_hat);
  const MinEntropy h = minentropy_bound(observed.s_hat);
  r.minentropy_bits = h.bits;
  r.beyond_quantum = h.beyond_quantum;
  const EavesdropVerdict v = eavesdrop_test(baseline, observed, k_sigma);
  r.alarm = v.alarm;
  r.alarm_sigma = v.drop_sigma;
  r.k_sigma = k_sigma;
  return r;
}

}  // namespace gupbell
