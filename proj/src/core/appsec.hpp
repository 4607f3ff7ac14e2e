#pragma once

#include "core/shots.hpp"

namespace gupbell {

/// s - 2.
double violation_margin(double s);

struct MinEntropy {
  double bits = 0.0;
  bool beyond_quantum = false;
};

/// -log2(1/2 + 1/2 sqrt(2 - s^2/4)) on [2, 2 sqrt 2]; 0 below 2. Above the
/// Tsirelson bound the formula has no domain, so the result is clamped to
/// 1 bit and flagged.
MinEntropy minentropy_bound(double s);

struct EavesdropVerdict {
  bool alarm = false;
  double drop_sigma = 0.0;
};

/// One-sided test: alarm when the observed S-hat sits more than k_sigma
/// combined standard errors below the baseline.
EavesdropVerdict eavesdrop_test(const ChshEstimate& baseline, const ChshEstimate& observed,
                                double k_sigma = 5.0);

struct SecurityReport {
  double s_observed = 0.0;
  double s_baseline = 0.0;
  double margin = 0.0;
  double minentropy_bits = 0.0;
  bool beyond_quantum = false;
  bool alarm = false;
  double alarm_sigma = 0.0;
  double k_sigma = 5.0;
};

SecurityReport security_report(const ChshEstimate& baseline, const ChshEstimate& observed,
                               double k_sigma = 5.0);

}  // namespace gupbell
