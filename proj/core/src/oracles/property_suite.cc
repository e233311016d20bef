// Copyright 2026 The ecodrive Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "ecodrive/oracles/property_suite.h"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <random>

#include "absl/strings/str_format.h"
#include "ecodrive/ocp.h"

namespace ecodrive::oracles {
namespace {

class Stopwatch {
 public:
  Stopwatch() : start_(std::chrono::steady_clock::now()) {}
  double Seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() -
                                         start_)
        .count();
  }

 private:
  std::chrono::steady_clock::time_point start_;
};

class Sampler {
 public:
  Sampler(uint64_t seed, uint64_t stream) {
    std::seed_seq seq{static_cast<uint32_t>(seed),
                      static_cast<uint32_t>(seed >> 32),
                      static_cast<uint32_t>(stream)};
    rng_.seed(seq);
  }
  double Uniform(double lo, double hi) {
    return lo + (hi - lo) * unit_(rng_);
  }

 private:
  std::mt19937_64 rng_;
  std::uniform_real_distribution<double> unit_{0.0, 1.0};
};

// Extremes of the profile speed and acceleration over [0, T].
struct ProfileRange {
  double min_speed, max_speed, max_abs_accel;
};

ProfileRange RangeOf(const QuadraticProfile& p) {
  const double T = p.horizon();
  double lo = std::min(p.Speed(0.0), p.Speed(T));
  double hi = std::max(p.Speed(0.0), p.Speed(T));
  if (p.c2() != 0.0) {
    const double vertex = -p.c1() / (2.0 * p.c2());
    if (vertex > 0.0 && vertex < T) {
      lo = std::min(lo, p.Speed(vertex));
      hi = std::max(hi, p.Speed(vertex));
    }
  }
  return {lo, hi, std::max(std::abs(p.Accel(0.0)), std::abs(p.Accel(T)))};
}

void Finish(PropertyResult& r, const Stopwatch& watch) {
  r.passed = r.failures == 0;
  r.seconds = watch.Seconds();
}

}  // namespace

PropertyResult CheckBoundaryExactness(const SuiteOptions& options) {
  Stopwatch watch;
  PropertyResult r;
  r.name = "bc_exactness";
  r.tolerance = options.bc_tolerance;
  Sampler rng(options.seed, 1);
  for (int i = 0; i < options.bc_instances; ++i) {
    BoundaryConditions bc{rng.Uniform(0.0, 30.0), rng.Uniform(0.0, 30.0),
                          rng.Uniform(1.0, 2000.0), rng.Uniform(0.5, 200.0)};
    const auto p = SolveUnconstrained(bc);
    ++r.instances;
    if (!p.ok()) {
      ++r.failures;
      continue;
    }
    const double speed_err =
        std::abs(p->Speed(bc.horizon) - bc.terminal_speed) /
        std::max(1.0, bc.terminal_speed);
    const double dist_err =
        std::abs(p->Distance(bc.horizon) - bc.distance) / bc.distance;
    const double err = std::max(speed_err, dist_err);
    r.worst = std::max(r.worst, err);
    if (!(err < options.bc_tolerance)) ++r.failures;
  }
  Finish(r, watch);
  r.detail = absl::StrFormat("max relative error %.3g", r.worst);
  return r;
}

PropertyResult CheckDpOptimality(const SuiteOptions& options,
                                 const VehicleParams& params) {
  Stopwatch watch;
  PropertyResult r;
  r.name = "dp_optimality";
  r.tolerance = options.dp_slack;
  Sampler rng(options.seed, 2);
  // The DP bound on |a| must not bind on the analytical profile.
  const double accel_margin = 0.9 * options.grid.max_accel;
  int attempts = 0;
  double worst_gap = -std::numeric_limits<double>::infinity();
  while (r.instances < options.dp_instances && attempts < 100000) {
    ++attempts;
    BoundaryConditions bc;
    bc.initial_speed = rng.Uniform(0.0, 15.0);
    bc.terminal_speed = rng.Uniform(0.0, 15.0);
    bc.distance = rng.Uniform(20.0, 300.0);
    bc.horizon = std::round(rng.Uniform(5.0, 40.0) / options.grid.dt) *
                 options.grid.dt;
    const auto p = SolveUnconstrained(bc);
    if (!p.ok()) continue;
    const ProfileRange range = RangeOf(*p);
    if (range.min_speed < 0.0 || range.max_abs_accel > accel_margin) continue;
    ++r.instances;
    const double analytic = ProfileCost(*p, params);
    const auto dp = SolveDpOracle(bc, params, options.grid);
    if (!dp.ok()) {
      ++r.failures;
      r.detail = std::string(dp.status().message());
      continue;
    }
    // Relative excess of the analytical cost over the DP optimum.
    const double gap = (analytic - dp->cost) / std::abs(dp->cost);
    worst_gap = std::max(worst_gap, gap);
    if (analytic > dp->cost + options.dp_slack * std::abs(dp->cost)) {
      ++r.failures;
    }
  }
  r.worst = worst_gap;
  Finish(r, watch);
  if (r.instances < options.dp_instances) r.passed = false;
  if (r.detail.empty()) {
    r.detail = absl::StrFormat(
        "max (analytic - dp) / |dp| = %.3g over %d instances", worst_gap,
        r.instances);
  }
  return r;
}

PropertyResult CheckSpeedLimitSign(const SuiteOptions& options) {
  Stopwatch watch;
  PropertyResult r;
  r.name = "f1_sign";
  Sampler rng(options.seed, 3);
  int negatives = 0;
  for (int i = 0; i < options.sign_instances; ++i) {
    const double v_max = rng.Uniform(8.0, 25.0);
    BoundaryConditions bc;
    bc.initial_speed = rng.Uniform(0.0, v_max);
    bc.terminal_speed = rng.Uniform(0.0, v_max);
    bc.horizon = rng.Uniform(2.0, 60.0);
    // Mean speeds around the limit so both signs are well represented.
    bc.distance = rng.Uniform(0.3, 1.1) * v_max * bc.horizon;
    const auto f1 = SpeedLimitMargin(bc, v_max);
    const auto p = SolveUnconstrained(bc);
    ++r.instances;
    if (!f1.ok() || !p.ok()) {
      ++r.failures;
      continue;
    }
    double peak = -std::numeric_limits<double>::infinity();
    const int n = static_cast<int>(std::ceil(bc.horizon / options.scan_step));
    for (int k = 0; k <= n; ++k) {
      peak = std::max(peak, p->Speed(std::min(k * options.scan_step,
                                              bc.horizon)));
    }
    const bool scan_ok = peak <= v_max;
    const bool f1_ok = *f1 >= 0.0;
    if (!f1_ok) ++negatives;
    if (scan_ok != f1_ok) ++r.failures;
  }
  Finish(r, watch);
  r.worst = r.failures;
  r.detail = absl::StrFormat("%d/%d agree, %d violating instances",
                             r.instances - r.failures, r.instances, negatives);
  return r;
}

PropertyResult CheckLeadSign(const SuiteOptions& options) {
  Stopwatch watch;
  PropertyResult r;
  r.name = "f2_sign";
  Sampler rng(options.seed, 4);
  int negatives = 0;
  for (int i = 0; i < options.sign_instances; ++i) {
    BoundaryConditions bc;
    bc.initial_speed = rng.Uniform(0.0, 15.0);
    bc.terminal_speed = rng.Uniform(0.0, 15.0);
    bc.horizon = rng.Uniform(3.0, 40.0);
    bc.distance = rng.Uniform(0.2, 1.0) * 15.0 * bc.horizon;
    LeadState lead{rng.Uniform(0.0, 60.0), rng.Uniform(0.0, 15.0),
                   rng.Uniform(-1.5, 1.5)};
    const auto p = SolveUnconstrained(bc);
    ++r.instances;
    if (!p.ok()) {
      ++r.failures;
      continue;
    }
    double low = std::numeric_limits<double>::infinity();
    const int n = static_cast<int>(std::ceil(bc.horizon / options.scan_step));
    for (int k = 0; k <= n; ++k) {
      low = std::min(low, LeadGapAt(*p, lead, std::min(k * options.scan_step,
                                                       bc.horizon)));
    }
    const bool scan_ok = low >= 0.0;
    const bool f2_ok = LeadGapMargin(bc, lead) >= 0.0;
    if (!f2_ok) ++negatives;
    if (scan_ok != f2_ok) ++r.failures;
  }
  Finish(r, watch);
  r.worst = r.failures;
  r.detail = absl::StrFormat("%d/%d agree, %d violating instances",
                             r.instances - r.failures, r.instances, negatives);
  return r;
}

PropertyResult CheckHorizonAdjustment(const SuiteOptions& options) {
  Stopwatch watch;
  PropertyResult r;
  r.name = "horizon_adjustment";
  r.tolerance = options.horizon_gap_tolerance;

  // Worked case: T* = 3 * 250 / (10 + 10 + 20 + 10) = 15 s.
  const BoundaryConditions worked{10.0, 10.0, 250.0, 10.0};
  const auto adjusted = AdjustHorizon(worked, 20.0, std::nullopt);
  ++r.instances;
  std::string worked_note = "worked case failed";
  if (adjusted.ok()) {
    const auto f1 = SpeedLimitMargin(adjusted->bc, 20.0);
    const double t_err = std::abs(adjusted->bc.horizon - 15.0);
    const double f1_err = f1.ok() ? std::abs(*f1) : 1.0;
    worked_note = absl::StrFormat("T*=%.12g f1(T*)=%.3g",
                                  adjusted->bc.horizon, f1.ok() ? *f1 : NAN);
    if (t_err > 1e-9 || f1_err > 1e-9 ||
        adjusted->constraint != ActiveConstraint::kSpeedLimit) {
      ++r.failures;
    }
  } else {
    ++r.failures;
  }

  Sampler rng(options.seed, 5);
  int cases = 0;
  int attempts = 0;
  double worst = 0.0;
  while (cases < options.horizon_instances && attempts < 100000) {
    ++attempts;
    BoundaryConditions bc;
    bc.initial_speed = rng.Uniform(5.0, 15.0);
    bc.terminal_speed = rng.Uniform(0.0, 15.0);
    bc.horizon = rng.Uniform(4.0, 30.0);
    bc.distance = rng.Uniform(0.4, 1.0) * 14.0 * bc.horizon;
    const LeadState lead{rng.Uniform(2.0, 40.0), rng.Uniform(2.0, 14.0),
                         rng.Uniform(-0.5, 0.8)};
    if (LeadGapMargin(bc, lead) >= 0.0) continue;
    const auto adj = AdjustHorizon(bc, 30.0, lead);
    if (!adj.ok()) continue;  // no horizon within the cap
    ++cases;
    ++r.instances;
    const double margin = LeadGapMargin(adj->bc, lead);
    worst = std::max(worst, std::abs(margin));
    if (!(margin >= 0.0 && margin <= options.horizon_gap_tolerance) ||
        adj->constraint != ActiveConstraint::kLead) {
      ++r.failures;
    }
  }
  if (cases < options.horizon_instances) ++r.failures;
  r.worst = worst;
  Finish(r, watch);
  r.detail = absl::StrFormat("%s; %d lead cases, max min-f2 %.3g m",
                             worked_note, cases, worst);
  return r;
}

std::vector<PropertyResult> RunOracleSuite(const SuiteOptions& options,
                                           const VehicleParams& params) {
  return {CheckBoundaryExactness(options), CheckDpOptimality(options, params),
          CheckSpeedLimitSign(options), CheckLeadSign(options),
          CheckHorizonAdjustment(options)};
}

std::string FormatPropertyResult(const PropertyResult& result) {
  return absl::StrFormat("%s %s: %d instances, %d failures, %s (%.2f s)",
                         result.passed ? "PASS" : "FAIL", result.name,
                         result.instances, result.failures, result.detail,
                         result.seconds);
}

}  // namespace ecodrive::oracles
