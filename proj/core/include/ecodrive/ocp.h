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

#ifndef ECODRIVE_OCP_H_
#define ECODRIVE_OCP_H_

#include <optional>
#include <string_view>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "ecodrive/vehicle_energy.h"

namespace ecodrive {

// Terminal conditions of one optimisation: start at `initial_speed`, cover
// `distance` in exactly `horizon` seconds and arrive at `terminal_speed`.
struct BoundaryConditions {
  double initial_speed = 0.0;   // v0, m/s
  double terminal_speed = 0.0;  // V, m/s
  double distance = 0.0;        // D, m
  double horizon = 0.0;         // T, s

  absl::Status Validate() const;
};

// Minimum horizon the advisor is willing to plan over [s].
inline constexpr double kMinHorizon = 0.5;

// Energy-optimal unconstrained speed profile v(tau) = c0 + c1 tau + c2 tau^2
// for tau in [0, T].
class QuadraticProfile {
 public:
  QuadraticProfile() = default;
  QuadraticProfile(double c0, double c1, double c2,
                   const BoundaryConditions& bc)
      : c0_(c0), c1_(c1), c2_(c2), bc_(bc) {}

  double c0() const { return c0_; }
  double c1() const { return c1_; }
  double c2() const { return c2_; }
  const BoundaryConditions& bc() const { return bc_; }
  double horizon() const { return bc_.horizon; }

  double Speed(double tau) const { return c0_ + (c1_ + c2_ * tau) * tau; }
  double Accel(double tau) const { return c1_ + 2.0 * c2_ * tau; }
  // Distance travelled since tau = 0.
  double Distance(double tau) const {
    return ((c2_ / 3.0 * tau + 0.5 * c1_) * tau + c0_) * tau;
  }
  // Largest speed over [0, T].
  double PeakSpeed() const;

 private:
  double c0_ = 0.0;
  double c1_ = 0.0;
  double c2_ = 0.0;
  BoundaryConditions bc_;
};

// Predicted preceding vehicle, already shifted so that gap >= 0 means the
// minimum spacing and vehicle length are respected.
struct LeadState {
  double gap = 0.0;    // x_l, m
  double speed = 0.0;  // v_l, m/s
  double accel = 0.0;  // a_l, m/s^2
};

enum class ActiveConstraint {
  kNone,
  kSpeedLimit,
  kLead,
  kInfeasibleFallback,
};

std::string_view ActiveConstraintName(ActiveConstraint c);

absl::StatusOr<QuadraticProfile> SolveUnconstrained(
    const BoundaryConditions& bc);

// Speed-limit validity margin f1. Non-negative iff the unconstrained profile
// stays at or below `v_max` on [0, T]. Fails when the square-root argument
// (v_max - v0)(v_max - V) is negative.
absl::StatusOr<double> SpeedLimitMargin(const BoundaryConditions& bc,
                                        double v_max);

// Smallest horizon with SpeedLimitMargin >= 0, closed form. Requires
// v_max >= max(v0, V).
double MinimumSpeedLimitHorizon(const BoundaryConditions& bc, double v_max);

// f2(tau) = lead predicted position minus ego position of the unconstrained
// profile, both measured from the current ego position.
double LeadGapAt(const QuadraticProfile& profile, const LeadState& lead,
                 double tau);

// Minimum of f2 over [0, T]: endpoints plus the real stationary points of
// f2 inside the interval. Requires a valid `bc`.
double LeadGapMargin(const BoundaryConditions& bc, const LeadState& lead);

struct HorizonOptions {
  // Upper bound of the horizon search, as a multiple of the incoming T.
  double cap_factor = 10.0;
  // Bisection stops when the bracket is narrower than this [s].
  double tolerance = 1e-3;
};

struct HorizonAdjustment {
  BoundaryConditions bc;
  ActiveConstraint constraint = ActiveConstraint::kNone;
};

// Stretches T until the unconstrained profile is valid. A violated lead
// constraint takes precedence over a violated speed limit; the speed limit
// uses its closed-form root, the lead constraint bisection over
// [T, cap_factor * T]. Returns kResourceExhausted when no horizon below the
// cap satisfies the lead constraint.
//
// Initial or terminal speeds above `v_max` are clamped to `v_max` for the
// speed-limit test only.
absl::StatusOr<HorizonAdjustment> AdjustHorizon(
    const BoundaryConditions& bc, double v_max,
    const std::optional<LeadState>& lead, const HorizonOptions& options = {});

// Exact integral of p0 (a + h) v + p1 (a + h)^2 over the profile [J-scale].
double ProfileCost(const QuadraticProfile& profile,
                   const VehicleParams& params);

}  // namespace ecodrive

#endif  // ECODRIVE_OCP_H_
