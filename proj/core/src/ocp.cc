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

#include "ecodrive/ocp.h"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>

#include "absl/strings/str_cat.h"
#include "ecodrive/status_macros.h"

namespace ecodrive {

absl::Status BoundaryConditions::Validate() const {
  if (!(distance > 0.0) || !std::isfinite(distance)) {
    return absl::InvalidArgumentError(
        absl::StrCat("boundary conditions: distance must be > 0, got ",
                     distance));
  }
  if (!(horizon > 0.0) || !std::isfinite(horizon)) {
    return absl::InvalidArgumentError(
        absl::StrCat("boundary conditions: horizon must be > 0, got ",
                     horizon));
  }
  if (!(initial_speed >= 0.0) || !(terminal_speed >= 0.0)) {
    return absl::InvalidArgumentError(
        "boundary conditions: speeds must be >= 0");
  }
  return absl::OkStatus();
}

std::string_view ActiveConstraintName(ActiveConstraint c) {
  switch (c) {
    case ActiveConstraint::kNone:
      return "none";
    case ActiveConstraint::kSpeedLimit:
      return "vmax";
    case ActiveConstraint::kLead:
      return "lead";
    case ActiveConstraint::kInfeasibleFallback:
      return "infeasible-fallback";
  }
  return "unknown";
}

double QuadraticProfile::PeakSpeed() const {
  double peak = std::max(Speed(0.0), Speed(horizon()));
  if (c2_ < 0.0) {
    const double vertex = -c1_ / (2.0 * c2_);
    if (vertex > 0.0 && vertex < horizon()) peak = std::max(peak, Speed(vertex));
  }
  return peak;
}

absl::StatusOr<QuadraticProfile> SolveUnconstrained(
    const BoundaryConditions& bc) {
  RETURN_IF_ERROR(bc.Validate());
  const double v0 = bc.initial_speed;
  const double V = bc.terminal_speed;
  const double D = bc.distance;
  const double T = bc.horizon;
  const double c1 = -4.0 * v0 / T - 2.0 * V / T + 6.0 * D / (T * T);
  const double c2 = 3.0 * v0 / (T * T) - 6.0 * D / (T * T * T) +
                    3.0 * V / (T * T);
  return QuadraticProfile(v0, c1, c2, bc);
}

namespace {

// (v_max - v0)(v_max - V) written out as in the validity bound.
double SpeedLimitRadicand(double v0, double V, double v_max) {
  return v0 * V + v_max * v_max - v0 * v_max - V * v_max;
}

}  // namespace

absl::StatusOr<double> SpeedLimitMargin(const BoundaryConditions& bc,
                                        double v_max) {
  RETURN_IF_ERROR(bc.Validate());
  const double v0 = bc.initial_speed;
  const double V = bc.terminal_speed;
  double radicand = SpeedLimitRadicand(v0, V, v_max);
  // Cancellation when v0 or V equals v_max.
  if (radicand < 0.0 && radicand > -1e-12 * std::max(1.0, v_max * v_max)) {
    radicand = 0.0;
  }
  if (radicand < 0.0) {
    return absl::FailedPreconditionError(absl::StrCat(
        "speed-limit margin undefined: (v_max - v0)(v_max - V) < 0 for v0=",
        v0, " V=", V, " v_max=", v_max));
  }
  return (v0 + V + v_max) / 3.0 - bc.distance / bc.horizon +
         std::sqrt(radicand) / 3.0;
}

double MinimumSpeedLimitHorizon(const BoundaryConditions& bc, double v_max) {
  const double v0 = bc.initial_speed;
  const double V = bc.terminal_speed;
  const double radicand = std::max(0.0, (v_max - v0) * (v_max - V));
  return 3.0 * bc.distance / (v0 + V + v_max + std::sqrt(radicand));
}

double LeadGapAt(const QuadraticProfile& profile, const LeadState& lead,
                 double tau) {
  const double lead_position =
      lead.gap + lead.speed * tau + 0.5 * lead.accel * tau * tau;
  return lead_position - profile.Distance(tau);
}

double LeadGapMargin(const BoundaryConditions& bc, const LeadState& lead) {
  const auto solved = SolveUnconstrained(bc);
  if (!solved.ok()) return -std::numeric_limits<double>::infinity();
  const QuadraticProfile& profile = *solved;
  const double T = bc.horizon;

  double best = std::min(LeadGapAt(profile, lead, 0.0),
                         LeadGapAt(profile, lead, T));
  // f2'(tau) = (v_l - v0) + (a_l - c1) tau - c2 tau^2.
  const double qa = -profile.c2();
  const double qb = lead.accel - profile.c1();
  const double qc = lead.speed - profile.c0();
  std::array<double, 2> roots{};
  int root_count = 0;
  constexpr double kTiny = 1e-14;
  if (std::abs(qa) < kTiny) {
    if (std::abs(qb) > kTiny) roots[root_count++] = -qc / qb;
  } else {
    const double disc = qb * qb - 4.0 * qa * qc;
    if (disc >= 0.0) {
      // Numerically stable pair.
      const double s = std::sqrt(disc);
      const double q = -0.5 * (qb + std::copysign(s, qb));
      if (q != 0.0) {
        roots[root_count++] = q / qa;
        roots[root_count++] = qc / q;
      } else {
        roots[root_count++] = -qb / (2.0 * qa);
      }
    }
  }
  for (int i = 0; i < root_count; ++i) {
    if (roots[i] > 0.0 && roots[i] < T) {
      best = std::min(best, LeadGapAt(profile, lead, roots[i]));
    }
  }
  return best;
}

absl::StatusOr<HorizonAdjustment> AdjustHorizon(
    const BoundaryConditions& bc, double v_max,
    const std::optional<LeadState>& lead, const HorizonOptions& options) {
  RETURN_IF_ERROR(bc.Validate());
  if (!(v_max > 0.0)) {
    return absl::InvalidArgumentError("v_max must be > 0");
  }

  BoundaryConditions speed_check = bc;
  speed_check.initial_speed = std::min(bc.initial_speed, v_max);
  speed_check.terminal_speed = std::min(bc.terminal_speed, v_max);
  ASSIGN_OR_RETURN(const double f1, SpeedLimitMargin(speed_check, v_max));

  const bool lead_violated =
      lead.has_value() && LeadGapMargin(bc, *lead) < 0.0;

  HorizonAdjustment result{bc, ActiveConstraint::kNone};
  if (lead_violated) {
    const auto feasible = [&](double horizon) {
      BoundaryConditions trial = bc;
      trial.horizon = horizon;
      return LeadGapMargin(trial, *lead) >= 0.0;
    };
    double lo = bc.horizon;
    double hi = options.cap_factor * bc.horizon;
    if (!feasible(hi)) {
      return absl::ResourceExhaustedError(absl::StrCat(
          "no horizon up to ", hi, " s satisfies the lead constraint"));
    }
    while (hi - lo > options.tolerance) {
      const double mid = 0.5 * (lo + hi);
      if (feasible(mid)) {
        hi = mid;
      } else {
        lo = mid;
      }
    }
    result.bc.horizon = hi;
    result.constraint = ActiveConstraint::kLead;
    return result;
  }
  if (f1 < 0.0) {
    result.bc.horizon = MinimumSpeedLimitHorizon(speed_check, v_max);
    result.constraint = ActiveConstraint::kSpeedLimit;
  }
  return result;
}

double ProfileCost(const QuadraticProfile& profile,
                   const VehicleParams& params) {
  const double T = profile.horizon();
  const double h = params.resistive_decel;
  const double v0 = profile.Speed(0.0);
  const double vT = profile.Speed(T);
  const double distance = profile.Distance(T);
  const double c1 = profile.c1();
  const double c2 = profile.c2();

  // p0 * integral (a + h) v = p0 [ (vT^2 - v0^2) / 2 + h D ].
  const double kinetic = params.cost_p0 * (0.5 * (vT * vT - v0 * v0) + h * distance);
  // p1 * integral (a + h)^2 with a = c1 + 2 c2 tau.
  const double accel_sq =
      c1 * c1 * T + 2.0 * c1 * c2 * T * T + 4.0 / 3.0 * c2 * c2 * T * T * T;
  const double losses =
      params.cost_p1 * (accel_sq + 2.0 * h * (vT - v0) + h * h * T);
  return kinetic + losses;
}

}  // namespace ecodrive
