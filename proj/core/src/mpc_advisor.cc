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

#include "ecodrive/mpc_advisor.h"

#include <algorithm>
#include <cmath>

#include "absl/strings/str_cat.h"
#include "ecodrive/status_macros.h"

namespace ecodrive {

absl::StatusOr<BoundaryConditions> SelectTerminalConditions(
    const Link& link, const KinState& ego, const PerceptionFrame& frame,
    double link_entry_time) {
  if (ego.x >= link.length) {
    return absl::OutOfRangeError(absl::StrCat(
        "ego at ", ego.x, " m is past the end of link '", link.id, "'"));
  }
  BoundaryConditions bc;
  bc.initial_speed = std::max(0.0, ego.v);
  bc.distance = link.length - std::max(0.0, ego.x);
  bc.horizon =
      std::max(link.duration - (ego.t - link_entry_time), kMinHorizon);
  if (frame.red || link.EndsWithStop()) {
    bc.terminal_speed = 0.0;
  } else {
    double v = std::min(link.AverageTrafficSpeed(), link.v_max);
    if (link.end_feature == EndFeature::kSpeedChange) {
      v = std::min(v, link.final_speed);
    }
    bc.terminal_speed = v;
  }
  return bc;
}

LeadState TransformLead(const PerceptionFrame& frame, double ego_speed,
                        double lead_accel) {
  return LeadState{frame.gap.value_or(0.0), frame.relative_speed + ego_speed,
                   lead_accel};
}

EcoDrivingAdvisor::EcoDrivingAdvisor(const AdvisorConfig& config)
    : config_(config), lead_history_(config.ewma_beta, config.accel_mode) {}

void EcoDrivingAdvisor::EnterLink(const Link& link, double t) {
  link_id_ = link.id;
  link_entry_time_ = t;
  red_latched_ = false;
  stop_served_ = false;
}

Advisory EcoDrivingAdvisor::Finish(Advisory advisory) {
  last_ = advisory;
  return advisory;
}

absl::StatusOr<Advisory> EcoDrivingAdvisor::Step(const KinState& ego,
                                                 const Link& link,
                                                 const PerceptionFrame& frame) {
  if (link.id != link_id_) EnterLink(link, ego.t);

  if (link.end_feature == EndFeature::kTrafficLight) {
    if (frame.red) {
      red_latched_ = true;
    } else if (frame.green && frame.light_detected) {
      red_latched_ = false;
    }
  }
  const double remaining = link.length - ego.x;
  if (link.EndsWithStop() && ego.v < config_.stop_served_speed &&
      remaining < config_.stop_served_radius) {
    stop_served_ = true;
  }

  if (frame.has_lead()) {
    if (lead_history_.empty() || frame.timestamp > lead_history_.newest().t) {
      RETURN_IF_ERROR(
          lead_history_.Push(frame.timestamp, frame.relative_speed + ego.v));
    }
  } else {
    lead_history_.Clear();
  }

  PerceptionFrame effective = frame;
  effective.red = red_latched_;
  Link planning_link = link;
  if (stop_served_) {
    planning_link.end_feature = EndFeature::kNone;
    if (planning_link.final_speed <= 0.0) {
      planning_link.final_speed = planning_link.AverageTrafficSpeed();
    }
  }

  Advisory advisory;
  advisory.time = ego.t;
  auto bc_or =
      SelectTerminalConditions(planning_link, ego, effective, link_entry_time_);
  if (!bc_or.ok() && !absl::IsOutOfRange(bc_or.status())) {
    return bc_or.status();
  }
  if (!bc_or.ok() || bc_or->distance < config_.min_plan_distance ||
      bc_or->distance < ego.v * config_.min_plan_time) {
    // Too close to the link end to re-plan: advise the terminal speed.
    const double v = bc_or.ok() ? bc_or->terminal_speed : ego.v;
    advisory.target_speed = std::clamp(v, 0.0, link.v_max);
    advisory.at_link_end = true;
    if (bc_or.ok()) advisory.bc_used = *bc_or;
    return Finish(advisory);
  }
  BoundaryConditions bc = *bc_or;
  // A terminal speed beyond what the remaining distance allows at the
  // acceleration bound cannot be followed.
  bc.terminal_speed = std::min(
      bc.terminal_speed,
      std::sqrt(bc.initial_speed * bc.initial_speed +
                2.0 * config_.max_accel * bc.distance));

  std::optional<LeadState> lead;
  if (frame.has_lead()) {
    const LeadAccelEstimate estimate = lead_history_.Estimate();
    advisory.lead_low_confidence = estimate.low_confidence;
    lead = TransformLead(frame, ego.v, estimate.accel);
  }

  auto adjusted = AdjustHorizon(bc, link.v_max, lead, config_.horizon);
  if (adjusted.ok()) {
    advisory.bc_used = adjusted->bc;
    advisory.active_constraint = adjusted->constraint;
  } else if (absl::IsResourceExhausted(adjusted.status()) && lead) {
    // Stop behind the lead: V = 0 over the current gap. The horizon is the
    // longest one for which the stopping profile never reverses, bounded by
    // the incoming schedule.
    BoundaryConditions stop;
    stop.initial_speed = bc.initial_speed;
    stop.terminal_speed = 0.0;
    stop.distance = std::max(lead->gap, 1e-3);
    const double no_reverse = stop.initial_speed > 0.0
                                  ? 3.0 * stop.distance / stop.initial_speed
                                  : bc.horizon;
    stop.horizon = std::max(std::min(no_reverse, bc.horizon), kMinHorizon);
    advisory.bc_used = stop;
    advisory.active_constraint = ActiveConstraint::kInfeasibleFallback;
  } else {
    return adjusted.status();
  }

  ASSIGN_OR_RETURN(advisory.profile, SolveUnconstrained(advisory.bc_used));
  // Short horizons end at the terminal speed, which may be zero; look at
  // most halfway in.
  const double tau =
      std::min(config_.preview_time, 0.5 * advisory.bc_used.horizon);
  advisory.target_speed =
      std::clamp(advisory.profile.Speed(tau), 0.0, link.v_max);
  return Finish(advisory);
}

}  // namespace ecodrive
