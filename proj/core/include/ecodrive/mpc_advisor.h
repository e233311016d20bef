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

#ifndef ECODRIVE_MPC_ADVISOR_H_
#define ECODRIVE_MPC_ADVISOR_H_

#include <optional>
#include <string>

#include "absl/status/statusor.h"
#include "ecodrive/lead_estimator.h"
#include "ecodrive/ocp.h"
#include "ecodrive/route.h"
#include "ecodrive/trip_trace.h"

namespace ecodrive {

// One camera sample. A light that is not detected reads as green.
struct PerceptionFrame {
  double timestamp = 0.0;
  // Gap to the preceding vehicle, net of its length and the minimum
  // spacing. Absent when no vehicle is within detection range.
  std::optional<double> gap;
  double relative_speed = 0.0;  // lead speed minus ego speed
  bool red = false;
  bool green = true;
  bool light_detected = false;

  bool has_lead() const { return gap.has_value(); }
};

struct Advisory {
  double time = 0.0;
  double target_speed = 0.0;  // displayed speed, m/s
  QuadraticProfile profile;
  ActiveConstraint active_constraint = ActiveConstraint::kNone;
  BoundaryConditions bc_used;
  // True when the link end is closer than the planning threshold and the
  // terminal speed is advised directly.
  bool at_link_end = false;
  bool lead_low_confidence = false;
};

struct AdvisorConfig {
  // Display preview: the profile is shown this far ahead [s].
  double preview_time = 3.0;
  HorizonOptions horizon;
  double ewma_beta = LeadHistory::kDefaultBeta;
  AccelEstimateMode accel_mode = AccelEstimateMode::kDifferentiateThenSmooth;
  // Below this remaining distance the terminal speed is advised as is [m].
  double min_plan_distance = 0.5;
  // Same, expressed as time to the link end at the current speed [s].
  double min_plan_time = 1.0;
  // A stop sign counts as served once the ego is this slow this close.
  double stop_served_speed = 0.3;
  double stop_served_radius = 3.0;
  // Acceleration magnitude bound used to cap reachable terminal speeds.
  double max_accel = 3.0;
};

// Terminal conditions for the current link: D = D_f - x,
// T = max(T_f - (t - link_entry_time), kMinHorizon), V = 0 when `frame`
// reports red or the link ends at a stop, the link's average traffic speed
// otherwise (capped by v_f on speed-change links). Fails with kOutOfRange
// once x has reached the link end, which callers treat as a link
// transition.
absl::StatusOr<BoundaryConditions> SelectTerminalConditions(
    const Link& link, const KinState& ego, const PerceptionFrame& frame,
    double link_entry_time = 0.0);

// x_l = gap, v_l = relative speed + ego speed, a_l from the estimator.
LeadState TransformLead(const PerceptionFrame& frame, double ego_speed,
                        double lead_accel);

// Shrinking-horizon advisor for one vehicle. Owns the lead history and the
// red-light latch; not reentrant.
class EcoDrivingAdvisor {
 public:
  explicit EcoDrivingAdvisor(const AdvisorConfig& config = {});

  // `ego.x` is the position along `link`, `ego.t` the trip time.
  absl::StatusOr<Advisory> Step(const KinState& ego, const Link& link,
                                const PerceptionFrame& frame);

  const LeadHistory& lead_history() const { return lead_history_; }
  bool red_latched() const { return red_latched_; }
  const std::optional<Advisory>& last_advisory() const { return last_; }
  const AdvisorConfig& config() const { return config_; }

 private:
  void EnterLink(const Link& link, double t);
  Advisory Finish(Advisory advisory);

  AdvisorConfig config_;
  LeadHistory lead_history_;
  std::string link_id_;
  double link_entry_time_ = 0.0;
  bool red_latched_ = false;
  bool stop_served_ = false;
  std::optional<Advisory> last_;
};

}  // namespace ecodrive

#endif  // ECODRIVE_MPC_ADVISOR_H_
