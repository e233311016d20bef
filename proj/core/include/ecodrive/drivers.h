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

#ifndef ECODRIVE_DRIVERS_H_
#define ECODRIVE_DRIVERS_H_

#include <deque>
#include <optional>
#include <string_view>

#include "absl/status/status.h"
#include "absl/status/statusor.h"

namespace ecodrive {

enum class DriverKind { kEcoAdvised, kHumanBaseline };

struct DriverConfig {
  DriverKind kind = DriverKind::kHumanBaseline;

  // Eco-advised driver: a = k (advised - v(t - delay)), saturated.
  double tracking_gain = 0.3;    // k, 1/s
  double reaction_delay = 1.0;   // s
  double max_accel = 2.0;        // m/s^2, saturation of the tracking law

  // Baseline driver: accelerates and brakes at this level.
  double aggressiveness = 2.5;   // m/s^2
  // Free-road speed approach gain near the limit [1/s].
  double speed_gain = 1.0;
  // Fraction of the speed limit the driver aims for.
  double desired_speed_factor = 1.0;
  // Extra look-ahead when choosing the latest braking point [s].
  double brake_lead_time = 0.6;

  // Shared human behaviour.
  double light_visibility = 100.0;  // m
  // A light that turns red needing more than this is driven through.
  double max_brake = 4.0;           // m/s^2
  double emergency_decel = 8.0;     // m/s^2
  double time_headway = 1.2;        // s
  // Standstill margin kept beyond the minimum spacing [m].
  double standstill_margin = 1.0;
  // Minimum spacing already folded into the perceived gap [m].
  double gap_offset = 2.0;
  // Comfortable deceleration an advised driver accepts before overriding
  // the advice to stop for a red light.
  double comfort_decel = 2.0;

  absl::Status Validate() const;
};

DriverConfig DefaultEcoDriver();
DriverConfig DefaultHumanDriver();

absl::StatusOr<DriverKind> ParseDriverKind(std::string_view name);

// What the driver sees through the windscreen (true world state).
struct DrivingContext {
  double speed = 0.0;    // m/s
  double v_max = 0.0;    // current speed limit
  // Distance to a stop line the driver intends to respect (red light or
  // unserved stop sign), if any is visible.
  std::optional<double> stop_distance;
  // True when stop_distance belongs to a light (may be run in the dilemma
  // zone); stop signs are always respected.
  bool stop_is_light = false;
  // Gap to the preceding vehicle net of its length and the minimum spacing.
  std::optional<double> lead_gap;
  double lead_speed = 0.0;
};

// The pure tracking law, before any delay bookkeeping.
double EcoDriverAccel(double advised, double delayed_speed,
                      const DriverConfig& config);

// Tracking law with a pure perception delay on the driver's own speed.
class EcoDriver {
 public:
  explicit EcoDriver(const DriverConfig& config) : config_(config) {}

  // Call once per simulation step with non-decreasing t.
  double Command(double t, double advised, double speed);

 private:
  struct Reading {
    double t;
    double speed;
  };
  DriverConfig config_;
  std::deque<Reading> history_;
};

// Car-following term of the intelligent driver model, without the free-road
// part. +aggressiveness when the lead is absent.
double FollowingAccel(const DrivingContext& ctx, double accel_level,
                      const DriverConfig& config);

// Constant deceleration that stops exactly at the stop line, engaged at the
// latest comfortable point; nullopt when no braking is needed yet.
std::optional<double> StopLineAccel(const DrivingContext& ctx,
                                    double decel_level,
                                    const DriverConfig& config);

// Aggressive rule-based human: full throttle toward the speed limit, late
// constant-deceleration braking for stop lines, IDM gap keeping.
double BaselineDriverAccel(const DrivingContext& ctx,
                           const DriverConfig& config);

// Upper bound a human following advice still applies: IDM gap keeping and
// braking for a red light the advice has not yet handled.
double SupervisionCap(const DrivingContext& ctx, const DriverConfig& config);

}  // namespace ecodrive

#endif  // ECODRIVE_DRIVERS_H_
