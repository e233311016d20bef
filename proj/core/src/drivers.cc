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

#include "ecodrive/drivers.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "absl/strings/str_cat.h"

namespace ecodrive {

absl::Status DriverConfig::Validate() const {
  const std::pair<const char*, double> positive[] = {
      {"tracking_gain", tracking_gain},
      {"max_accel", max_accel},
      {"aggressiveness", aggressiveness},
      {"speed_gain", speed_gain},
      {"desired_speed_factor", desired_speed_factor},
      {"max_brake", max_brake},
      {"emergency_decel", emergency_decel},
      {"comfort_decel", comfort_decel},
      {"light_visibility", light_visibility},
  };
  for (const auto& [name, value] : positive) {
    if (!(value > 0.0)) {
      return absl::InvalidArgumentError(
          absl::StrCat("driver parameter '", name, "' must be > 0"));
    }
  }
  const std::pair<const char*, double> non_negative[] = {
      {"reaction_delay", reaction_delay},
      {"brake_lead_time", brake_lead_time},
      {"time_headway", time_headway},
      {"standstill_margin", standstill_margin},
      {"gap_offset", gap_offset},
  };
  for (const auto& [name, value] : non_negative) {
    if (!(value >= 0.0)) {
      return absl::InvalidArgumentError(
          absl::StrCat("driver parameter '", name, "' must be >= 0"));
    }
  }
  return absl::OkStatus();
}

DriverConfig DefaultEcoDriver() {
  DriverConfig c;
  c.kind = DriverKind::kEcoAdvised;
  return c;
}

DriverConfig DefaultHumanDriver() {
  DriverConfig c;
  c.kind = DriverKind::kHumanBaseline;
  return c;
}

absl::StatusOr<DriverKind> ParseDriverKind(std::string_view name) {
  if (name == "eco_advised") return DriverKind::kEcoAdvised;
  if (name == "human_baseline") return DriverKind::kHumanBaseline;
  return absl::InvalidArgumentError(
      absl::StrCat("unknown driver kind '", std::string(name), "'"));
}

double EcoDriverAccel(double advised, double delayed_speed,
                      const DriverConfig& config) {
  const double a = config.tracking_gain * (advised - delayed_speed);
  return std::clamp(a, -config.max_accel, config.max_accel);
}

double EcoDriver::Command(double t, double advised, double speed) {
  history_.push_back({t, speed});
  const double seen_at = t - config_.reaction_delay;
  // Keep the newest reading not younger than the delay at the front.
  while (history_.size() > 1 && history_[1].t <= seen_at + 1e-9) {
    history_.pop_front();
  }
  return EcoDriverAccel(advised, history_.front().speed, config_);
}

double FollowingAccel(const DrivingContext& ctx, double accel_level,
                      const DriverConfig& config) {
  if (!ctx.lead_gap) return accel_level;
  const double v = std::max(0.0, ctx.speed);
  const double gap = std::max(*ctx.lead_gap + config.gap_offset, 1e-3);
  const double jam = config.gap_offset + config.standstill_margin;
  const double closing = v - ctx.lead_speed;
  const double desired =
      jam + std::max(0.0, v * config.time_headway +
                              v * closing /
                                  (2.0 * std::sqrt(accel_level *
                                                   config.comfort_decel)));
  const double ratio = desired / gap;
  return std::max(accel_level * (1.0 - ratio * ratio), -config.emergency_decel);
}

std::optional<double> StopLineAccel(const DrivingContext& ctx,
                                    double decel_level,
                                    const DriverConfig& config) {
  if (!ctx.stop_distance) return std::nullopt;
  const double v = std::max(0.0, ctx.speed);
  const double d = *ctx.stop_distance;
  if (d <= 0.05) return v > 0.0 ? -config.emergency_decel : -decel_level;
  const double required = v * v / (2.0 * d);
  if (ctx.stop_is_light && required > config.max_brake) {
    return std::nullopt;  // too late to stop: drive through
  }
  const double braking_distance =
      v * v / (2.0 * decel_level) + v * config.brake_lead_time;
  if (d > braking_distance) return std::nullopt;
  return -std::min(required, config.emergency_decel);
}

double BaselineDriverAccel(const DrivingContext& ctx,
                           const DriverConfig& config) {
  const double target = config.desired_speed_factor * ctx.v_max;
  double a = std::min(config.aggressiveness,
                      config.speed_gain * (target - ctx.speed));
  a = std::min(a, FollowingAccel(ctx, config.aggressiveness, config));
  if (auto stop = StopLineAccel(ctx, config.aggressiveness, config)) {
    a = std::min(a, *stop);
  }
  return std::max(a, -config.emergency_decel);
}

double SupervisionCap(const DrivingContext& ctx, const DriverConfig& config) {
  double cap = std::numeric_limits<double>::infinity();
  if (ctx.lead_gap) cap = FollowingAccel(ctx, config.max_accel, config);
  if (auto stop = StopLineAccel(ctx, config.comfort_decel, config)) {
    cap = std::min(cap, *stop);
  }
  return cap;
}

}  // namespace ecodrive
