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

#include "ecodrive/vehicle_energy.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <utility>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "ecodrive/csv.h"
#include "ecodrive/status_macros.h"
#include "ecodrive/text_config.h"

namespace ecodrive {

absl::Status VehicleParams::Validate() const {
  const std::pair<const char*, double> positive[] = {
      {"mass", mass},
      {"air_density", air_density},
      {"drag_coefficient", drag_coefficient},
      {"frontal_area", frontal_area},
      {"rolling_coefficient", rolling_coefficient},
      {"gravity", gravity},
      {"wheel_radius", wheel_radius},
      {"max_accel", max_accel},
      {"regen_power_limit", regen_power_limit},
      {"motor_linear_coeff", motor_linear_coeff},
  };
  for (const auto& [name, value] : positive) {
    if (!(value > 0.0) || !std::isfinite(value)) {
      return absl::InvalidArgumentError(
          absl::StrCat("vehicle parameter '", name, "' must be > 0, got ",
                       value));
    }
  }
  const std::pair<const char*, double> non_negative[] = {
      {"resistive_decel", resistive_decel},
      {"cost_p1", cost_p1},
      {"motor_loss_coeff", motor_loss_coeff},
  };
  for (const auto& [name, value] : non_negative) {
    if (!(value >= 0.0) || !std::isfinite(value)) {
      return absl::InvalidArgumentError(absl::StrCat(
          "vehicle parameter '", name, "' must be >= 0, got ", value));
    }
  }
  const double expected_p0 = mass / wheel_radius;
  if (std::abs(cost_p0 - expected_p0) > 1e-9 * expected_p0) {
    return absl::InvalidArgumentError(
        absl::StrCat("cost_p0 must equal mass / wheel_radius = ", expected_p0,
                     ", got ", cost_p0));
  }
  return absl::OkStatus();
}

VehicleParams WithDerivedCoefficients(VehicleParams params) {
  const ResistiveForces f =
      ComputeResistiveForces(kResistanceReferenceSpeed, 0.0, params);
  params.resistive_decel = (f.aero + f.rolling) / params.mass;
  params.cost_p0 = params.mass / params.wheel_radius;
  params.cost_p1 = params.motor_loss_coeff * params.mass * params.mass *
                   params.wheel_radius;
  return params;
}

VehicleParams ZoeDefaults() { return WithDerivedCoefficients(VehicleParams{}); }

namespace {

using Field = double VehicleParams::*;

const std::map<std::string, Field>& FieldTable() {
  static const auto* table = new std::map<std::string, Field>{
      {"mass", &VehicleParams::mass},
      {"air_density", &VehicleParams::air_density},
      {"drag_coefficient", &VehicleParams::drag_coefficient},
      {"frontal_area", &VehicleParams::frontal_area},
      {"rolling_coefficient", &VehicleParams::rolling_coefficient},
      {"gravity", &VehicleParams::gravity},
      {"wheel_radius", &VehicleParams::wheel_radius},
      {"resistive_decel", &VehicleParams::resistive_decel},
      {"cost_p0", &VehicleParams::cost_p0},
      {"cost_p1", &VehicleParams::cost_p1},
      {"motor_linear_coeff", &VehicleParams::motor_linear_coeff},
      {"motor_loss_coeff", &VehicleParams::motor_loss_coeff},
      {"max_accel", &VehicleParams::max_accel},
      {"regen_power_limit", &VehicleParams::regen_power_limit},
  };
  return *table;
}

}  // namespace

absl::StatusOr<VehicleParams> ParseVehicleParams(const std::string& text,
                                                 const std::string& source) {
  ASSIGN_OR_RETURN(const TextConfig config, TextConfig::Parse(text, source));
  VehicleParams params;
  std::map<std::string, double> explicit_values;
  for (const auto& section : config.sections()) {
    if (!section.name.empty()) {
      return absl::InvalidArgumentError(absl::StrCat(
          source, ": vehicle files have no sections, found [", section.name,
          "]"));
    }
    for (const auto& line : section.lines) {
      if (line.text.find('=') == std::string::npos) {
        return config.ErrorAt(line.line_number, "expected 'key = value'");
      }
    }
    for (const auto& entry : section.entries) {
      const auto it = FieldTable().find(entry.key);
      if (it == FieldTable().end()) {
        return config.ErrorAt(entry.line_number,
                              absl::StrCat("unknown key '", entry.key, "'"));
      }
      auto value = ParseNumber(entry.value);
      if (!value.ok()) {
        return config.ErrorAt(entry.line_number, value.status().message());
      }
      params.*(it->second) = *value;
      explicit_values[entry.key] = *value;
    }
  }
  params = WithDerivedCoefficients(params);
  for (const char* key : {"resistive_decel", "cost_p0", "cost_p1"}) {
    if (auto it = explicit_values.find(key); it != explicit_values.end()) {
      params.*(FieldTable().at(key)) = it->second;
    }
  }
  RETURN_IF_ERROR(params.Validate());
  return params;
}

absl::StatusOr<VehicleParams> LoadVehicleParams(const std::string& path) {
  ASSIGN_OR_RETURN(const std::string text, ReadFile(path));
  return ParseVehicleParams(text, path);
}

std::string FormatVehicleParams(const VehicleParams& params) {
  std::string out;
  for (const auto& [key, field] : FieldTable()) {
    absl::StrAppend(&out, key, " = ", absl::StrFormat("%.17g", params.*field),
                    "\n");
  }
  return out;
}

ResistiveForces ComputeResistiveForces(double speed, double slope_rad,
                                       const VehicleParams& params) {
  ResistiveForces f;
  f.aero = 0.5 * params.air_density * params.drag_coefficient *
           params.frontal_area * speed * speed;
  f.rolling = params.mass * params.gravity * params.rolling_coefficient;
  f.grade = params.mass * params.gravity * std::sin(slope_rad);
  return f;
}

double BatteryPower(double speed, double accel, const VehicleParams& params) {
  const double u = accel + params.resistive_decel;
  const double power = params.cost_p0 * u * speed + params.cost_p1 * u * u;
  return std::max(power, -params.regen_power_limit);
}

double BackwardBatteryPower(double speed, double accel,
                            const VehicleParams& params) {
  const ResistiveForces resist = ComputeResistiveForces(speed, 0.0, params);
  const double traction = params.mass * accel + resist.total();
  const double torque = traction * params.wheel_radius;
  const double motor_speed = speed / params.wheel_radius;
  const double power = params.motor_linear_coeff * torque * motor_speed +
                       params.motor_loss_coeff * torque * torque;
  return std::max(power, -params.regen_power_limit);
}

std::vector<double> TraceAccelerations(const TripTrace& trace) {
  const auto& s = trace.samples;
  const size_t n = s.size();
  std::vector<double> accel(n, 0.0);
  if (n < 2) return accel;
  accel[0] = (s[1].v - s[0].v) / (s[1].t - s[0].t);
  accel[n - 1] = (s[n - 1].v - s[n - 2].v) / (s[n - 1].t - s[n - 2].t);
  for (size_t k = 1; k + 1 < n; ++k) {
    accel[k] = (s[k + 1].v - s[k - 1].v) / (s[k + 1].t - s[k - 1].t);
  }
  return accel;
}

std::vector<double> TraceBatteryPower(const TripTrace& trace,
                                      const VehicleParams& params) {
  const std::vector<double> accel = TraceAccelerations(trace);
  std::vector<double> power(trace.size());
  for (size_t k = 0; k < trace.size(); ++k) {
    power[k] = BackwardBatteryPower(trace.samples[k].v, accel[k], params);
  }
  return power;
}

absl::StatusOr<double> EvaluateTraceEnergy(const TripTrace& trace,
                                           const VehicleParams& params) {
  if (trace.size() < 2) {
    return absl::InvalidArgumentError(
        "energy evaluation needs at least 2 trace samples");
  }
  for (size_t k = 1; k < trace.size(); ++k) {
    if (!(trace.samples[k].t > trace.samples[k - 1].t)) {
      return absl::InvalidArgumentError(absl::StrCat(
          "non-positive time step at sample ", k, " (t=", trace.samples[k].t,
          ")"));
    }
  }
  const std::vector<double> power = TraceBatteryPower(trace, params);
  double joules = 0.0;
  for (size_t k = 1; k < trace.size(); ++k) {
    const double dt = trace.samples[k].t - trace.samples[k - 1].t;
    joules += 0.5 * (power[k] + power[k - 1]) * dt;
  }
  return joules / kJoulesPerWh;
}

}  // namespace ecodrive
