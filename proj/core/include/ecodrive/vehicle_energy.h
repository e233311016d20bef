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

#ifndef ECODRIVE_VEHICLE_ENERGY_H_
#define ECODRIVE_VEHICLE_ENERGY_H_

#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "ecodrive/trip_trace.h"

namespace ecodrive {

// Longitudinal vehicle and powertrain parameters, SI units throughout.
//
// Two loss coefficients are kept apart on purpose: `cost_p1` multiplies
// (a + h)^2 in the optimisation cost, `motor_loss_coeff` multiplies the
// squared motor torque in the backward power model. With the default
// relation cost_p1 = motor_loss_coeff * m^2 * r_w the cost integrand equals
// battery power divided by r_w, matching cost_p0 = m / r_w.
struct VehicleParams {
  double mass = 1545.0;                // kg, rotating inertia included
  double air_density = 1.2;            // kg/m^3
  double drag_coefficient = 0.31;      // -
  double frontal_area = 2.43;          // m^2
  double rolling_coefficient = 0.012;  // -
  double gravity = 9.81;               // m/s^2
  double wheel_radius = 0.2914;        // m
  double resistive_decel = 0.0;        // h, m/s^2
  double cost_p0 = 0.0;                // kg/m, = mass / wheel_radius
  double cost_p1 = 0.0;                // acceleration-domain loss weight
  double motor_linear_coeff = 1.0;     // leading factor on T_m * w_m
  double motor_loss_coeff = 0.005;     // W / (N m)^2
  double max_accel = 3.0;              // m/s^2, a_min = -max_accel
  double regen_power_limit = 40000.0;  // W

  double min_accel() const { return -max_accel; }

  absl::Status Validate() const;
};

// Speed at which the constant resistive deceleration h is calibrated.
inline constexpr double kResistanceReferenceSpeed = 30.0 / 3.6;

// Renault Zoe ZE-50 engineering defaults with h, p0 and p1 derived.
VehicleParams ZoeDefaults();

// Recomputes h (at kResistanceReferenceSpeed), p0 and p1 from the physical
// parameters.
VehicleParams WithDerivedCoefficients(VehicleParams params);

// Reads a `key = value` vehicle file. Unspecified keys keep the Zoe
// defaults; h, cost_p0 and cost_p1 are derived unless given explicitly.
absl::StatusOr<VehicleParams> LoadVehicleParams(const std::string& path);
absl::StatusOr<VehicleParams> ParseVehicleParams(const std::string& text,
                                                 const std::string& source);
std::string FormatVehicleParams(const VehicleParams& params);

struct ResistiveForces {
  double aero = 0.0;     // N
  double rolling = 0.0;  // N
  double grade = 0.0;    // N

  double total() const { return aero + rolling + grade; }
};

ResistiveForces ComputeResistiveForces(double speed, double slope_rad,
                                       const VehicleParams& params);

// Linearised battery power, the integrand of the energy cost:
// p0 (a + h) v + p1 (a + h)^2, clipped below at -regen_power_limit.
double BatteryPower(double speed, double accel, const VehicleParams& params);

// Backward wheel -> motor -> battery power for one sample, flat road.
double BackwardBatteryPower(double speed, double accel,
                            const VehicleParams& params);

// Finite-difference accelerations: central inside, one-sided at the ends.
std::vector<double> TraceAccelerations(const TripTrace& trace);

// Per-sample battery power of the backward model [W].
std::vector<double> TraceBatteryPower(const TripTrace& trace,
                                      const VehicleParams& params);

// Battery energy of a recorded trace [Wh], trapezoidal in time.
absl::StatusOr<double> EvaluateTraceEnergy(const TripTrace& trace,
                                           const VehicleParams& params);

inline constexpr double kJoulesPerWh = 3600.0;

}  // namespace ecodrive

#endif  // ECODRIVE_VEHICLE_ENERGY_H_
