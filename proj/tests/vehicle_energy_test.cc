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

#include <cmath>
#include <random>

#include "gtest/gtest.h"

namespace ecodrive {
namespace {

VehicleParams UnitCostParams(double h) {
  VehicleParams p;
  p.cost_p0 = 1.0;
  p.cost_p1 = 1.0;
  p.resistive_decel = h;
  p.regen_power_limit = 1e12;
  return p;
}

TripTrace ConstantSpeedTrace(double v, double duration, double dt) {
  TripTrace trace;
  const int n = static_cast<int>(std::lround(duration / dt));
  for (int k = 0; k <= n; ++k) {
    trace.samples.push_back({k * dt, v * k * dt, v});
  }
  return trace;
}

TEST(ResistiveForcesTest, StandstillHasOnlyRolling) {
  const VehicleParams p = ZoeDefaults();
  const ResistiveForces f = ComputeResistiveForces(0.0, 0.0, p);
  EXPECT_EQ(f.aero, 0.0);
  EXPECT_EQ(f.grade, 0.0);
  EXPECT_DOUBLE_EQ(f.rolling, p.mass * p.gravity * p.rolling_coefficient);
}

TEST(ResistiveForcesTest, ReferenceValuesAtTenMetresPerSecond) {
  VehicleParams p;
  p.mass = 1500.0;
  const ResistiveForces f = ComputeResistiveForces(10.0, 0.0, p);
  EXPECT_NEAR(f.aero, 45.198, 1e-9);
  EXPECT_NEAR(f.rolling, 176.58, 1e-9);
  EXPECT_EQ(f.grade, 0.0);
}

TEST(BatteryPowerTest, UnitCoefficients) {
  EXPECT_DOUBLE_EQ(BatteryPower(2.0, 3.0, UnitCostParams(0.0)), 15.0);
}

TEST(BatteryPowerTest, CoastingAtResistiveDecelIsFree) {
  const VehicleParams p = ZoeDefaults();
  for (double v : {0.0, 3.0, 13.9, 30.0}) {
    EXPECT_NEAR(BatteryPower(v, -p.resistive_decel, p), 0.0, 1e-12) << v;
  }
}

TEST(BatteryPowerTest, ConstantIntegrandOverCruise) {
  const VehicleParams p = UnitCostParams(0.1);
  const double power = BatteryPower(10.0, 0.0, p);
  EXPECT_NEAR(power, 1.01, 1e-12);
  EXPECT_NEAR(power * 100.0, 101.0, 1e-9);
}

TEST(BatteryPowerTest, RegenIsClipped) {
  const VehicleParams p = ZoeDefaults();
  EXPECT_DOUBLE_EQ(BatteryPower(30.0, -8.0, p), -p.regen_power_limit);
  EXPECT_DOUBLE_EQ(BackwardBatteryPower(30.0, -8.0, p), -p.regen_power_limit);
}

TEST(DerivedCoefficientsTest, CostIntegrandMatchesBackwardModel) {
  // With p1 = c_loss m^2 r_w the cost integrand times r_w is the
  // backward-model power whenever the resistance equals m h.
  VehicleParams p = ZoeDefaults();
  p.drag_coefficient = 0.0;
  p = WithDerivedCoefficients(p);
  p.regen_power_limit = 1e12;
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> speed(0.0, 20.0);
  std::uniform_real_distribution<double> accel(-1.0, 2.0);
  for (int i = 0; i < 100; ++i) {
    const double v = speed(rng);
    const double a = accel(rng);
    const double backward = BackwardBatteryPower(v, a, p);
    EXPECT_NEAR(BatteryPower(v, a, p) * p.wheel_radius, backward,
                1e-9 * std::abs(backward) + 1e-9);
  }
}

TEST(TraceEnergyTest, ConstantSpeedWithoutLossesIsResistanceWork) {
  VehicleParams p = ZoeDefaults();
  p.motor_loss_coeff = 0.0;
  const TripTrace trace = ConstantSpeedTrace(10.0, 100.0, 0.1);
  const ResistiveForces f = ComputeResistiveForces(10.0, 0.0, p);
  const double expected = (f.aero + f.rolling) * 10.0 * 100.0 / kJoulesPerWh;
  auto energy = EvaluateTraceEnergy(trace, p);
  ASSERT_TRUE(energy.ok()) << energy.status();
  EXPECT_NEAR(*energy, expected, 1e-9 * expected);
}

TEST(TraceEnergyTest, StandstillCostsNothing) {
  VehicleParams p = ZoeDefaults();
  p.rolling_coefficient = 0.0;
  const TripTrace trace = ConstantSpeedTrace(0.0, 30.0, 0.5);
  auto energy = EvaluateTraceEnergy(trace, p);
  ASSERT_TRUE(energy.ok());
  EXPECT_EQ(*energy, 0.0);
}

TEST(TraceEnergyTest, RejectsShortOrUnorderedTraces) {
  const VehicleParams p = ZoeDefaults();
  TripTrace trace;
  trace.samples = {{0.0, 0.0, 1.0}};
  EXPECT_FALSE(EvaluateTraceEnergy(trace, p).ok());
  trace.samples.push_back({0.0, 1.0, 1.0});
  EXPECT_FALSE(EvaluateTraceEnergy(trace, p).ok());
}

TEST(TraceAccelerationsTest, CentralInsideOneSidedAtEnds) {
  TripTrace trace;
  trace.samples = {{0, 0, 0}, {1, 0.5, 1}, {2, 2, 3}, {3, 5, 6}};
  const auto a = TraceAccelerations(trace);
  ASSERT_EQ(a.size(), 4u);
  EXPECT_DOUBLE_EQ(a[0], 1.0);
  EXPECT_DOUBLE_EQ(a[1], 1.5);
  EXPECT_DOUBLE_EQ(a[2], 2.5);
  EXPECT_DOUBLE_EQ(a[3], 3.0);
}

TEST(VehicleParamsTest, ParseKeepsDefaultsAndDerives) {
  auto p = ParseVehicleParams("mass = 1600\n", "inline");
  ASSERT_TRUE(p.ok()) << p.status();
  EXPECT_EQ(p->mass, 1600.0);
  EXPECT_DOUBLE_EQ(p->cost_p0, 1600.0 / p->wheel_radius);
  // p0 is tied to m / r; an inconsistent override is rejected.
  auto explicit_p0 = ParseVehicleParams("cost_p0 = 42\n", "inline");
  ASSERT_FALSE(explicit_p0.ok());
  EXPECT_NE(explicit_p0.status().message().find("cost_p0"), std::string::npos);
  auto explicit_p1 = ParseVehicleParams("cost_p1 = 42\n", "inline");
  ASSERT_TRUE(explicit_p1.ok()) << explicit_p1.status();
  EXPECT_EQ(explicit_p1->cost_p1, 42.0);
}

TEST(VehicleParamsTest, UnknownKeyIsAnError) {
  auto p = ParseVehicleParams("mass = 1600\nwings = 2\n", "zoe.vehicle");
  ASSERT_FALSE(p.ok());
  EXPECT_NE(p.status().message().find("zoe.vehicle"), std::string::npos);
}

TEST(VehicleParamsTest, ShippedFileLoads) {
  auto p = LoadVehicleParams(ECODRIVE_DATA_DIR "/zoe_ze50.vehicle");
  ASSERT_TRUE(p.ok()) << p.status();
  EXPECT_GT(p->resistive_decel, 0.0);
  auto round_trip = ParseVehicleParams(FormatVehicleParams(*p), "round");
  ASSERT_TRUE(round_trip.ok());
  EXPECT_EQ(round_trip->cost_p1, p->cost_p1);
  EXPECT_EQ(round_trip->resistive_decel, p->resistive_decel);
}

}  // namespace
}  // namespace ecodrive
