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

#ifndef ECODRIVE_ORACLES_PROPERTY_SUITE_H_
#define ECODRIVE_ORACLES_PROPERTY_SUITE_H_

#include <cstdint>
#include <string>
#include <vector>

#include "ecodrive/oracles/dp_speed_oracle.h"
#include "ecodrive/vehicle_energy.h"

namespace ecodrive::oracles {

struct PropertyResult {
  std::string name;
  bool passed = false;
  int instances = 0;
  int failures = 0;
  double worst = 0.0;      // worst observed error, property-specific units
  double tolerance = 0.0;
  double seconds = 0.0;
  std::string detail;
};

struct SuiteOptions {
  uint64_t seed = 7;
  int bc_instances = 10000;
  int dp_instances = 50;
  int sign_instances = 1000;
  int horizon_instances = 100;
  double bc_tolerance = 1e-9;
  // Analytical cost may exceed the DP optimum by this fraction of |DP|.
  double dp_slack = 0.01;
  DpGrid grid;
  double scan_step = 1e-3;  // s
  double horizon_gap_tolerance = 1e-2;  // m
};

// v*(T) = V and the integral of v* = D for random boundary conditions.
PropertyResult CheckBoundaryExactness(const SuiteOptions& options);

// Closed-form cost never above the DP grid optimum (plus slack).
PropertyResult CheckDpOptimality(const SuiteOptions& options,
                                 const VehicleParams& params);

// f1 >= 0 exactly when a dense scan finds v* <= v_max.
PropertyResult CheckSpeedLimitSign(const SuiteOptions& options);

// min f2 >= 0 exactly when a dense scan finds no lead overlap.
PropertyResult CheckLeadSign(const SuiteOptions& options);

// Closed-form speed-limit horizon on the worked case and bisected lead
// horizons landing just inside the feasible set.
PropertyResult CheckHorizonAdjustment(const SuiteOptions& options);

std::vector<PropertyResult> RunOracleSuite(const SuiteOptions& options,
                                           const VehicleParams& params);

// "PASS name: ..." or "FAIL name: ...", one line.
std::string FormatPropertyResult(const PropertyResult& result);

}  // namespace ecodrive::oracles

#endif  // ECODRIVE_ORACLES_PROPERTY_SUITE_H_
