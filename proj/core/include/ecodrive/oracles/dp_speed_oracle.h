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

#ifndef ECODRIVE_ORACLES_DP_SPEED_ORACLE_H_
#define ECODRIVE_ORACLES_DP_SPEED_ORACLE_H_

#include <vector>

#include "absl/status/statusor.h"
#include "ecodrive/ocp.h"
#include "ecodrive/vehicle_energy.h"

namespace ecodrive::oracles {

// Speed x time grid for the brute-force reference solver.
struct DpGrid {
  double dt = 0.1;         // s
  double dv = 0.05;        // m/s
  double max_accel = 4.0;  // |dv/dt| bound between nodes
  // Highest grid speed; <= 0 picks max(v0, V, 2 D / T) + 5 m/s.
  double max_speed = 0.0;
  int max_bisection_steps = 80;
};

struct DpSolution {
  // Speeds at the N + 1 time nodes; linear in between.
  std::vector<double> speeds;
  double step = 0.0;      // node spacing actually used [s]
  double cost = 0.0;      // exact cost of the piecewise-linear profile
  double distance = 0.0;  // equals the requested distance
  double multiplier = 0.0;
};

// Exact p0 (a + h) v + p1 (a + h)^2 integral of a piecewise-linear speed
// profile sampled every `step` seconds.
double PiecewiseLinearCost(const std::vector<double>& speeds, double step,
                           const VehicleParams& params);
double PiecewiseLinearDistance(const std::vector<double>& speeds, double step);

// Minimum-cost grid trajectory meeting v0, V, T exactly and D through a
// Lagrange multiplier on distance. The two grid solutions bracketing D are
// blended, which keeps the result feasible for the continuous problem, so
// its cost never undercuts the true optimum.
absl::StatusOr<DpSolution> SolveDpOracle(const BoundaryConditions& bc,
                                         const VehicleParams& params,
                                         const DpGrid& grid = {});

}  // namespace ecodrive::oracles

#endif  // ECODRIVE_ORACLES_DP_SPEED_ORACLE_H_
