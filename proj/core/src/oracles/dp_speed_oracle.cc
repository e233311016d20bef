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

#include "ecodrive/oracles/dp_speed_oracle.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "absl/strings/str_cat.h"
#include "ecodrive/status_macros.h"

namespace ecodrive::oracles {
namespace {

struct StepCoefficients {
  double p0, p1, h, dt, lambda;
};

// Cost of one linear speed step plus lambda times its distance.
inline double StepCost(double va, double vb, const StepCoefficients& k) {
  const double a = (vb - va) / k.dt + k.h;
  const double mean = 0.5 * (va + vb);
  return (k.p0 * a * mean + k.p1 * a * a + k.lambda * mean) * k.dt;
}

struct GridPath {
  bool feasible = false;
  std::vector<double> speeds;
  double distance = 0.0;
};

class LagrangianDp {
 public:
  LagrangianDp(const BoundaryConditions& bc, const VehicleParams& params,
               const DpGrid& grid)
      : bc_(bc), params_(params), grid_(grid) {
    steps_ = std::max(2, static_cast<int>(std::lround(bc.horizon / grid.dt)));
    dt_ = bc.horizon / steps_;
    double top = grid.max_speed;
    if (top <= 0.0) {
      top = std::max({bc.initial_speed, bc.terminal_speed,
                      2.0 * bc.distance / bc.horizon}) +
            5.0;
    }
    nodes_ = static_cast<int>(std::floor(top / grid.dv)) + 1;
    reach_ = static_cast<int>(std::floor(grid.max_accel * dt_ / grid.dv + 1e-9));
  }

  int steps() const { return steps_; }
  double dt() const { return dt_; }

  bool Feasible(double va, double vb) const {
    return std::abs(vb - va) <= grid_.max_accel * dt_ + 1e-12;
  }

  // Optimal path for multiplier lambda; not feasible when the grid cannot
  // connect v0 to V.
  GridPath Solve(double lambda) const {
    const StepCoefficients k{params_.cost_p0, params_.cost_p1,
                             params_.resistive_decel, dt_, lambda};
    const double inf = std::numeric_limits<double>::infinity();
    const double v0 = bc_.initial_speed;
    const double V = bc_.terminal_speed;
    std::vector<double> value(nodes_, inf), next(nodes_, inf);
    std::vector<int> parent(static_cast<size_t>(steps_) * nodes_, -1);

    // Node index n at interior step s (1..steps-1) is speed n * dv.
    for (int n = 0; n < nodes_; ++n) {
      const double v = n * grid_.dv;
      if (Feasible(v0, v)) value[n] = StepCost(v0, v, k);
    }
    for (int s = 2; s < steps_; ++s) {
      std::fill(next.begin(), next.end(), inf);
      int* par = &parent[static_cast<size_t>(s) * nodes_];
      for (int n = 0; n < nodes_; ++n) {
        const double vb = n * grid_.dv;
        const int lo = std::max(0, n - reach_);
        const int hi = std::min(nodes_ - 1, n + reach_);
        double best = inf;
        int arg = -1;
        for (int m = lo; m <= hi; ++m) {
          if (value[m] == inf) continue;
          const double c = value[m] + StepCost(m * grid_.dv, vb, k);
          if (c < best) {
            best = c;
            arg = m;
          }
        }
        next[n] = best;
        par[n] = arg;
      }
      value.swap(next);
    }
    double best = inf;
    int arg = -1;
    for (int n = 0; n < nodes_; ++n) {
      if (value[n] == inf) continue;
      const double v = n * grid_.dv;
      if (!Feasible(v, V)) continue;
      const double c = value[n] + StepCost(v, V, k);
      if (c < best) {
        best = c;
        arg = n;
      }
    }
    GridPath path;
    if (arg < 0) return path;
    path.feasible = true;
    path.speeds.assign(steps_ + 1, 0.0);
    path.speeds[0] = v0;
    path.speeds[steps_] = V;
    int n = arg;
    for (int s = steps_ - 1; s >= 1; --s) {
      path.speeds[s] = n * grid_.dv;
      if (s > 1) n = parent[static_cast<size_t>(s) * nodes_ + n];
    }
    path.distance = PiecewiseLinearDistance(path.speeds, dt_);
    return path;
  }

 private:
  BoundaryConditions bc_;
  VehicleParams params_;
  DpGrid grid_;
  int steps_ = 0;
  double dt_ = 0.0;
  int nodes_ = 0;
  int reach_ = 0;
};

}  // namespace

double PiecewiseLinearDistance(const std::vector<double>& speeds,
                               double step) {
  double d = 0.0;
  for (size_t i = 1; i < speeds.size(); ++i) {
    d += 0.5 * (speeds[i - 1] + speeds[i]) * step;
  }
  return d;
}

double PiecewiseLinearCost(const std::vector<double>& speeds, double step,
                           const VehicleParams& params) {
  const StepCoefficients k{params.cost_p0, params.cost_p1,
                           params.resistive_decel, step, 0.0};
  double cost = 0.0;
  for (size_t i = 1; i < speeds.size(); ++i) {
    cost += StepCost(speeds[i - 1], speeds[i], k);
  }
  return cost;
}

absl::StatusOr<DpSolution> SolveDpOracle(const BoundaryConditions& bc,
                                         const VehicleParams& params,
                                         const DpGrid& grid) {
  RETURN_IF_ERROR(bc.Validate());
  if (!(grid.dt > 0.0) || !(grid.dv > 0.0) || !(grid.max_accel > 0.0)) {
    return absl::InvalidArgumentError("DP grid steps must be > 0");
  }
  const LagrangianDp dp(bc, params, grid);
  const double target = bc.distance;

  // D(lambda) is non-increasing; expand until the target is bracketed.
  double lo = -1e3, hi = 1e3;
  GridPath long_path = dp.Solve(lo);
  if (!long_path.feasible) return absl::FailedPreconditionError("grid infeasible");
  for (int i = 0; i < 40 && long_path.distance < target; ++i) {
    lo *= 2.0;
    long_path = dp.Solve(lo);
  }
  GridPath short_path = dp.Solve(hi);
  for (int i = 0; i < 40 && short_path.distance > target; ++i) {
    hi *= 2.0;
    short_path = dp.Solve(hi);
  }
  if (long_path.distance < target || short_path.distance > target) {
    return absl::FailedPreconditionError(absl::StrCat(
        "distance ", target, " m is not reachable on the DP grid"));
  }
  for (int i = 0; i < grid.max_bisection_steps && hi - lo > 1e-9; ++i) {
    const double mid = 0.5 * (lo + hi);
    GridPath path = dp.Solve(mid);
    if (path.distance >= target) {
      lo = mid;
      long_path = std::move(path);
    } else {
      hi = mid;
      short_path = std::move(path);
    }
    if (long_path.distance == target) break;
  }

  // Blend the bracketing paths so the distance is met exactly.
  const double span = long_path.distance - short_path.distance;
  const double theta =
      span > 0.0 ? (target - short_path.distance) / span : 1.0;
  DpSolution sol;
  sol.step = dp.dt();
  sol.speeds.resize(long_path.speeds.size());
  for (size_t i = 0; i < sol.speeds.size(); ++i) {
    sol.speeds[i] = theta * long_path.speeds[i] +
                    (1.0 - theta) * short_path.speeds[i];
  }
  sol.speeds.front() = bc.initial_speed;
  sol.speeds.back() = bc.terminal_speed;
  sol.cost = PiecewiseLinearCost(sol.speeds, sol.step, params);
  sol.distance = PiecewiseLinearDistance(sol.speeds, sol.step);
  sol.multiplier = 0.5 * (lo + hi);
  return sol;
}

}  // namespace ecodrive::oracles
