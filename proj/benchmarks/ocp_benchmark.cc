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


#include <optional>

#include "benchmark/benchmark.h"
#include "ecodrive/mpc_advisor.h"
#include "ecodrive/ocp.h"

namespace ecodrive {
namespace {

void BM_SolveUnconstrained(benchmark::State& state) {
  BoundaryConditions bc{8.0, 11.0, 250.0, 24.0};
  for (auto _ : state) {
    bc.distance += 1e-9;
    benchmark::DoNotOptimize(SolveUnconstrained(bc));
  }
}
BENCHMARK(BM_SolveUnconstrained);

void BM_AdjustHorizonSpeedLimit(benchmark::State& state) {
  const BoundaryConditions bc{10.0, 10.0, 250.0, 10.0};
  for (auto _ : state) {
    benchmark::DoNotOptimize(AdjustHorizon(bc, 20.0, std::nullopt));
  }
}
BENCHMARK(BM_AdjustHorizonSpeedLimit);

void BM_AdjustHorizonLead(benchmark::State& state) {
  const BoundaryConditions bc{12.0, 10.0, 200.0, 15.0};
  const LeadState lead{20.0, 8.0, -0.3};
  for (auto _ : state) {
    benchmark::DoNotOptimize(AdjustHorizon(bc, 14.0, lead));
  }
}
BENCHMARK(BM_AdjustHorizonLead);

void BM_AdvisorStep(benchmark::State& state) {
  Link link;
  link.id = "L";
  link.v_max = 50.0 / 3.6;
  link.length = 400.0;
  link.duration = 36.0;
  link.final_speed = link.v_max;
  link.end_feature = EndFeature::kTrafficLight;
  EcoDrivingAdvisor advisor;
  PerceptionFrame frame;
  frame.gap = 30.0;
  frame.relative_speed = -1.0;
  double t = 0.0;
  for (auto _ : state) {
    frame.timestamp = t;
    benchmark::DoNotOptimize(advisor.Step({100.0, 9.0, t}, link, frame));
    t += 1.0;
  }
}
BENCHMARK(BM_AdvisorStep);

}  // namespace
}  // namespace ecodrive
