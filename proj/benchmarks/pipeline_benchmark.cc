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


#include <random>
#include <string>

#include "benchmark/benchmark.h"
#include "ecodrive/eco_score.h"
#include "ecodrive/map_matching.h"
#include "ecodrive/route.h"
#include "ecodrive/scenario.h"
#include "ecodrive/simulation.h"

namespace ecodrive {
namespace {

const std::string kData = ECODRIVE_DATA_DIR;

void BM_MatchPoint(benchmark::State& state) {
  const Route route = *LoadRoute(kData + "/rueil_bougival.route");
  std::mt19937_64 rng(1);
  std::uniform_real_distribution<double> arc(0.0, route.TotalLength());
  for (auto _ : state) {
    benchmark::DoNotOptimize(MatchPoint(route, route.PointAtDistance(arc(rng))));
  }
}
BENCHMARK(BM_MatchPoint);

void BM_RunScenario(benchmark::State& state) {
  const Scenario scenario = *LoadScenario(kData + "/scenarios/trip_04.scn");
  for (auto _ : state) {
    benchmark::DoNotOptimize(RunScenario(scenario));
  }
}
BENCHMARK(BM_RunScenario)->Unit(benchmark::kMillisecond);

void BM_ScoreTrip(benchmark::State& state) {
  const Scenario scenario = *LoadScenario(kData + "/scenarios/trip_04.scn");
  const SimResult result = *RunScenario(scenario);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        ScoreTrip(result.human->trace, scenario.route, scenario.vehicle));
  }
}
BENCHMARK(BM_ScoreTrip)->Unit(benchmark::kMillisecond);

}  // namespace
}  // namespace ecodrive

BENCHMARK_MAIN();
