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

#ifndef ECODRIVE_SCENARIO_H_
#define ECODRIVE_SCENARIO_H_

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "ecodrive/drivers.h"
#include "ecodrive/mpc_advisor.h"
#include "ecodrive/route.h"
#include "ecodrive/trip_trace.h"
#include "ecodrive/vehicle_energy.h"

namespace ecodrive {

// Fixed-time signal at the downstream end of a traffic-light link.
// Green while ((t + offset) mod cycle) < green_fraction * cycle.
struct LightSchedule {
  std::string link_id;
  double cycle = 60.0;           // s
  double green_fraction = 0.5;   // (0, 1)
  double offset = 0.0;           // s

  bool IsGreen(double t) const;
  // Time of the next phase change strictly after t.
  double NextSwitch(double t) const;
  absl::Status Validate() const;
};

// Replayable lead trajectory: route arc length of the lead's front bumper.
// The lead exists only within the script's time span.
struct LeadScript {
  std::string name;
  std::vector<TripSample> samples;  // t, x_l, v_l

  bool ActiveAt(double t) const;
  TripSample At(double t) const;
  absl::Status Validate() const;
};

absl::StatusOr<LeadScript> ParseLeadScriptCsv(const std::string& text,
                                              const std::string& source);
absl::StatusOr<LeadScript> LoadLeadScriptCsv(const std::string& path);
std::string FormatLeadScriptCsv(const LeadScript& script);

// Seeded car-following stream, materialised into LeadScripts by simulating
// each lead with the baseline driver behind its own predecessor.
struct LeadStreamSpec {
  int count = 0;
  double first_position = 60.0;  // m, front bumper of the nearest lead
  double spacing = 80.0;         // m between consecutive leads
  double start_time = 0.0;       // s
  // Probability that a lead turns off the route at each link end.
  double exit_probability = 0.15;
  // Per-lead aggressiveness is drawn uniformly from this range.
  double min_aggressiveness = 1.2;
  double max_aggressiveness = 2.2;
  // Per-lead desired speed as a fraction of the limit.
  double min_speed_factor = 0.8;
  double max_speed_factor = 1.0;

  absl::Status Validate() const;
};

struct PerceptionConfig {
  double range = 50.0;            // m, camera detection range
  double rate_hz = 3.0;           // perception frames
  double miss_probability = 0.0;  // per frame, light not detected
  double gps_rate_hz = 1.15;      // localisation fixes
  double gps_noise_m = 0.0;       // isotropic Gaussian sigma
  double advisory_rate_hz = 1.0;

  absl::Status Validate() const;
};

struct Scenario {
  std::string name;
  Route route;
  VehicleParams vehicle = ZoeDefaults();
  std::vector<LightSchedule> lights;
  std::vector<LeadScript> leads;
  std::optional<LeadStreamSpec> lead_stream;
  DriverConfig eco_driver = DefaultEcoDriver();
  DriverConfig human_driver = DefaultHumanDriver();
  AdvisorConfig advisor;
  PerceptionConfig perception;
  double dt = 0.05;             // s
  uint64_t seed = 1;
  double lead_length = 4.5;     // L, m
  double min_gap = 2.0;         // s_min, m
  double max_duration = 1800.0; // s, abort limit per vehicle
  bool run_eco = true;
  bool run_human = true;

  absl::Status Validate() const;
  const LightSchedule* LightFor(std::string_view link_id) const;
};

// Scenario file sections: [scenario] (name, route, vehicle, seed, dt,
// max_duration, lead_length, min_gap, drivers), [lights] with
// `link_id = cycle, green_fraction, offset`, [traffic] with
// `link_id = speed`, [leads] with repeatable `script = file.csv` and
// `stream = count, first_position, spacing`, and [perception],
// [eco_driver], [human_driver], [advisor] parameter blocks. Relative paths
// resolve against the scenario file's directory.
absl::StatusOr<Scenario> ParseScenario(const std::string& text,
                                       const std::string& source,
                                       const std::string& base_dir);
absl::StatusOr<Scenario> LoadScenario(const std::string& path);

}  // namespace ecodrive

#endif  // ECODRIVE_SCENARIO_H_
