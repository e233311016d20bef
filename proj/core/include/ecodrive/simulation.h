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

#ifndef ECODRIVE_SIMULATION_H_
#define ECODRIVE_SIMULATION_H_

#include <optional>
#include <random>
#include <string>
#include <vector>

#include "absl/status/statusor.h"
#include "ecodrive/drivers.h"
#include "ecodrive/mpc_advisor.h"
#include "ecodrive/scenario.h"
#include "ecodrive/trip_trace.h"

namespace ecodrive {

// Immutable view of the environment shared by every simulated vehicle:
// the route, the light phase functions and the lead trajectories.
class World {
 public:
  World(const Scenario& scenario, std::vector<const LeadScript*> leads);

  struct LeadView {
    double gap = 0.0;    // xi = x_l - x - L - s_min
    double speed = 0.0;  // v_l
  };
  // Nearest active lead whose front bumper is ahead of arc length s.
  std::optional<LeadView> LeadAhead(double s, double t) const;

  struct LightView {
    size_t link_index = 0;
    double distance = 0.0;  // to the stop line
    bool green = true;
  };
  // Nearest traffic light ahead of s within max_distance.
  std::optional<LightView> NextLight(double s, double t,
                                     double max_distance) const;

  const Scenario& scenario() const { return *scenario_; }
  const Route& route() const { return scenario_->route; }
  const std::vector<const LeadScript*>& leads() const { return leads_; }
  // Schedule of link i, or nullptr when it has no light.
  const LightSchedule* light(size_t i) const { return lights_[i]; }

 private:
  const Scenario* scenario_;
  std::vector<const LeadScript*> leads_;
  std::vector<const LightSchedule*> lights_;
  std::vector<double> link_end_;
};

// Camera frame for an ego at arc length s. A miss (probability from the
// perception config) hides the light: G = 1, R = 0.
PerceptionFrame SamplePerception(const World& world, double s, double v,
                                 double t, std::mt19937_64& rng);

struct AdvisoryLogRow {
  double t = 0.0;
  double target_speed = 0.0;
  ActiveConstraint active_constraint = ActiveConstraint::kNone;
  double horizon = 0.0;         // T
  double distance = 0.0;        // D
  double terminal_speed = 0.0;  // V
  std::string link_id;
};

struct SimEvent {
  double t = 0.0;
  std::string vehicle;
  std::string kind;
  std::string detail;
};

struct VehicleRun {
  std::string id;
  TripTrace trace;               // x is route arc length
  std::vector<double> accel;     // effective acceleration per sample
  std::vector<double> power;     // backward-model battery power [W]
  double trip_time = 0.0;        // s
  double energy_wh = 0.0;        // EvaluateTraceEnergy of `trace`
  // Worst cases over all samples, for the safety invariants.
  double min_lead_gap;           // +inf without any lead
  double max_overspeed;          // max(v - v_max)
  int red_light_crossings = 0;
};

struct SimResult {
  std::string scenario;
  std::optional<VehicleRun> eco;
  std::optional<VehicleRun> human;
  std::vector<AdvisoryLogRow> advisories;
  std::vector<SimEvent> events;
  std::vector<LeadScript> leads;  // scripted and generated
};

// Scripted leads followed by the generated stream, front-most last.
absl::StatusOr<std::vector<LeadScript>> MaterializeLeads(
    const Scenario& scenario);

// One human-driven vehicle from start_s until it reaches end_s (within
// 1 m), following `world`'s leads and lights. Used for the baseline car and
// for generated leads.
absl::StatusOr<VehicleRun> SimulateHumanVehicle(
    const World& world, const DriverConfig& driver, double start_s,
    double end_s, double start_t, const std::string& id,
    std::vector<SimEvent>* events);

// The eco-advised vehicle: localisation, perception and advisory loops at
// their own rates on top of the simulation step.
absl::StatusOr<VehicleRun> SimulateEcoVehicle(
    const World& world, std::vector<AdvisoryLogRow>* advisories,
    std::vector<SimEvent>* events);

absl::StatusOr<SimResult> RunScenario(const Scenario& scenario);

// Summary block written next to the traces.
std::string FormatSimSummary(const SimResult& result);
std::string FormatAdvisoryCsv(const std::vector<AdvisoryLogRow>& rows);
std::string FormatEventLog(const std::vector<SimEvent>& events);

}  // namespace ecodrive

#endif  // ECODRIVE_SIMULATION_H_
