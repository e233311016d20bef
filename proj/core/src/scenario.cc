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

#include "ecodrive/scenario.h"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <map>
#include <set>
#include <utility>

#include "absl/strings/str_cat.h"
#include "ecodrive/csv.h"
#include "ecodrive/status_macros.h"
#include "ecodrive/text_config.h"

namespace ecodrive {

bool LightSchedule::IsGreen(double t) const {
  double phase = std::fmod(t + offset, cycle);
  if (phase < 0.0) phase += cycle;
  return phase < green_fraction * cycle;
}

double LightSchedule::NextSwitch(double t) const {
  double phase = std::fmod(t + offset, cycle);
  if (phase < 0.0) phase += cycle;
  const double green_end = green_fraction * cycle;
  return phase < green_end ? t + (green_end - phase) : t + (cycle - phase);
}

absl::Status LightSchedule::Validate() const {
  if (!(cycle > 0.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("light '", link_id, "': cycle must be > 0"));
  }
  if (!(green_fraction > 0.0 && green_fraction < 1.0)) {
    return absl::InvalidArgumentError(
        absl::StrCat("light '", link_id, "': green fraction must be in (0,1)"));
  }
  if (!std::isfinite(offset)) {
    return absl::InvalidArgumentError(
        absl::StrCat("light '", link_id, "': offset must be finite"));
  }
  return absl::OkStatus();
}

bool LeadScript::ActiveAt(double t) const {
  return !samples.empty() && t >= samples.front().t && t <= samples.back().t;
}

TripSample LeadScript::At(double t) const {
  auto it = std::lower_bound(
      samples.begin(), samples.end(), t,
      [](const TripSample& s, double value) { return s.t < value; });
  if (it == samples.begin()) return samples.front();
  if (it == samples.end()) return samples.back();
  const TripSample& b = *it;
  const TripSample& a = *(it - 1);
  const double w = (t - a.t) / (b.t - a.t);
  return {t, a.x + w * (b.x - a.x), a.v + w * (b.v - a.v)};
}

absl::Status LeadScript::Validate() const {
  if (samples.size() < 2) {
    return absl::InvalidArgumentError(
        absl::StrCat("lead '", name, "': needs at least two samples"));
  }
  for (size_t i = 1; i < samples.size(); ++i) {
    if (!(samples[i].t > samples[i - 1].t)) {
      return absl::InvalidArgumentError(absl::StrCat(
          "lead '", name, "': time not increasing at sample ", i + 1));
    }
    if (samples[i].x < samples[i - 1].x) {
      return absl::InvalidArgumentError(absl::StrCat(
          "lead '", name, "': position decreasing at sample ", i + 1));
    }
  }
  for (const TripSample& s : samples) {
    if (s.v < 0.0 || !std::isfinite(s.v) || !std::isfinite(s.x)) {
      return absl::InvalidArgumentError(
          absl::StrCat("lead '", name, "': invalid speed or position"));
    }
  }
  return absl::OkStatus();
}

absl::StatusOr<LeadScript> ParseLeadScriptCsv(const std::string& text,
                                              const std::string& source) {
  ASSIGN_OR_RETURN(const NumericTable table,
                   ParseNumericCsv(text, {"t", "x_l", "v_l"}, source));
  LeadScript script;
  script.name = std::filesystem::path(source).stem().string();
  script.samples.reserve(table.rows.size());
  for (const auto& row : table.rows) {
    script.samples.push_back({row[0], row[1], row[2]});
  }
  const absl::Status status = script.Validate();
  if (!status.ok()) {
    return absl::InvalidArgumentError(
        absl::StrCat(source, ": ", status.message()));
  }
  return script;
}

absl::StatusOr<LeadScript> LoadLeadScriptCsv(const std::string& path) {
  ASSIGN_OR_RETURN(const std::string text, ReadFile(path));
  return ParseLeadScriptCsv(text, path);
}

std::string FormatLeadScriptCsv(const LeadScript& script) {
  std::string out = "t,x_l,v_l\n";
  for (const TripSample& s : script.samples) {
    absl::StrAppend(&out, FormatNumber(s.t), ",", FormatNumber(s.x), ",",
                    FormatNumber(s.v), "\n");
  }
  return out;
}

absl::Status LeadStreamSpec::Validate() const {
  if (count < 0) return absl::InvalidArgumentError("lead count must be >= 0");
  if (!(first_position > 0.0) || !(spacing > 0.0)) {
    return absl::InvalidArgumentError(
        "lead stream positions and spacing must be > 0");
  }
  if (!(exit_probability >= 0.0 && exit_probability <= 1.0)) {
    return absl::InvalidArgumentError("exit_probability must be in [0,1]");
  }
  if (!(min_aggressiveness > 0.0 && max_aggressiveness >= min_aggressiveness)) {
    return absl::InvalidArgumentError("invalid lead aggressiveness range");
  }
  if (!(min_speed_factor > 0.0 && max_speed_factor >= min_speed_factor &&
        max_speed_factor <= 1.0)) {
    return absl::InvalidArgumentError("invalid lead speed factor range");
  }
  return absl::OkStatus();
}

absl::Status PerceptionConfig::Validate() const {
  if (!(range > 0.0)) return absl::InvalidArgumentError("range must be > 0");
  if (!(rate_hz > 0.0) || !(gps_rate_hz > 0.0) || !(advisory_rate_hz > 0.0)) {
    return absl::InvalidArgumentError("sensor rates must be > 0");
  }
  if (!(miss_probability >= 0.0 && miss_probability <= 1.0)) {
    return absl::InvalidArgumentError("miss_probability must be in [0,1]");
  }
  if (!(gps_noise_m >= 0.0)) {
    return absl::InvalidArgumentError("gps_noise_m must be >= 0");
  }
  return absl::OkStatus();
}

absl::Status Scenario::Validate() const {
  if (route.links.empty()) {
    return absl::InvalidArgumentError(
        absl::StrCat("scenario '", name, "': route has no links"));
  }
  RETURN_IF_ERROR(route.Validate());
  RETURN_IF_ERROR(vehicle.Validate());
  if (!(dt > 0.0 && dt <= 0.5)) {
    return absl::InvalidArgumentError("dt must be in (0, 0.5]");
  }
  if (!(max_duration > 0.0)) {
    return absl::InvalidArgumentError("max_duration must be > 0");
  }
  if (!(lead_length >= 0.0) || !(min_gap >= 0.0)) {
    return absl::InvalidArgumentError("lead_length and min_gap must be >= 0");
  }
  if (!run_eco && !run_human) {
    return absl::InvalidArgumentError("no driver selected");
  }
  std::set<std::string> scheduled;
  for (const LightSchedule& light : lights) {
    RETURN_IF_ERROR(light.Validate());
    const int index = route.LinkIndex(light.link_id);
    if (index < 0) {
      return absl::InvalidArgumentError(
          absl::StrCat("light schedule for unknown link '", light.link_id,
                       "'"));
    }
    if (route.links[index].end_feature != EndFeature::kTrafficLight) {
      return absl::InvalidArgumentError(absl::StrCat(
          "link '", light.link_id, "' has a schedule but no traffic light"));
    }
    if (!scheduled.insert(light.link_id).second) {
      return absl::InvalidArgumentError(
          absl::StrCat("duplicate light schedule for '", light.link_id, "'"));
    }
  }
  for (const Link& link : route.links) {
    if (link.end_feature == EndFeature::kTrafficLight &&
        !scheduled.count(link.id)) {
      return absl::InvalidArgumentError(
          absl::StrCat("traffic light on link '", link.id,
                       "' has no schedule"));
    }
  }
  for (const LeadScript& lead : leads) RETURN_IF_ERROR(lead.Validate());
  if (lead_stream) RETURN_IF_ERROR(lead_stream->Validate());
  RETURN_IF_ERROR(eco_driver.Validate());
  RETURN_IF_ERROR(human_driver.Validate());
  RETURN_IF_ERROR(perception.Validate());
  if (!(advisor.preview_time >= 0.0) || !(advisor.max_accel > 0.0) ||
      !(advisor.ewma_beta > 0.0 && advisor.ewma_beta <= 1.0)) {
    return absl::InvalidArgumentError("invalid advisor parameters");
  }
  return absl::OkStatus();
}

const LightSchedule* Scenario::LightFor(std::string_view link_id) const {
  for (const LightSchedule& light : lights) {
    if (light.link_id == link_id) return &light;
  }
  return nullptr;
}

namespace {

using NumberFields = std::map<std::string, double*, std::less<>>;

absl::Status ApplyNumbers(const TextConfig& config, std::string_view section,
                          const NumberFields& fields) {
  const ConfigSection* s = config.Section(section);
  if (s == nullptr) return absl::OkStatus();
  for (const ConfigLine& line : s->lines) {
    if (line.text.find('=') == std::string::npos) {
      return config.ErrorAt(line.line_number, "expected 'key = value'");
    }
  }
  for (const ConfigEntry& entry : s->entries) {
    const auto it = fields.find(entry.key);
    if (it == fields.end()) {
      return config.ErrorAt(
          entry.line_number,
          absl::StrCat("unknown key '", entry.key, "' in [",
                       std::string(section), "]"));
    }
    auto value = ParseNumber(entry.value);
    if (!value.ok()) {
      return config.ErrorAt(entry.line_number, value.status().message());
    }
    *it->second = *value;
  }
  return absl::OkStatus();
}

NumberFields DriverFields(DriverConfig& d) {
  return {
      {"tracking_gain", &d.tracking_gain},
      {"reaction_delay", &d.reaction_delay},
      {"max_accel", &d.max_accel},
      {"aggressiveness", &d.aggressiveness},
      {"speed_gain", &d.speed_gain},
      {"desired_speed_factor", &d.desired_speed_factor},
      {"brake_lead_time", &d.brake_lead_time},
      {"light_visibility", &d.light_visibility},
      {"max_brake", &d.max_brake},
      {"emergency_decel", &d.emergency_decel},
      {"time_headway", &d.time_headway},
      {"standstill_margin", &d.standstill_margin},
      {"gap_offset", &d.gap_offset},
      {"comfort_decel", &d.comfort_decel},
  };
}

std::string Resolve(const std::string& base_dir, const std::string& path) {
  std::filesystem::path p(path);
  if (p.is_absolute() || base_dir.empty()) return p.string();
  return (std::filesystem::path(base_dir) / p).lexically_normal().string();
}

absl::StatusOr<std::vector<double>> ParseNumberList(const TextConfig& config,
                                                    const ConfigEntry& entry,
                                                    size_t expected) {
  const std::vector<std::string> fields = SplitFields(entry.value);
  if (fields.size() != expected) {
    return config.ErrorAt(entry.line_number,
                          absl::StrCat("expected ", expected,
                                       " comma-separated values"));
  }
  std::vector<double> values;
  for (const std::string& f : fields) {
    auto v = ParseNumber(f);
    if (!v.ok()) return config.ErrorAt(entry.line_number, v.status().message());
    values.push_back(*v);
  }
  return values;
}

absl::Status ParseSchedules(const TextConfig& config, Scenario& sc) {
  const ConfigSection* s = config.Section("lights");
  if (s == nullptr) return absl::OkStatus();
  for (const ConfigLine& line : s->lines) {
    if (line.text.find('=') == std::string::npos) {
      return config.ErrorAt(line.line_number,
                            "expected 'link_id = cycle, green_fraction, "
                            "offset'");
    }
  }
  for (const ConfigEntry& entry : s->entries) {
    ASSIGN_OR_RETURN(const std::vector<double> v,
                     ParseNumberList(config, entry, 3));
    LightSchedule light{entry.key, v[0], v[1], v[2]};
    const absl::Status status = light.Validate();
    if (!status.ok()) return config.ErrorAt(entry.line_number, status.message());
    sc.lights.push_back(std::move(light));
  }
  return absl::OkStatus();
}

absl::Status ParseTraffic(const TextConfig& config, Scenario& sc) {
  const ConfigSection* s = config.Section("traffic");
  if (s == nullptr) return absl::OkStatus();
  for (const ConfigEntry& entry : s->entries) {
    const int index = sc.route.LinkIndex(entry.key);
    if (index < 0) {
      return config.ErrorAt(entry.line_number,
                            absl::StrCat("unknown link '", entry.key, "'"));
    }
    auto speed = ParseSpeed(entry.value);
    if (!speed.ok() || !(*speed > 0.0)) {
      return config.ErrorAt(entry.line_number,
                            "traffic speed must be a positive speed");
    }
    sc.route.links[index].avg_traffic_speed = *speed;
  }
  return absl::OkStatus();
}

absl::Status ParseLeads(const TextConfig& config, const std::string& base_dir,
                        Scenario& sc) {
  const ConfigSection* s = config.Section("leads");
  if (s == nullptr) return absl::OkStatus();
  LeadStreamSpec stream;
  double count = -1.0;
  NumberFields fields = {
      {"count", &count},
      {"first_position", &stream.first_position},
      {"spacing", &stream.spacing},
      {"start_time", &stream.start_time},
      {"exit_probability", &stream.exit_probability},
      {"min_aggressiveness", &stream.min_aggressiveness},
      {"max_aggressiveness", &stream.max_aggressiveness},
      {"min_speed_factor", &stream.min_speed_factor},
      {"max_speed_factor", &stream.max_speed_factor},
  };
  for (const ConfigEntry& entry : s->entries) {
    if (entry.key == "script") {
      auto script = LoadLeadScriptCsv(Resolve(base_dir, entry.value));
      if (!script.ok()) {
        return config.ErrorAt(entry.line_number, script.status().message());
      }
      sc.leads.push_back(*std::move(script));
      continue;
    }
    const auto it = fields.find(entry.key);
    if (it == fields.end()) {
      return config.ErrorAt(entry.line_number,
                            absl::StrCat("unknown key '", entry.key,
                                         "' in [leads]"));
    }
    auto value = ParseNumber(entry.value);
    if (!value.ok()) {
      return config.ErrorAt(entry.line_number, value.status().message());
    }
    *it->second = *value;
  }
  if (count >= 0.0) {
    if (count != std::floor(count)) {
      return absl::InvalidArgumentError(
          absl::StrCat(config.source_name(), ": lead count must be integer"));
    }
    stream.count = static_cast<int>(count);
    sc.lead_stream = stream;
  }
  return absl::OkStatus();
}

absl::StatusOr<AccelEstimateMode> ParseAccelMode(std::string_view name) {
  if (name == "differentiate_then_smooth") {
    return AccelEstimateMode::kDifferentiateThenSmooth;
  }
  if (name == "smooth_then_differentiate") {
    return AccelEstimateMode::kSmoothThenDifferentiate;
  }
  return absl::InvalidArgumentError(
      absl::StrCat("unknown accel_mode '", std::string(name), "'"));
}

absl::Status ParseAdvisor(const TextConfig& config, AdvisorConfig& advisor) {
  const ConfigSection* s = config.Section("advisor");
  if (s == nullptr) return absl::OkStatus();
  NumberFields fields = {
      {"preview_time", &advisor.preview_time},
      {"ewma_beta", &advisor.ewma_beta},
      {"min_plan_distance", &advisor.min_plan_distance},
      {"min_plan_time", &advisor.min_plan_time},
      {"stop_served_speed", &advisor.stop_served_speed},
      {"stop_served_radius", &advisor.stop_served_radius},
      {"max_accel", &advisor.max_accel},
      {"horizon_cap_factor", &advisor.horizon.cap_factor},
      {"horizon_tolerance", &advisor.horizon.tolerance},
  };
  for (const ConfigEntry& entry : s->entries) {
    if (entry.key == "accel_mode") {
      auto mode = ParseAccelMode(entry.value);
      if (!mode.ok()) {
        return config.ErrorAt(entry.line_number, mode.status().message());
      }
      advisor.accel_mode = *mode;
      continue;
    }
    const auto it = fields.find(entry.key);
    if (it == fields.end()) {
      return config.ErrorAt(entry.line_number,
                            absl::StrCat("unknown key '", entry.key,
                                         "' in [advisor]"));
    }
    auto value = ParseNumber(entry.value);
    if (!value.ok()) {
      return config.ErrorAt(entry.line_number, value.status().message());
    }
    *it->second = *value;
  }
  return absl::OkStatus();
}

}  // namespace

absl::StatusOr<Scenario> ParseScenario(const std::string& text,
                                       const std::string& source,
                                       const std::string& base_dir) {
  ASSIGN_OR_RETURN(const TextConfig config, TextConfig::Parse(text, source));
  static const std::set<std::string, std::less<>> kSections = {
      "scenario", "lights",      "traffic",      "leads",
      "perception", "eco_driver", "human_driver", "advisor"};
  for (const ConfigSection& s : config.sections()) {
    if (s.name.empty()) {
      if (!s.lines.empty()) {
        return config.ErrorAt(s.lines.front().line_number,
                              "content before the first section");
      }
      continue;
    }
    if (!kSections.count(s.name)) {
      return absl::InvalidArgumentError(
          absl::StrCat(source, ": unknown section [", s.name, "]"));
    }
  }

  Scenario sc;
  sc.name = std::filesystem::path(source).stem().string();
  const ConfigSection* head = config.Section("scenario");
  if (head == nullptr) {
    return absl::InvalidArgumentError(
        absl::StrCat(source, ": missing [scenario] section"));
  }
  double seed = static_cast<double>(sc.seed);
  NumberFields numbers = {
      {"seed", &seed},
      {"dt", &sc.dt},
      {"max_duration", &sc.max_duration},
      {"lead_length", &sc.lead_length},
      {"min_gap", &sc.min_gap},
  };
  std::string route_path;
  for (const ConfigEntry& entry : head->entries) {
    if (entry.key == "name") {
      sc.name = entry.value;
    } else if (entry.key == "route") {
      route_path = Resolve(base_dir, entry.value);
    } else if (entry.key == "vehicle") {
      auto vehicle = LoadVehicleParams(Resolve(base_dir, entry.value));
      if (!vehicle.ok()) {
        return config.ErrorAt(entry.line_number, vehicle.status().message());
      }
      sc.vehicle = *vehicle;
    } else if (entry.key == "drivers") {
      if (entry.value == "both") {
        sc.run_eco = sc.run_human = true;
      } else if (entry.value == "eco_advised") {
        sc.run_eco = true;
        sc.run_human = false;
      } else if (entry.value == "human_baseline") {
        sc.run_eco = false;
        sc.run_human = true;
      } else {
        return config.ErrorAt(
            entry.line_number,
            "drivers must be both, eco_advised or human_baseline");
      }
    } else if (auto it = numbers.find(entry.key); it != numbers.end()) {
      auto value = ParseNumber(entry.value);
      if (!value.ok()) {
        return config.ErrorAt(entry.line_number, value.status().message());
      }
      *it->second = *value;
    } else {
      return config.ErrorAt(entry.line_number,
                            absl::StrCat("unknown key '", entry.key,
                                         "' in [scenario]"));
    }
  }
  if (route_path.empty()) {
    return absl::InvalidArgumentError(
        absl::StrCat(source, ": [scenario] needs a route"));
  }
  if (seed < 0.0 || seed != std::floor(seed) || seed > 9.0e15) {
    return absl::InvalidArgumentError(
        absl::StrCat(source, ": seed must be a non-negative integer"));
  }
  sc.seed = static_cast<uint64_t>(seed);
  ASSIGN_OR_RETURN(sc.route, LoadRoute(route_path));

  RETURN_IF_ERROR(ParseSchedules(config, sc));
  RETURN_IF_ERROR(ParseTraffic(config, sc));
  RETURN_IF_ERROR(ParseLeads(config, base_dir, sc));
  RETURN_IF_ERROR(ApplyNumbers(
      config, "perception",
      {{"range", &sc.perception.range},
       {"rate_hz", &sc.perception.rate_hz},
       {"miss_probability", &sc.perception.miss_probability},
       {"gps_rate_hz", &sc.perception.gps_rate_hz},
       {"gps_noise_m", &sc.perception.gps_noise_m},
       {"advisory_rate_hz", &sc.perception.advisory_rate_hz}}));
  RETURN_IF_ERROR(ApplyNumbers(config, "eco_driver",
                               DriverFields(sc.eco_driver)));
  RETURN_IF_ERROR(ApplyNumbers(config, "human_driver",
                               DriverFields(sc.human_driver)));
  RETURN_IF_ERROR(ParseAdvisor(config, sc.advisor));

  const absl::Status status = sc.Validate();
  if (!status.ok()) {
    return absl::InvalidArgumentError(
        absl::StrCat(source, ": ", status.message()));
  }
  return sc;
}

absl::StatusOr<Scenario> LoadScenario(const std::string& path) {
  ASSIGN_OR_RETURN(const std::string text, ReadFile(path));
  const std::string base_dir =
      std::filesystem::path(path).parent_path().string();
  return ParseScenario(text, path, base_dir);
}

}  // namespace ecodrive
