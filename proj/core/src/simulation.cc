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

#include "ecodrive/simulation.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <utility>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "ecodrive/csv.h"
#include "ecodrive/map_matching.h"
#include "ecodrive/status_macros.h"
#include "ecodrive/vehicle_energy.h"

namespace ecodrive {
namespace {

// A trip is complete this close to its end point [m].
constexpr double kFinishTolerance = 1.0;
// Vehicles aim to stop this far before a stop line [m].
constexpr double kStopLineMargin = 0.5;
// Stop-sign service: slow enough, close enough.
constexpr double kServedSpeed = 0.3;
constexpr double kServedRadius = 3.0;

constexpr uint64_t kLeadStreamSalt = 0x6c656164;
constexpr uint64_t kPerceptionSalt = 0x70657263;
constexpr uint64_t kGpsSalt = 0x67707321;

std::mt19937_64 MakeRng(uint64_t seed, uint64_t salt) {
  std::seed_seq seq{static_cast<uint32_t>(seed), static_cast<uint32_t>(seed >> 32),
                    static_cast<uint32_t>(salt)};
  return std::mt19937_64(seq);
}

// Exact integration of piecewise-constant acceleration, never reversing.
// Returns the effective acceleration over the step.
double Advance(double& s, double& v, double a, double dt) {
  const double v0 = v;
  if (v + a * dt < 0.0) {
    s += 0.5 * v * v / -a;
    v = 0.0;
  } else {
    s += v * dt + 0.5 * a * dt * dt;
    v += a * dt;
  }
  return (v - v0) / dt;
}

bool Due(double t, double rate_hz, int count) {
  return t >= count / rate_hz - 1e-9;
}

// The stop line a driver at s has to respect, if visible.
void FillStopLine(const World& world, double s, double t, double visibility,
                  const std::set<size_t>& served, DrivingContext* ctx) {
  const Route& route = world.route();
  const LinkPosition pos = route.Locate(s);
  double end = route.LinkStart(pos.link_index);
  for (size_t j = pos.link_index; j < route.links.size(); ++j) {
    const Link& link = route.links[j];
    end += link.length;
    const double d = end - s;
    if (d > visibility) return;
    if (link.end_feature == EndFeature::kTrafficLight) {
      const LightSchedule* light = world.light(j);
      if (light != nullptr && !light->IsGreen(t)) {
        ctx->stop_distance = d - kStopLineMargin;
        ctx->stop_is_light = true;
        return;
      }
    } else if (link.EndsWithStop() && !served.count(j)) {
      ctx->stop_distance = d - kStopLineMargin;
      ctx->stop_is_light = false;
      return;
    }
  }
}

DrivingContext MakeContext(const World& world, double s, double v, double t,
                           double visibility,
                           const std::set<size_t>& served) {
  DrivingContext ctx;
  ctx.speed = v;
  const Route& route = world.route();
  ctx.v_max = route.links[route.Locate(s).link_index].v_max;
  FillStopLine(world, s, t, visibility, served, &ctx);
  if (auto lead = world.LeadAhead(s, t)) {
    ctx.lead_gap = lead->gap;
    ctx.lead_speed = lead->speed;
  }
  return ctx;
}

void MarkServedStops(const World& world, double s, double v, double t,
                     const std::string& id, std::set<size_t>* served,
                     std::vector<SimEvent>* events) {
  if (v >= kServedSpeed) return;
  const Route& route = world.route();
  const LinkPosition pos = route.Locate(s);
  // The stop line may belong to the current link or, right at a boundary,
  // to the previous one.
  for (size_t j = pos.link_index > 0 ? pos.link_index - 1 : 0;
       j <= pos.link_index; ++j) {
    const Link& link = route.links[j];
    if (link.end_feature == EndFeature::kTrafficLight || !link.EndsWithStop()) {
      continue;
    }
    const double d = route.LinkStart(j) + link.length - s;
    if (std::abs(d) <= kServedRadius && served->insert(j).second && events) {
      events->push_back({t, id, "stop_served", link.id});
    }
  }
}

// Counts stop lines of red lights passed between s0 and s1.
int CountRedCrossings(const World& world, double s0, double s1, double t,
                      const std::string& id, std::vector<SimEvent>* events) {
  const Route& route = world.route();
  int crossings = 0;
  double end = 0.0;
  for (size_t j = 0; j < route.links.size(); ++j) {
    end += route.links[j].length;
    if (end <= s0) continue;
    if (end > s1) break;
    const LightSchedule* light = world.light(j);
    if (light != nullptr && !light->IsGreen(t)) {
      ++crossings;
      if (events) events->push_back({t, id, "red_crossing", route.links[j].id});
    }
  }
  return crossings;
}

struct RunRecorder {
  VehicleRun run;

  explicit RunRecorder(std::string id) {
    run.id = std::move(id);
    run.min_lead_gap = std::numeric_limits<double>::infinity();
    run.max_overspeed = -std::numeric_limits<double>::infinity();
  }

  void Record(const World& world, double t, double s, double v) {
    run.trace.samples.push_back({t, s, v});
    const Route& route = world.route();
    const double v_max = route.links[route.Locate(s).link_index].v_max;
    run.max_overspeed = std::max(run.max_overspeed, v - v_max);
    if (auto lead = world.LeadAhead(s, t)) {
      run.min_lead_gap = std::min(run.min_lead_gap, lead->gap);
    }
  }

  absl::StatusOr<VehicleRun> Finish(const World& world) {
    const Scenario& sc = world.scenario();
    run.trace.vehicle_id = run.id;
    run.trace.route_id = sc.route.name;
    run.trip_time = run.trace.duration();
    run.accel = TraceAccelerations(run.trace);
    run.power = TraceBatteryPower(run.trace, sc.vehicle);
    ASSIGN_OR_RETURN(run.energy_wh, EvaluateTraceEnergy(run.trace, sc.vehicle));
    return std::move(run);
  }
};

absl::Status Timeout(const std::string& id, double t, double s) {
  return absl::DeadlineExceededError(absl::StrFormat(
      "%s did not finish within %.1f s (stuck at %.1f m)", id, t, s));
}

}  // namespace

World::World(const Scenario& scenario, std::vector<const LeadScript*> leads)
    : scenario_(&scenario), leads_(std::move(leads)) {
  const Route& route = scenario.route;
  double end = 0.0;
  for (const Link& link : route.links) {
    end += link.length;
    link_end_.push_back(end);
    lights_.push_back(link.end_feature == EndFeature::kTrafficLight
                          ? scenario.LightFor(link.id)
                          : nullptr);
  }
}

std::optional<World::LeadView> World::LeadAhead(double s, double t) const {
  std::optional<LeadView> best;
  double best_x = std::numeric_limits<double>::infinity();
  for (const LeadScript* lead : leads_) {
    if (!lead->ActiveAt(t)) continue;
    const TripSample p = lead->At(t);
    if (p.x <= s || p.x >= best_x) continue;
    best_x = p.x;
    best = LeadView{
        p.x - s - scenario_->lead_length - scenario_->min_gap, p.v};
  }
  return best;
}

std::optional<World::LightView> World::NextLight(double s, double t,
                                                 double max_distance) const {
  auto it = std::upper_bound(link_end_.begin(), link_end_.end(), s);
  for (; it != link_end_.end(); ++it) {
    const double d = *it - s;
    if (d > max_distance) return std::nullopt;
    const size_t j = static_cast<size_t>(it - link_end_.begin());
    if (lights_[j] != nullptr) {
      return LightView{j, d, lights_[j]->IsGreen(t)};
    }
  }
  return std::nullopt;
}

PerceptionFrame SamplePerception(const World& world, double s, double v,
                                 double t, std::mt19937_64& rng) {
  const PerceptionConfig& cfg = world.scenario().perception;
  PerceptionFrame frame;
  frame.timestamp = t;
  if (auto lead = world.LeadAhead(s, t); lead && lead->gap <= cfg.range) {
    frame.gap = lead->gap;
    frame.relative_speed = lead->speed - v;
  }
  std::uniform_real_distribution<double> uniform(0.0, 1.0);
  const bool missed = uniform(rng) < cfg.miss_probability;
  if (auto light = world.NextLight(s, t, cfg.range); light && !missed) {
    frame.light_detected = true;
    frame.green = light->green;
    frame.red = !light->green;
  }
  return frame;
}

absl::StatusOr<std::vector<LeadScript>> MaterializeLeads(
    const Scenario& sc) {
  std::vector<LeadScript> leads = sc.leads;
  if (!sc.lead_stream || sc.lead_stream->count == 0) return leads;
  const LeadStreamSpec& stream = *sc.lead_stream;
  const Route& route = sc.route;
  const double total = route.TotalLength();
  std::mt19937_64 rng = MakeRng(sc.seed, kLeadStreamSalt);
  std::uniform_real_distribution<double> uniform(0.0, 1.0);

  struct Draw {
    double start, exit, aggressiveness, speed_factor;
  };
  std::vector<Draw> draws;
  for (int i = 0; i < stream.count; ++i) {
    Draw d;
    d.start = stream.first_position + i * stream.spacing;
    d.aggressiveness =
        stream.min_aggressiveness +
        uniform(rng) * (stream.max_aggressiveness - stream.min_aggressiveness);
    d.speed_factor =
        stream.min_speed_factor +
        uniform(rng) * (stream.max_speed_factor - stream.min_speed_factor);
    d.exit = total;
    double end = 0.0;
    for (size_t j = 0; j + 1 < route.links.size(); ++j) {
      end += route.links[j].length;
      if (end <= d.start + 2.0 * kFinishTolerance) continue;
      if (uniform(rng) < stream.exit_probability) {
        d.exit = end;
        break;
      }
    }
    draws.push_back(d);
  }

  // Front-most first so each lead can follow the ones ahead of it.
  std::vector<LeadScript> generated(draws.size());
  for (int i = stream.count - 1; i >= 0; --i) {
    const Draw& d = draws[i];
    if (d.start >= d.exit - 2.0 * kFinishTolerance) continue;
    std::vector<const LeadScript*> ahead;
    for (const LeadScript& l : leads) ahead.push_back(&l);
    for (int k = i + 1; k < stream.count; ++k) {
      if (!generated[k].samples.empty()) ahead.push_back(&generated[k]);
    }
    World world(sc, ahead);
    DriverConfig driver = sc.human_driver;
    driver.aggressiveness = d.aggressiveness;
    driver.desired_speed_factor = d.speed_factor;
    const std::string name = absl::StrCat("lead", i + 1);
    ASSIGN_OR_RETURN(VehicleRun run,
                     SimulateHumanVehicle(world, driver, d.start, d.exit,
                                          stream.start_time, name, nullptr));
    generated[i].name = name;
    generated[i].samples = std::move(run.trace.samples);
  }
  for (LeadScript& l : generated) {
    if (!l.samples.empty()) leads.push_back(std::move(l));
  }
  return leads;
}

absl::StatusOr<VehicleRun> SimulateHumanVehicle(
    const World& world, const DriverConfig& driver, double start_s,
    double end_s, double start_t, const std::string& id,
    std::vector<SimEvent>* events) {
  const Scenario& sc = world.scenario();
  RunRecorder rec(id);
  std::set<size_t> served;
  double s = start_s;
  double v = 0.0;
  rec.Record(world, start_t, s, v);
  for (int64_t k = 0; s < end_s - kFinishTolerance; ++k) {
    const double t = start_t + k * sc.dt;
    if (t - start_t > sc.max_duration) return Timeout(id, t - start_t, s);
    const DrivingContext ctx =
        MakeContext(world, s, v, t, driver.light_visibility, served);
    const double a = BaselineDriverAccel(ctx, driver);
    const double s_prev = s;
    Advance(s, v, a, sc.dt);
    const double t_next = start_t + (k + 1) * sc.dt;
    rec.run.red_light_crossings +=
        CountRedCrossings(world, s_prev, s, t_next, id, events);
    MarkServedStops(world, s, v, t_next, id, &served, events);
    rec.Record(world, t_next, s, v);
  }
  if (events) events->push_back({rec.run.trace.samples.back().t, id,
                                 "finished", ""});
  return rec.Finish(world);
}

absl::StatusOr<VehicleRun> SimulateEcoVehicle(
    const World& world, std::vector<AdvisoryLogRow>* advisories,
    std::vector<SimEvent>* events) {
  const Scenario& sc = world.scenario();
  const Route& route = world.route();
  const PerceptionConfig& pc = sc.perception;
  const std::string id = "ED";
  const double end_s = route.TotalLength();

  std::mt19937_64 perception_rng = MakeRng(sc.seed, kPerceptionSalt);
  std::mt19937_64 gps_rng = MakeRng(sc.seed, kGpsSalt);
  std::normal_distribution<double> gps_noise(0.0, 1.0);

  EcoDrivingAdvisor advisor(sc.advisor);
  MapMatcher matcher(route);
  EcoDriver driver(sc.eco_driver);
  RunRecorder rec(id);
  std::set<size_t> served;

  double s = 0.0;
  double v = 0.0;
  // Localisation estimate: last map-matched fix advanced by odometry.
  size_t est_link = 0;
  double est_x = 0.0;
  PerceptionFrame frame;
  double target = 0.0;
  ActiveConstraint last_constraint = ActiveConstraint::kNone;
  bool lead_seen = false;
  size_t red_logged_link = std::numeric_limits<size_t>::max();
  int gps_count = 0;
  int perception_count = 0;
  int advisory_count = 0;

  rec.Record(world, 0.0, s, v);
  for (int64_t k = 0; s < end_s - kFinishTolerance; ++k) {
    const double t = k * sc.dt;
    if (t > sc.max_duration) return Timeout(id, t, s);

    if (Due(t, pc.gps_rate_hz, gps_count)) {
      ++gps_count;
      PlanarPoint p = route.PointAtDistance(s);
      if (pc.gps_noise_m > 0.0) {
        p.x += pc.gps_noise_m * gps_noise(gps_rng);
        p.y += pc.gps_noise_m * gps_noise(gps_rng);
      }
      auto match = matcher.Match(p);
      if (match.ok()) {
        est_link = match->link_index;
        est_x = match->x;
      } else if (events) {
        events->push_back({t, id, "match_failed", 
                           std::string(match.status().message())});
      }
    }
    if (Due(t, pc.rate_hz, perception_count)) {
      ++perception_count;
      frame = SamplePerception(world, s, v, t, perception_rng);
      if (events && frame.has_lead() != lead_seen) {
        if (frame.has_lead()) {
          events->push_back({t, id, "lead_detected",
                             absl::StrFormat("gap=%.1f", *frame.gap)});
        } else {
          events->push_back({t, id, "lead_lost", ""});
        }
      }
      lead_seen = frame.has_lead();
      if (events && frame.red) {
        // Missed detections flicker the frame; log each light once.
        const auto light = world.NextLight(s, t, pc.range);
        if (light && light->link_index != red_logged_link) {
          red_logged_link = light->link_index;
          events->push_back(
              {t, id, "red_light_seen", route.links[light->link_index].id});
        }
      }
    }
    if (Due(t, pc.advisory_rate_hz, advisory_count)) {
      ++advisory_count;
      const KinState ego{est_x, v, t};
      auto advisory = advisor.Step(ego, route.links[est_link], frame);
      if (!advisory.ok()) {
        return absl::InternalError(absl::StrFormat(
            "advisor failed at t=%.2f s on link %s: %s", t,
            route.links[est_link].id, advisory.status().message()));
      }
      target = advisory->target_speed;
      if (advisories) {
        advisories->push_back({t, target, advisory->active_constraint,
                               advisory->bc_used.horizon,
                               advisory->bc_used.distance,
                               advisory->bc_used.terminal_speed,
                               route.links[est_link].id});
      }
      if (events && advisory->active_constraint != last_constraint) {
        events->push_back(
            {t, id, "constraint",
             std::string(ActiveConstraintName(advisory->active_constraint))});
      }
      last_constraint = advisory->active_constraint;
    }

    const DrivingContext ctx = MakeContext(
        world, s, v, t, sc.eco_driver.light_visibility, served);
    const double a = std::min(driver.Command(t, target, v),
                              SupervisionCap(ctx, sc.eco_driver));
    const double s_prev = s;
    Advance(s, v, a, sc.dt);
    const double t_next = (k + 1) * sc.dt;

    // Odometry between fixes.
    est_x += s - s_prev;
    while (est_x >= route.links[est_link].length &&
           est_link + 1 < route.links.size()) {
      est_x -= route.links[est_link].length;
      ++est_link;
    }

    rec.run.red_light_crossings +=
        CountRedCrossings(world, s_prev, s, t_next, id, events);
    MarkServedStops(world, s, v, t_next, id, &served, events);
    rec.Record(world, t_next, s, v);
  }
  if (events) {
    events->push_back({rec.run.trace.samples.back().t, id, "finished", ""});
  }
  return rec.Finish(world);
}

absl::StatusOr<SimResult> RunScenario(const Scenario& scenario) {
  RETURN_IF_ERROR(scenario.Validate());
  SimResult result;
  result.scenario = scenario.name;
  ASSIGN_OR_RETURN(result.leads, MaterializeLeads(scenario));
  std::vector<const LeadScript*> leads;
  for (const LeadScript& l : result.leads) leads.push_back(&l);
  const World world(scenario, leads);
  if (scenario.run_human) {
    ASSIGN_OR_RETURN(result.human,
                     SimulateHumanVehicle(world, scenario.human_driver, 0.0,
                                          scenario.route.TotalLength(), 0.0,
                                          "HD", &result.events));
  }
  if (scenario.run_eco) {
    ASSIGN_OR_RETURN(result.eco, SimulateEcoVehicle(world, &result.advisories,
                                                    &result.events));
  }
  std::stable_sort(result.events.begin(), result.events.end(),
                   [](const SimEvent& a, const SimEvent& b) {
                     return a.t < b.t;
                   });
  return result;
}

namespace {

void AppendRunSummary(std::string* out, const VehicleRun& run) {
  absl::StrAppendFormat(
      out,
      "%s: trip_time_s=%.2f distance_m=%.2f avg_speed_mps=%.4f "
      "energy_Wh=%.4f red_crossings=%d max_overspeed_mps=%.4f",
      run.id, run.trip_time, run.trace.distance(), run.trace.average_speed(),
      run.energy_wh, run.red_light_crossings, run.max_overspeed);
  if (std::isfinite(run.min_lead_gap)) {
    absl::StrAppendFormat(out, " min_gap_m=%.3f", run.min_lead_gap);
  } else {
    absl::StrAppend(out, " min_gap_m=none");
  }
  absl::StrAppend(out, "\n");
}

}  // namespace

std::string FormatSimSummary(const SimResult& result) {
  std::string out;
  absl::StrAppend(&out, "scenario: ", result.scenario, "\n");
  absl::StrAppend(&out, "leads: ", result.leads.size(), "\n");
  if (result.eco) AppendRunSummary(&out, *result.eco);
  if (result.human) AppendRunSummary(&out, *result.human);
  if (result.eco && result.human && result.human->energy_wh != 0.0 &&
      result.human->trace.average_speed() > 0.0) {
    const double gain = (result.human->energy_wh - result.eco->energy_wh) /
                        result.human->energy_wh * 100.0;
    const double dv = (result.eco->trace.average_speed() -
                       result.human->trace.average_speed()) /
                      result.human->trace.average_speed() * 100.0;
    absl::StrAppendFormat(&out, "energy_gain_pct: %.4f\n", gain);
    absl::StrAppendFormat(&out, "delta_avg_speed_pct: %.4f\n", dv);
  }
  return out;
}

std::string FormatAdvisoryCsv(const std::vector<AdvisoryLogRow>& rows) {
  std::string out = "t,target_speed,active_constraint,T,D,V\n";
  for (const AdvisoryLogRow& r : rows) {
    absl::StrAppend(&out, FormatNumber(r.t), ",", FormatNumber(r.target_speed),
                    ",", std::string(ActiveConstraintName(r.active_constraint)), ",",
                    FormatNumber(r.horizon), ",", FormatNumber(r.distance), ",",
                    FormatNumber(r.terminal_speed), "\n");
  }
  return out;
}

std::string FormatEventLog(const std::vector<SimEvent>& events) {
  std::string out = "t,vehicle,event,detail\n";
  for (const SimEvent& e : events) {
    absl::StrAppend(&out, FormatNumber(e.t), ",", e.vehicle, ",", e.kind, ",",
                    e.detail, "\n");
  }
  return out;
}

}  // namespace ecodrive
