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

#include "ecodrive/eco_score.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <utility>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "ecodrive/csv.h"
#include "ecodrive/status_macros.h"

namespace ecodrive {

std::string_view BreakpointKindName(BreakpointKind kind) {
  return kind == BreakpointKind::kPlanned ? "planned" : "traffic";
}

std::vector<std::pair<size_t, size_t>> LocalMinima(
    const std::vector<double>& v) {
  std::vector<std::pair<size_t, size_t>> minima;
  size_t i = 1;
  while (i + 1 < v.size()) {
    if (!(v[i] < v[i - 1])) {
      ++i;
      continue;
    }
    size_t j = i;
    while (j + 1 < v.size() && v[j + 1] == v[i]) ++j;
    if (j + 1 < v.size() && v[j + 1] > v[i]) minima.emplace_back(i, j);
    i = j + 1;
  }
  return minima;
}

double MinimumProminence(const std::vector<double>& v, size_t first,
                         size_t last) {
  const double bottom = v[first];
  double left = bottom;
  for (size_t k = first; k-- > 0;) {
    if (v[k] < bottom) break;
    left = std::max(left, v[k]);
  }
  double right = bottom;
  for (size_t k = last + 1; k < v.size(); ++k) {
    if (v[k] < bottom) break;
    right = std::max(right, v[k]);
  }
  return std::min(left, right) - bottom;
}

namespace {

Breakpoint AtSample(const TripSample& s, BreakpointKind kind) {
  return Breakpoint{s.x, s.t, s.v, kind, s.x, s.t, s.v};
}

// Breakpoint covering the standstill around samples [first, last].
Breakpoint StandstillBreakpoint(const TripTrace& trace, size_t first,
                                size_t last, double stop_speed,
                                BreakpointKind kind) {
  const auto& s = trace.samples;
  if (s[first].v <= stop_speed) {
    while (first > 0 && s[first - 1].v <= stop_speed) --first;
    while (last + 1 < s.size() && s[last + 1].v <= stop_speed) ++last;
  } else {
    first = last = (first + last) / 2;
  }
  Breakpoint bp = AtSample(s[first], kind);
  bp.exit_x = s[last].x;
  bp.exit_t = s[last].t;
  bp.exit_v = s[last].v;
  return bp;
}

bool IsPlannedBoundary(const Link& link) {
  return link.end_feature != EndFeature::kNone || link.EndsWithStop();
}

}  // namespace

absl::StatusOr<std::vector<Breakpoint>> DetectBreakpoints(
    const TripTrace& trace, const Route& route,
    const BreakpointOptions& options) {
  RETURN_IF_ERROR(trace.Validate());
  if (trace.size() < 2) {
    return absl::InvalidArgumentError("trace needs at least two samples");
  }
  const double total = route.TotalLength();
  if (trace.samples.back().x < total - options.coverage_tolerance) {
    return absl::InvalidArgumentError(absl::StrFormat(
        "trace ends at %.2f m, shorter than the %.2f m route",
        trace.samples.back().x, total));
  }
  const auto& s = trace.samples;
  const size_t n = s.size();

  // Trip endpoints, absorbing any standstill at either end.
  std::vector<Breakpoint> planned;
  planned.push_back(
      StandstillBreakpoint(trace, 0, 0, options.stop_speed,
                           BreakpointKind::kPlanned));
  Breakpoint end = AtSample(s[n - 1], BreakpointKind::kPlanned);
  if (s[n - 1].v <= options.stop_speed) {
    end = StandstillBreakpoint(trace, n - 1, n - 1, options.stop_speed,
                               BreakpointKind::kPlanned);
  }
  double link_end = 0.0;
  for (size_t j = 0; j + 1 < route.links.size(); ++j) {
    link_end += route.links[j].length;
    if (!IsPlannedBoundary(route.links[j])) continue;
    if (link_end <= planned.front().exit_x || link_end >= end.x) continue;
    planned.push_back(
        AtSample(trace.AtPosition(link_end), BreakpointKind::kPlanned));
  }
  planned.push_back(end);

  std::vector<double> speeds(n);
  for (size_t k = 0; k < n; ++k) speeds[k] = s[k].v;
  std::vector<Breakpoint> traffic;
  std::vector<bool> merged(planned.size(), false);
  for (const auto& [first, last] : LocalMinima(speeds)) {
    if (MinimumProminence(speeds, first, last) < options.prominence_min) {
      continue;
    }
    const Breakpoint candidate = StandstillBreakpoint(
        trace, first, last, options.stop_speed, BreakpointKind::kTraffic);
    size_t nearest = 0;
    double nearest_d = std::numeric_limits<double>::infinity();
    for (size_t p = 0; p < planned.size(); ++p) {
      const double d = std::abs(planned[p].x - candidate.x);
      if (d < nearest_d) {
        nearest_d = d;
        nearest = p;
      }
    }
    if (nearest_d <= options.merge_radius) {
      const bool endpoint = nearest == 0 || nearest + 1 == planned.size();
      if (!endpoint && (!merged[nearest] || candidate.v < planned[nearest].v)) {
        planned[nearest] = candidate;
        planned[nearest].kind = BreakpointKind::kPlanned;
        merged[nearest] = true;
      }
      continue;
    }
    traffic.push_back(candidate);
  }

  std::vector<Breakpoint> all = planned;
  all.insert(all.end(), traffic.begin(), traffic.end());
  std::stable_sort(all.begin(), all.end(),
                   [](const Breakpoint& a, const Breakpoint& b) {
                     return a.x < b.x;
                   });
  // Keep a strictly advancing chain; the trip end always survives.
  auto advances = [](const Breakpoint& prev, const Breakpoint& next) {
    return next.x > prev.exit_x && next.t > prev.exit_t;
  };
  std::vector<Breakpoint> out;
  for (size_t k = 0; k < all.size(); ++k) {
    const Breakpoint& bp = all[k];
    if (!out.empty() && !advances(out.back(), bp)) {
      if (k + 1 < all.size()) continue;
      while (out.size() > 1 && !advances(out.back(), bp)) out.pop_back();
      if (!advances(out.back(), bp)) continue;
    }
    out.push_back(bp);
  }
  if (out.size() < 2) {
    return absl::InvalidArgumentError("trace too short to segment");
  }
  return out;
}

absl::StatusOr<ReferenceProfile> OptimalReference(
    const TripTrace& trace, const std::vector<Breakpoint>& breakpoints,
    const Route& route) {
  if (breakpoints.size() < 2) {
    return absl::InvalidArgumentError("need at least two breakpoints");
  }
  ReferenceProfile ref;
  ref.trace.vehicle_id = trace.vehicle_id + "_reference";
  ref.trace.route_id = trace.route_id;
  for (size_t k = 0; k + 1 < breakpoints.size(); ++k) {
    const Breakpoint& a = breakpoints[k];
    const Breakpoint& b = breakpoints[k + 1];
    ReferenceSegment seg;
    seg.bc.initial_speed = std::max(0.0, a.exit_v);
    seg.bc.terminal_speed = std::max(0.0, b.v);
    seg.bc.distance = b.x - a.exit_x;
    seg.bc.horizon = b.t - a.exit_t;
    if (!(seg.bc.distance > 0.0) || !(seg.bc.horizon > 0.0)) {
      return absl::InvalidArgumentError(absl::StrFormat(
          "degenerate segment %d: dx=%.6g m, dt=%.6g s", k, seg.bc.distance,
          seg.bc.horizon));
    }
    ASSIGN_OR_RETURN(seg.profile, SolveUnconstrained(seg.bc));
    seg.v_max = std::numeric_limits<double>::infinity();
    double start = 0.0;
    for (const Link& link : route.links) {
      const double stop = start + link.length;
      if (start < b.x && stop > a.exit_x) seg.v_max = std::min(seg.v_max, link.v_max);
      start = stop;
    }
    const double T = seg.bc.horizon;
    double low = std::min(seg.profile.Speed(0.0), seg.profile.Speed(T));
    const double vertex =
        seg.profile.c2() != 0.0 ? -seg.profile.c1() / (2.0 * seg.profile.c2())
                                : -1.0;
    if (vertex > 0.0 && vertex < T) low = std::min(low, seg.profile.Speed(vertex));
    seg.clipped = seg.profile.PeakSpeed() > seg.v_max + 1e-9 || low < -1e-9;
    ref.segments.push_back(seg);
  }

  // Sample times: the trace's, plus every breakpoint entry and exit.
  const double t_begin = breakpoints.front().t;
  const double t_end = breakpoints.back().exit_t;
  std::vector<double> times;
  for (const TripSample& s : trace.samples) {
    if (s.t > t_begin && s.t < t_end) times.push_back(s.t);
  }
  for (const Breakpoint& bp : breakpoints) {
    times.push_back(bp.t);
    times.push_back(bp.exit_t);
  }
  std::sort(times.begin(), times.end());
  times.erase(std::unique(times.begin(), times.end()), times.end());

  size_t k = 0;
  for (const double t : times) {
    while (k + 1 < breakpoints.size() && breakpoints[k + 1].t <= t) ++k;
    const Breakpoint& bp = breakpoints[k];
    TripSample sample{t, 0.0, 0.0};
    if (t == bp.t) {
      sample.x = bp.x;
      sample.v = bp.v;
    } else if (t == bp.exit_t) {
      sample.x = bp.exit_x;
      sample.v = bp.exit_v;
    } else if (t < bp.exit_t) {
      const double w = (t - bp.t) / (bp.exit_t - bp.t);
      sample.x = bp.x + w * (bp.exit_x - bp.x);
      sample.v = bp.v + w * (bp.exit_v - bp.v);
    } else {
      const ReferenceSegment& seg = ref.segments[k];
      const double tau = t - bp.exit_t;
      sample.x = bp.exit_x + seg.profile.Distance(tau);
      sample.v = std::clamp(seg.profile.Speed(tau), 0.0, seg.v_max);
    }
    ref.trace.samples.push_back(sample);
  }

  // Clipped segments: integrate the clipped speed so positions stay
  // consistent and monotone.
  k = 0;
  auto& out = ref.trace.samples;
  for (size_t i = 1; i < out.size(); ++i) {
    while (k + 1 < breakpoints.size() && breakpoints[k + 1].t <= out[i].t) ++k;
    const Breakpoint& bp = breakpoints[k];
    if (k + 1 >= breakpoints.size() || !ref.segments[k].clipped) continue;
    if (out[i - 1].t < bp.exit_t || out[i].t == breakpoints[k + 1].t) continue;
    out[i].x = out[i - 1].x +
               0.5 * (out[i - 1].v + out[i].v) * (out[i].t - out[i - 1].t);
  }
  return ref;
}

absl::StatusOr<double> Eds(double driven_energy, double reference_energy) {
  if (!(reference_energy > 0.0)) {
    return absl::InvalidArgumentError(absl::StrCat(
        "reference energy must be > 0, got ", reference_energy));
  }
  return (driven_energy - reference_energy) / reference_energy;
}

TripTrace SliceTrace(const TripTrace& trace, double t0, double t1) {
  TripTrace out;
  out.vehicle_id = trace.vehicle_id;
  out.route_id = trace.route_id;
  out.samples.push_back(trace.AtTime(t0));
  for (const TripSample& s : trace.samples) {
    if (s.t > t0 && s.t < t1) out.samples.push_back(s);
  }
  if (t1 > t0) out.samples.push_back(trace.AtTime(t1));
  return out;
}

absl::StatusOr<EdsReport> ScoreTrip(const TripTrace& trace, const Route& route,
                                    const VehicleParams& params,
                                    const BreakpointOptions& options) {
  EdsReport report;
  ASSIGN_OR_RETURN(report.breakpoints,
                   DetectBreakpoints(trace, route, options));
  ASSIGN_OR_RETURN(report.reference,
                   OptimalReference(trace, report.breakpoints, route));
  const TripTrace driven =
      SliceTrace(trace, report.breakpoints.front().t,
                 report.breakpoints.back().exit_t);
  ASSIGN_OR_RETURN(report.driven_wh, EvaluateTraceEnergy(driven, params));
  ASSIGN_OR_RETURN(report.reference_wh,
                   EvaluateTraceEnergy(report.reference.trace, params));
  ASSIGN_OR_RETURN(report.eds, Eds(report.driven_wh, report.reference_wh));
  for (size_t k = 0; k + 1 < report.breakpoints.size(); ++k) {
    const Breakpoint& a = report.breakpoints[k];
    const Breakpoint& b = report.breakpoints[k + 1];
    SegmentScore seg;
    seg.x0 = a.x;
    seg.x1 = b.x;
    seg.t0 = a.t;
    seg.t1 = b.t;
    seg.clipped = report.reference.segments[k].clipped;
    ASSIGN_OR_RETURN(seg.driven_wh,
                     EvaluateTraceEnergy(SliceTrace(trace, a.t, b.t), params));
    ASSIGN_OR_RETURN(
        seg.reference_wh,
        EvaluateTraceEnergy(SliceTrace(report.reference.trace, a.t, b.t),
                            params));
    report.segments.push_back(seg);
  }
  return report;
}

absl::StatusOr<TripComparison> CompareTrips(const TripTrace& ed,
                                            const TripTrace& hd,
                                            const Route& route,
                                            const VehicleParams& params,
                                            const BreakpointOptions& options) {
  const double total = route.TotalLength();
  for (const TripTrace* trace : {&ed, &hd}) {
    if (trace->size() < 2 ||
        trace->samples.back().x < total - options.coverage_tolerance) {
      return absl::InvalidArgumentError(absl::StrCat(
          "incomplete trace '", trace->vehicle_id, "': does not reach the ",
          "route end"));
    }
  }
  TripComparison cmp;
  ASSIGN_OR_RETURN(cmp.ed_wh, EvaluateTraceEnergy(ed, params));
  ASSIGN_OR_RETURN(cmp.hd_wh, EvaluateTraceEnergy(hd, params));
  if (cmp.hd_wh == 0.0) {
    return absl::InvalidArgumentError("baseline trip has zero energy");
  }
  const double v_ed = ed.average_speed();
  const double v_hd = hd.average_speed();
  if (!(v_hd > 0.0)) {
    return absl::InvalidArgumentError("baseline trip has zero average speed");
  }
  cmp.energy_gain_pct = (cmp.hd_wh - cmp.ed_wh) / cmp.hd_wh * 100.0;
  cmp.delta_avg_speed_pct = (v_ed - v_hd) / v_hd * 100.0;
  ASSIGN_OR_RETURN(cmp.ed_score, ScoreTrip(ed, route, params, options));
  ASSIGN_OR_RETURN(cmp.hd_score, ScoreTrip(hd, route, params, options));
  return cmp;
}

namespace {

std::string Fixed(double value, int digits) {
  std::string s = absl::StrFormat("%.*f", digits, value);
  if (s.find_first_not_of("-0.") == std::string::npos && s[0] == '-') {
    s.erase(0, 1);
  }
  return s;
}

}  // namespace

std::string FormatEdsCsv(const std::vector<EdsRow>& rows) {
  std::string out = "trip,E_D_Wh,E_T_Wh,EDS\n";
  for (const EdsRow& r : rows) {
    absl::StrAppend(&out, r.trip, ",", Fixed(r.driven_wh, 4), ",",
                    Fixed(r.reference_wh, 4), ",", Fixed(r.eds, 6), "\n");
  }
  return out;
}

std::string FormatComparisonCsv(const std::vector<ComparisonRow>& rows) {
  std::string out = "trip,energy_gain_pct,delta_avg_speed_pct\n";
  for (const ComparisonRow& r : rows) {
    absl::StrAppend(&out, r.trip, ",", Fixed(r.energy_gain_pct, 4), ",",
                    Fixed(r.delta_avg_speed_pct, 4), "\n");
  }
  return out;
}

std::string FormatBreakpointsCsv(const std::vector<Breakpoint>& breakpoints) {
  std::string out = "x,t,v,kind,dwell\n";
  for (const Breakpoint& bp : breakpoints) {
    absl::StrAppend(&out, FormatNumber(bp.x), ",", FormatNumber(bp.t), ",",
                    FormatNumber(bp.v), ",",
                    std::string(BreakpointKindName(bp.kind)), ",",
                    FormatNumber(bp.dwell()), "\n");
  }
  return out;
}

}  // namespace ecodrive
