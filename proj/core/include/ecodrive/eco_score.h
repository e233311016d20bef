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

#ifndef ECODRIVE_ECO_SCORE_H_
#define ECODRIVE_ECO_SCORE_H_

#include <string>
#include <string_view>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "ecodrive/ocp.h"
#include "ecodrive/route.h"
#include "ecodrive/trip_trace.h"
#include "ecodrive/vehicle_energy.h"

namespace ecodrive {

enum class BreakpointKind { kPlanned, kTraffic };

std::string_view BreakpointKindName(BreakpointKind kind);

// Anchor of the reference profile. A vehicle standing still at a breakpoint
// enters at (x, t, v) and leaves `dwell` seconds later at (exit_x, exit_t,
// exit_v); without a stop the two states coincide.
struct Breakpoint {
  double x = 0.0;
  double t = 0.0;
  double v = 0.0;
  BreakpointKind kind = BreakpointKind::kPlanned;
  double exit_x = 0.0;
  double exit_t = 0.0;
  double exit_v = 0.0;

  double dwell() const { return exit_t - t; }
};

struct BreakpointOptions {
  double prominence_min = 2.0;  // m/s
  double merge_radius = 20.0;   // m
  // Speeds at or below this count as standing still [m/s].
  double stop_speed = 0.05;
  // How far short of the route end a trace may finish [m].
  double coverage_tolerance = 1.5;
};

// Topographic prominence of the local minimum (or flat-bottom plateau)
// spanning samples [first, last]: the lower of the highest speeds reached
// on either side before the signal drops below the minimum.
double MinimumProminence(const std::vector<double>& v, size_t first,
                         size_t last);

// Indices [first, last] of every interior local minimum plateau.
std::vector<std::pair<size_t, size_t>> LocalMinima(
    const std::vector<double>& v);

// Planned breakpoints at trip ends and at link ends with a light, stop or
// speed change, plus prominent speed minima. Minima near a planned
// breakpoint are merged into it and lend it their observed state.
absl::StatusOr<std::vector<Breakpoint>> DetectBreakpoints(
    const TripTrace& trace, const Route& route,
    const BreakpointOptions& options = {});

struct ReferenceSegment {
  BoundaryConditions bc;
  QuadraticProfile profile;
  double v_max = 0.0;
  // True when the profile left [0, v_max] and was clipped.
  bool clipped = false;
};

struct ReferenceProfile {
  TripTrace trace;
  std::vector<ReferenceSegment> segments;
};

// Per-segment optimal profile between consecutive breakpoints, with the
// horizon fixed by the observed timing. Sampled at the trace's own times
// plus every breakpoint time.
absl::StatusOr<ReferenceProfile> OptimalReference(
    const TripTrace& trace, const std::vector<Breakpoint>& breakpoints,
    const Route& route);

// (E_D - E_T) / E_T.
absl::StatusOr<double> Eds(double driven_energy, double reference_energy);

struct SegmentScore {
  double x0 = 0.0, x1 = 0.0;
  double t0 = 0.0, t1 = 0.0;
  double driven_wh = 0.0;
  double reference_wh = 0.0;
  bool clipped = false;
};

struct EdsReport {
  double driven_wh = 0.0;     // E_D
  double reference_wh = 0.0;  // E_T
  double eds = 0.0;
  std::vector<Breakpoint> breakpoints;
  std::vector<SegmentScore> segments;
  ReferenceProfile reference;
};

absl::StatusOr<EdsReport> ScoreTrip(const TripTrace& trace, const Route& route,
                                    const VehicleParams& params,
                                    const BreakpointOptions& options = {});

struct TripComparison {
  double ed_wh = 0.0;
  double hd_wh = 0.0;
  double energy_gain_pct = 0.0;      // (E_HD - E_ED) / E_HD * 100
  double delta_avg_speed_pct = 0.0;  // (v_ED - v_HD) / v_HD * 100
  EdsReport ed_score;
  EdsReport hd_score;
};

absl::StatusOr<TripComparison> CompareTrips(
    const TripTrace& ed, const TripTrace& hd, const Route& route,
    const VehicleParams& params, const BreakpointOptions& options = {});

// Trace restricted to [t0, t1], interpolated at the ends.
TripTrace SliceTrace(const TripTrace& trace, double t0, double t1);

struct EdsRow {
  std::string trip;
  double driven_wh = 0.0;
  double reference_wh = 0.0;
  double eds = 0.0;
};

struct ComparisonRow {
  std::string trip;
  double energy_gain_pct = 0.0;
  double delta_avg_speed_pct = 0.0;
};

// `trip,E_D_Wh,E_T_Wh,EDS`
std::string FormatEdsCsv(const std::vector<EdsRow>& rows);
// `trip,energy_gain_pct,delta_avg_speed_pct`
std::string FormatComparisonCsv(const std::vector<ComparisonRow>& rows);
// `x,t,v,kind,dwell`
std::string FormatBreakpointsCsv(const std::vector<Breakpoint>& breakpoints);

}  // namespace ecodrive

#endif  // ECODRIVE_ECO_SCORE_H_
