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

#ifndef ECODRIVE_ROUTE_H_
#define ECODRIVE_ROUTE_H_

#include <string>
#include <string_view>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "ecodrive/geodesy.h"

namespace ecodrive {

// What delimits a link at its downstream end.
enum class EndFeature {
  kNone,
  kTrafficLight,
  kStopSign,
  kSpeedChange,
};

absl::StatusOr<EndFeature> ParseEndFeature(std::string_view name);
std::string_view EndFeatureName(EndFeature feature);

// Lights and stop signs are hard boundaries: aggregation never removes them
// and the planner may have to stop there.
inline bool IsHardBoundary(EndFeature f) {
  return f == EndFeature::kTrafficLight || f == EndFeature::kStopSign;
}

inline constexpr double kDefaultTrafficSpeedFactor = 0.8;

struct Link {
  std::string id;
  std::vector<GeoPoint> geo_polyline;
  std::vector<PlanarPoint> polyline;
  double v_max = 0.0;         // m/s
  double length = 0.0;        // D_f, m
  double duration = 0.0;      // T_f, s
  double final_speed = 0.0;   // v_f, m/s
  EndFeature end_feature = EndFeature::kNone;
  // Average traffic speed used as terminal speed on green; <= 0 selects
  // kDefaultTrafficSpeedFactor * v_max.
  double avg_traffic_speed = 0.0;

  double AverageTrafficSpeed() const {
    return avg_traffic_speed > 0.0 ? avg_traffic_speed
                                   : kDefaultTrafficSpeedFactor * v_max;
  }
  bool EndsWithStop() const {
    return end_feature == EndFeature::kStopSign || final_speed <= 0.0;
  }
  double PolylineLength() const;
};

// Planar point at link position x in [0, length]. The polyline is walked
// proportionally, so small length/polyline mismatches do not accumulate.
PlanarPoint PointOnLink(const Link& link, double x);

struct LinkPosition {
  size_t link_index = 0;
  double x = 0.0;  // along the link
};

struct Route {
  std::string name;
  ProjectionConfig projection;
  GeoPoint origin;
  GeoPoint destination;
  std::vector<Link> links;

  absl::Status Validate() const;

  double TotalLength() const;
  double TotalDuration() const;
  // Route arc length at the start of link i.
  double LinkStart(size_t i) const;
  // Route arc length -> link and position along it. Positions on a link
  // boundary belong to the downstream link, except at the route end.
  LinkPosition Locate(double s) const;
  PlanarPoint PointAtDistance(double s) const;
  int LinkIndex(std::string_view id) const;
};

// Route file: a [route] header (name, projection, origin, destination as
// "lat, lon") and a [links] table with rows
//   id, v_max_kmh, D_f_m, T_f_s, v_f_kmh, end_feature, lat lon; lat lon; ...
absl::StatusOr<Route> ParseRoute(const std::string& text,
                                 const std::string& source);
absl::StatusOr<Route> LoadRoute(const std::string& path);
std::string FormatRoute(const Route& route);

struct AggregationRules {
  double min_length = 50.0;  // m
  bool merge_equal_speed_limit = true;
};

// Merges a link into its successor when it is shorter than
// `rules.min_length`, or when it has the same speed limit and no end
// feature. Links ending at a light or stop sign are never merged forward.
// The merged link sums lengths and durations and takes the successor's
// final speed and end feature.
std::vector<Link> AggregateLinks(const std::vector<Link>& links,
                                 const AggregationRules& rules = {});

}  // namespace ecodrive

#endif  // ECODRIVE_ROUTE_H_
