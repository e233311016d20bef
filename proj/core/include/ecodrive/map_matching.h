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

#ifndef ECODRIVE_MAP_MATCHING_H_
#define ECODRIVE_MAP_MATCHING_H_

#include <optional>
#include <span>
#include <string>

#include "absl/status/statusor.h"
#include "ecodrive/geodesy.h"
#include "ecodrive/route.h"

namespace ecodrive {

struct MatchResult {
  size_t link_index = 0;
  std::string link_id;
  double x = 0.0;              // along the link, in [0, D_f]
  double lateral_error = 0.0;  // m
};

struct PolylineProjection {
  double arc_length = 0.0;  // along the polyline
  double distance = 0.0;    // perpendicular (or endpoint) distance
  PlanarPoint foot;
};

// Closest point of a polyline to p; the earliest segment wins ties.
PolylineProjection ProjectOntoPolyline(std::span<const PlanarPoint> polyline,
                                       const PlanarPoint& p);

inline constexpr double kMaxMatchDistance = 50.0;

// Geometric point-to-curve matching. With `previous_link` set only that link
// and its successor are candidates; if neither is within range a full scan
// follows. Links earlier in the route win exact ties.
absl::StatusOr<MatchResult> MatchPoint(
    const Route& route, const PlanarPoint& p,
    std::optional<size_t> previous_link = std::nullopt,
    double max_distance = kMaxMatchDistance);

// Per-vehicle matching state over an immutable route.
class MapMatcher {
 public:
  explicit MapMatcher(const Route& route,
                      double max_distance = kMaxMatchDistance)
      : route_(&route), max_distance_(max_distance) {}

  absl::StatusOr<MatchResult> Match(const PlanarPoint& p);
  void Reset() { previous_link_.reset(); }
  std::optional<size_t> previous_link() const { return previous_link_; }

 private:
  const Route* route_;
  double max_distance_;
  std::optional<size_t> previous_link_;
};

// First-order low-pass on the matched position, restarting on link change.
class MatchedPositionSmoother {
 public:
  explicit MatchedPositionSmoother(double time_constant = 1.0)
      : time_constant_(time_constant) {}

  MatchResult Update(double t, const MatchResult& raw);

 private:
  double time_constant_;
  std::optional<double> last_t_;
  std::optional<MatchResult> state_;
};

}  // namespace ecodrive

#endif  // ECODRIVE_MAP_MATCHING_H_
