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

#include "ecodrive/map_matching.h"

#include <algorithm>
#include <cmath>
#include <limits>

#include "absl/strings/str_format.h"

namespace ecodrive {
namespace {

constexpr double kTieTolerance = 1e-9;

struct Candidate {
  size_t link_index = 0;
  PolylineProjection projection;
};

std::optional<Candidate> BestAmong(const Route& route, const PlanarPoint& p,
                                   size_t first, size_t last) {
  std::optional<Candidate> best;
  for (size_t i = first; i <= last && i < route.links.size(); ++i) {
    const PolylineProjection proj =
        ProjectOntoPolyline(route.links[i].polyline, p);
    if (!best || proj.distance < best->projection.distance - kTieTolerance) {
      best = Candidate{i, proj};
    }
  }
  return best;
}

}  // namespace

PolylineProjection ProjectOntoPolyline(std::span<const PlanarPoint> polyline,
                                       const PlanarPoint& p) {
  PolylineProjection best;
  best.distance = std::numeric_limits<double>::infinity();
  if (polyline.empty()) return best;
  if (polyline.size() == 1) {
    return {0.0, Distance(polyline.front(), p), polyline.front()};
  }
  double offset = 0.0;
  for (size_t i = 1; i < polyline.size(); ++i) {
    const PlanarPoint& a = polyline[i - 1];
    const PlanarPoint& b = polyline[i];
    const double dx = b.x - a.x;
    const double dy = b.y - a.y;
    const double seg_sq = dx * dx + dy * dy;
    double w = 0.0;
    if (seg_sq > 0.0) {
      w = std::clamp(((p.x - a.x) * dx + (p.y - a.y) * dy) / seg_sq, 0.0, 1.0);
    }
    const PlanarPoint foot{a.x + w * dx, a.y + w * dy};
    const double d = Distance(foot, p);
    if (d < best.distance - kTieTolerance) {
      best = {offset + w * std::sqrt(seg_sq), d, foot};
    }
    offset += std::sqrt(seg_sq);
  }
  return best;
}

absl::StatusOr<MatchResult> MatchPoint(const Route& route,
                                       const PlanarPoint& p,
                                       std::optional<size_t> previous_link,
                                       double max_distance) {
  if (route.links.empty()) {
    return absl::FailedPreconditionError("cannot match against an empty route");
  }
  std::optional<Candidate> best;
  if (previous_link && *previous_link < route.links.size()) {
    best = BestAmong(route, p, *previous_link, *previous_link + 1);
    if (best && best->projection.distance > max_distance) best.reset();
  }
  if (!best) best = BestAmong(route, p, 0, route.links.size() - 1);
  if (!best || best->projection.distance > max_distance) {
    return absl::OutOfRangeError(absl::StrFormat(
        "point (%.2f, %.2f) is %.1f m from the route (limit %.1f m)", p.x, p.y,
        best ? best->projection.distance : -1.0, max_distance));
  }
  const Link& link = route.links[best->link_index];
  const double poly_length = link.PolylineLength();
  MatchResult result;
  result.link_index = best->link_index;
  result.link_id = link.id;
  result.x = poly_length > 0.0
                 ? std::clamp(best->projection.arc_length / poly_length *
                                  link.length,
                              0.0, link.length)
                 : 0.0;
  result.lateral_error = best->projection.distance;
  return result;
}

absl::StatusOr<MatchResult> MapMatcher::Match(const PlanarPoint& p) {
  auto result = MatchPoint(*route_, p, previous_link_, max_distance_);
  if (result.ok()) previous_link_ = result->link_index;
  return result;
}

MatchResult MatchedPositionSmoother::Update(double t, const MatchResult& raw) {
  if (!state_ || !last_t_ || state_->link_index != raw.link_index ||
      t <= *last_t_) {
    state_ = raw;
    last_t_ = t;
    return raw;
  }
  const double alpha = 1.0 - std::exp(-(t - *last_t_) / time_constant_);
  MatchResult out = raw;
  out.x = state_->x + alpha * (raw.x - state_->x);
  state_ = out;
  last_t_ = t;
  return out;
}

}  // namespace ecodrive
