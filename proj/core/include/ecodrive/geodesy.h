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

#ifndef ECODRIVE_GEODESY_H_
#define ECODRIVE_GEODESY_H_

#include <string_view>

#include "absl/status/statusor.h"

namespace ecodrive {

struct GeoPoint {
  double lat_deg = 0.0;
  double lon_deg = 0.0;
};

// East/north metres in the projection plane.
struct PlanarPoint {
  double x = 0.0;
  double y = 0.0;
};

double Distance(const PlanarPoint& a, const PlanarPoint& b);

enum class ProjectionKind {
  // Equirectangular plane on a spherical earth, tangent at the anchor.
  kLocalTangentPlane,
  // Lambert Conformal Conic, French Lambert-93 zone (GRS80).
  kLambert93,
};

absl::StatusOr<ProjectionKind> ParseProjectionKind(std::string_view name);
std::string_view ProjectionKindName(ProjectionKind kind);

struct ProjectionConfig {
  ProjectionKind kind = ProjectionKind::kLocalTangentPlane;
  GeoPoint anchor;
  // Validity radius of the tangent plane around the anchor [m].
  double max_range_m = 100000.0;
};

inline constexpr double kEarthRadiusM = 6371008.8;

class Projector {
 public:
  explicit Projector(const ProjectionConfig& config);

  absl::StatusOr<PlanarPoint> Project(const GeoPoint& p) const;
  absl::StatusOr<GeoPoint> Unproject(const PlanarPoint& p) const;

  const ProjectionConfig& config() const { return config_; }

 private:
  ProjectionConfig config_;
  double cos_anchor_lat_ = 1.0;
};

}  // namespace ecodrive

#endif  // ECODRIVE_GEODESY_H_
