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

#include "ecodrive/geodesy.h"

#include <cmath>
#include <numbers>

#include "absl/strings/str_cat.h"

namespace ecodrive {
namespace {

constexpr double kDegToRad = std::numbers::pi / 180.0;

// Lambert-93 constants (IGN, GRS80 ellipsoid, secant at 44N and 49N).
constexpr double kL93Eccentricity = 0.0818191910428158;
constexpr double kL93N = 0.7256077650532670;
constexpr double kL93C = 11754255.426096;
constexpr double kL93Xs = 700000.0;
constexpr double kL93Ys = 12655612.049876;
constexpr double kL93Lon0Deg = 3.0;

constexpr double kL93MinLat = 41.0;
constexpr double kL93MaxLat = 52.0;
constexpr double kL93MinLon = -6.0;
constexpr double kL93MaxLon = 11.0;

double IsometricLatitude(double phi) {
  const double es = kL93Eccentricity * std::sin(phi);
  return std::log(std::tan(std::numbers::pi / 4.0 + phi / 2.0) *
                  std::pow((1.0 - es) / (1.0 + es), kL93Eccentricity / 2.0));
}

double LatitudeFromIsometric(double iso) {
  double phi = 2.0 * std::atan(std::exp(iso)) - std::numbers::pi / 2.0;
  for (int i = 0; i < 20; ++i) {
    const double es = kL93Eccentricity * std::sin(phi);
    const double next =
        2.0 * std::atan(std::pow((1.0 + es) / (1.0 - es),
                                 kL93Eccentricity / 2.0) *
                        std::exp(iso)) -
        std::numbers::pi / 2.0;
    if (std::abs(next - phi) < 1e-14) return next;
    phi = next;
  }
  return phi;
}

}  // namespace

double Distance(const PlanarPoint& a, const PlanarPoint& b) {
  return std::hypot(a.x - b.x, a.y - b.y);
}

absl::StatusOr<ProjectionKind> ParseProjectionKind(std::string_view name) {
  if (name == "local_tangent") return ProjectionKind::kLocalTangentPlane;
  if (name == "lambert93") return ProjectionKind::kLambert93;
  return absl::InvalidArgumentError(
      absl::StrCat("unknown projection '", std::string(name),
                   "' (expected local_tangent or lambert93)"));
}

std::string_view ProjectionKindName(ProjectionKind kind) {
  return kind == ProjectionKind::kLambert93 ? "lambert93" : "local_tangent";
}

Projector::Projector(const ProjectionConfig& config)
    : config_(config),
      cos_anchor_lat_(std::cos(config.anchor.lat_deg * kDegToRad)) {}

absl::StatusOr<PlanarPoint> Projector::Project(const GeoPoint& p) const {
  if (!std::isfinite(p.lat_deg) || !std::isfinite(p.lon_deg)) {
    return absl::InvalidArgumentError("non-finite coordinate");
  }
  switch (config_.kind) {
    case ProjectionKind::kLocalTangentPlane: {
      const PlanarPoint out{
          kEarthRadiusM * cos_anchor_lat_ *
              (p.lon_deg - config_.anchor.lon_deg) * kDegToRad,
          kEarthRadiusM * (p.lat_deg - config_.anchor.lat_deg) * kDegToRad};
      if (std::hypot(out.x, out.y) > config_.max_range_m) {
        return absl::OutOfRangeError(absl::StrCat(
            "coordinate (", p.lat_deg, ", ", p.lon_deg,
            ") is outside the tangent-plane validity radius"));
      }
      return out;
    }
    case ProjectionKind::kLambert93: {
      if (p.lat_deg < kL93MinLat || p.lat_deg > kL93MaxLat ||
          p.lon_deg < kL93MinLon || p.lon_deg > kL93MaxLon) {
        return absl::OutOfRangeError(absl::StrCat(
            "coordinate (", p.lat_deg, ", ", p.lon_deg,
            ") is outside the Lambert-93 zone"));
      }
      const double r =
          kL93C * std::exp(-kL93N * IsometricLatitude(p.lat_deg * kDegToRad));
      const double gamma = kL93N * (p.lon_deg - kL93Lon0Deg) * kDegToRad;
      return PlanarPoint{kL93Xs + r * std::sin(gamma),
                         kL93Ys - r * std::cos(gamma)};
    }
  }
  return absl::InternalError("unhandled projection");
}

absl::StatusOr<GeoPoint> Projector::Unproject(const PlanarPoint& p) const {
  switch (config_.kind) {
    case ProjectionKind::kLocalTangentPlane: {
      if (std::hypot(p.x, p.y) > config_.max_range_m) {
        return absl::OutOfRangeError(
            "planar point is outside the tangent-plane validity radius");
      }
      return GeoPoint{
          config_.anchor.lat_deg + p.y / kEarthRadiusM / kDegToRad,
          config_.anchor.lon_deg +
              p.x / (kEarthRadiusM * cos_anchor_lat_) / kDegToRad};
    }
    case ProjectionKind::kLambert93: {
      const double dx = p.x - kL93Xs;
      const double dy = kL93Ys - p.y;
      const double r = std::hypot(dx, dy);
      const double gamma = std::atan2(dx, dy);
      const double iso = -std::log(r / kL93C) / kL93N;
      GeoPoint out{LatitudeFromIsometric(iso) / kDegToRad,
                   kL93Lon0Deg + gamma / kL93N / kDegToRad};
      if (out.lat_deg < kL93MinLat || out.lat_deg > kL93MaxLat ||
          out.lon_deg < kL93MinLon || out.lon_deg > kL93MaxLon) {
        return absl::OutOfRangeError(
            "planar point maps outside the Lambert-93 zone");
      }
      return out;
    }
  }
  return absl::InternalError("unhandled projection");
}

}  // namespace ecodrive
