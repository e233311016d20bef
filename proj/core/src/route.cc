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

#include "ecodrive/route.h"

#include <algorithm>
#include <cmath>
#include <set>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "ecodrive/csv.h"
#include "ecodrive/status_macros.h"
#include "ecodrive/text_config.h"

namespace ecodrive {

absl::StatusOr<EndFeature> ParseEndFeature(std::string_view name) {
  if (name == "none" || name.empty()) return EndFeature::kNone;
  if (name == "traffic_light") return EndFeature::kTrafficLight;
  if (name == "stop_sign") return EndFeature::kStopSign;
  if (name == "speed_change") return EndFeature::kSpeedChange;
  return absl::InvalidArgumentError(
      absl::StrCat("unknown end feature '", std::string(name), "'"));
}

std::string_view EndFeatureName(EndFeature feature) {
  switch (feature) {
    case EndFeature::kNone:
      return "none";
    case EndFeature::kTrafficLight:
      return "traffic_light";
    case EndFeature::kStopSign:
      return "stop_sign";
    case EndFeature::kSpeedChange:
      return "speed_change";
  }
  return "none";
}

double Link::PolylineLength() const {
  double total = 0.0;
  for (size_t i = 1; i < polyline.size(); ++i) {
    total += Distance(polyline[i - 1], polyline[i]);
  }
  return total;
}

PlanarPoint PointOnLink(const Link& link, double x) {
  if (link.polyline.empty()) return {};
  if (link.polyline.size() == 1) return link.polyline.front();
  const double poly_length = link.PolylineLength();
  double target = link.length > 0.0 ? x / link.length * poly_length : 0.0;
  target = std::clamp(target, 0.0, poly_length);
  for (size_t i = 1; i < link.polyline.size(); ++i) {
    const PlanarPoint& a = link.polyline[i - 1];
    const PlanarPoint& b = link.polyline[i];
    const double seg = Distance(a, b);
    if (target <= seg || i + 1 == link.polyline.size()) {
      const double w = seg > 0.0 ? std::min(1.0, target / seg) : 0.0;
      return {a.x + w * (b.x - a.x), a.y + w * (b.y - a.y)};
    }
    target -= seg;
  }
  return link.polyline.back();
}

absl::Status Route::Validate() const {
  if (links.empty()) return absl::InvalidArgumentError("route has no links");
  std::set<std::string> ids;
  for (size_t i = 0; i < links.size(); ++i) {
    const Link& l = links[i];
    const std::string where = absl::StrCat("link '", l.id, "'");
    if (!ids.insert(l.id).second) {
      return absl::InvalidArgumentError(
          absl::StrCat("duplicate link id '", l.id, "'"));
    }
    if (!(l.v_max > 0.0)) {
      return absl::InvalidArgumentError(absl::StrCat(where, ": v_max <= 0"));
    }
    if (!(l.length > 0.0)) {
      return absl::InvalidArgumentError(absl::StrCat(where, ": D_f <= 0"));
    }
    if (!(l.duration > 0.0)) {
      return absl::InvalidArgumentError(absl::StrCat(where, ": T_f <= 0"));
    }
    if (l.final_speed < 0.0 || l.final_speed > l.v_max + 1e-9) {
      return absl::InvalidArgumentError(
          absl::StrCat(where, ": v_f must lie in [0, v_max]"));
    }
    if (l.polyline.size() < 2) {
      return absl::InvalidArgumentError(
          absl::StrCat(where, ": polyline needs at least 2 vertices"));
    }
    const double poly = l.PolylineLength();
    if (std::abs(poly - l.length) > 1e-3 * l.length) {
      return absl::InvalidArgumentError(absl::StrFormat(
          "%s: D_f = %.3f m differs from polyline length %.3f m by more "
          "than 0.1%%",
          where, l.length, poly));
    }
    if (i > 0 &&
        Distance(links[i - 1].polyline.back(), l.polyline.front()) > 1.0) {
      return absl::InvalidArgumentError(absl::StrCat(
          where, ": does not start where link '", links[i - 1].id, "' ends"));
    }
  }
  return absl::OkStatus();
}

double Route::TotalLength() const {
  double total = 0.0;
  for (const auto& l : links) total += l.length;
  return total;
}

double Route::TotalDuration() const {
  double total = 0.0;
  for (const auto& l : links) total += l.duration;
  return total;
}

double Route::LinkStart(size_t i) const {
  double s = 0.0;
  for (size_t k = 0; k < i && k < links.size(); ++k) s += links[k].length;
  return s;
}

LinkPosition Route::Locate(double s) const {
  double start = 0.0;
  for (size_t i = 0; i < links.size(); ++i) {
    const double end = start + links[i].length;
    if (s < end || i + 1 == links.size()) {
      return {i, std::clamp(s - start, 0.0, links[i].length)};
    }
    start = end;
  }
  return {};
}

PlanarPoint Route::PointAtDistance(double s) const {
  if (links.empty()) return {};
  const LinkPosition pos = Locate(s);
  return PointOnLink(links[pos.link_index], pos.x);
}

int Route::LinkIndex(std::string_view id) const {
  for (size_t i = 0; i < links.size(); ++i) {
    if (links[i].id == id) return static_cast<int>(i);
  }
  return -1;
}

namespace {

absl::StatusOr<GeoPoint> ParseLatLon(std::string_view text, char sep) {
  std::vector<std::string> parts;
  for (auto& p : SplitFields(text, sep)) {
    if (!p.empty()) parts.push_back(p);
  }
  if (parts.size() != 2) {
    return absl::InvalidArgumentError(
        absl::StrCat("expected 'lat", sep == ' ' ? " " : ", ", "lon', got '",
                     std::string(text), "'"));
  }
  ASSIGN_OR_RETURN(const double lat, ParseNumber(parts[0]));
  ASSIGN_OR_RETURN(const double lon, ParseNumber(parts[1]));
  return GeoPoint{lat, lon};
}

}  // namespace

absl::StatusOr<Route> ParseRoute(const std::string& text,
                                 const std::string& source) {
  ASSIGN_OR_RETURN(const TextConfig config, TextConfig::Parse(text, source));
  const ConfigSection* header = config.Section("route");
  if (header == nullptr) {
    return absl::InvalidArgumentError(
        absl::StrCat(source, ": missing [route] section"));
  }
  Route route;
  route.name = config.FindString("route", "name").value_or("route");

  const auto geo_entry = [&](const char* key) -> absl::StatusOr<GeoPoint> {
    const ConfigEntry* e = header->Find(key);
    if (e == nullptr) {
      return absl::InvalidArgumentError(
          absl::StrCat(source, ": [route] is missing '", key, "'"));
    }
    auto p = ParseLatLon(e->value, ',');
    if (!p.ok()) return config.ErrorAt(e->line_number, p.status().message());
    return *p;
  };
  ASSIGN_OR_RETURN(route.origin, geo_entry("origin"));
  ASSIGN_OR_RETURN(route.destination, geo_entry("destination"));

  route.projection.anchor = route.origin;
  if (const ConfigEntry* e = header->Find("projection")) {
    auto kind = ParseProjectionKind(e->value);
    if (!kind.ok()) {
      return config.ErrorAt(e->line_number, kind.status().message());
    }
    route.projection.kind = *kind;
  }
  const Projector projector(route.projection);

  const ConfigSection* table = config.Section("links");
  if (table == nullptr) {
    return absl::InvalidArgumentError(
        absl::StrCat(source, ": missing [links] section"));
  }
  for (const ConfigLine& line : table->lines) {
    const auto fields = SplitFields(line.text, ',');
    if (fields.size() != 7) {
      return config.ErrorAt(
          line.line_number,
          absl::StrCat("link row needs 7 fields (id, v_max_kmh, D_f_m, T_f_s, "
                       "v_f_kmh, end_feature, polyline), got ",
                       fields.size()));
    }
    Link link;
    link.id = fields[0];
    const auto number = [&](size_t i) -> absl::StatusOr<double> {
      auto v = ParseNumber(fields[i]);
      if (!v.ok()) return config.ErrorAt(line.line_number, v.status().message());
      return *v;
    };
    ASSIGN_OR_RETURN(const double v_max_kmh, number(1));
    ASSIGN_OR_RETURN(link.length, number(2));
    ASSIGN_OR_RETURN(link.duration, number(3));
    ASSIGN_OR_RETURN(const double v_f_kmh, number(4));
    link.v_max = v_max_kmh / 3.6;
    link.final_speed = v_f_kmh / 3.6;
    auto feature = ParseEndFeature(fields[5]);
    if (!feature.ok()) {
      return config.ErrorAt(line.line_number, feature.status().message());
    }
    link.end_feature = *feature;
    for (const auto& vertex : SplitFields(fields[6], ';')) {
      if (vertex.empty()) continue;
      auto geo = ParseLatLon(vertex, ' ');
      if (!geo.ok()) {
        return config.ErrorAt(line.line_number, geo.status().message());
      }
      auto planar = projector.Project(*geo);
      if (!planar.ok()) {
        return config.ErrorAt(line.line_number, planar.status().message());
      }
      link.geo_polyline.push_back(*geo);
      link.polyline.push_back(*planar);
    }
    route.links.push_back(std::move(link));
  }
  auto valid = route.Validate();
  if (!valid.ok()) {
    return absl::InvalidArgumentError(
        absl::StrCat(source, ": ", valid.message()));
  }
  return route;
}

absl::StatusOr<Route> LoadRoute(const std::string& path) {
  ASSIGN_OR_RETURN(const std::string text, ReadFile(path));
  return ParseRoute(text, path);
}

std::string FormatRoute(const Route& route) {
  std::string out = "[route]\n";
  absl::StrAppend(&out, "name = ", route.name, "\n");
  absl::StrAppend(&out, "projection = ",
                  std::string(ProjectionKindName(route.projection.kind)), "\n");
  absl::StrAppendFormat(&out, "origin = %.8f, %.8f\n", route.origin.lat_deg,
                        route.origin.lon_deg);
  absl::StrAppendFormat(&out, "destination = %.8f, %.8f\n",
                        route.destination.lat_deg, route.destination.lon_deg);
  out += "\n[links]\n# id, v_max_kmh, D_f_m, T_f_s, v_f_kmh, end_feature, polyline\n";
  for (const Link& l : route.links) {
    absl::StrAppend(&out, l.id, ", ", FormatNumber(l.v_max * 3.6), ", ",
                    FormatNumber(l.length), ", ", FormatNumber(l.duration),
                    ", ", FormatNumber(l.final_speed * 3.6), ", ",
                    std::string(EndFeatureName(l.end_feature)), ", ");
    for (size_t i = 0; i < l.geo_polyline.size(); ++i) {
      if (i > 0) out += "; ";
      absl::StrAppendFormat(&out, "%.8f %.8f", l.geo_polyline[i].lat_deg,
                            l.geo_polyline[i].lon_deg);
    }
    out += "\n";
  }
  return out;
}

std::vector<Link> AggregateLinks(const std::vector<Link>& links,
                                 const AggregationRules& rules) {
  std::vector<Link> out;
  if (links.empty()) return out;
  Link acc = links.front();
  for (size_t i = 1; i < links.size(); ++i) {
    const Link& next = links[i];
    const bool short_link = acc.length < rules.min_length;
    const bool seamless = rules.merge_equal_speed_limit &&
                          acc.v_max == next.v_max &&
                          acc.end_feature == EndFeature::kNone;
    if (!IsHardBoundary(acc.end_feature) && (short_link || seamless)) {
      Link merged = next;
      merged.id = acc.id;
      merged.length = acc.length + next.length;
      merged.duration = acc.duration + next.duration;
      merged.v_max = std::min(acc.v_max, next.v_max);
      merged.final_speed = std::min(next.final_speed, merged.v_max);
      merged.geo_polyline = acc.geo_polyline;
      merged.polyline = acc.polyline;
      const size_t skip = merged.polyline.empty() ? 0 : 1;
      merged.geo_polyline.insert(
          merged.geo_polyline.end(),
          next.geo_polyline.begin() +
              std::min(skip, next.geo_polyline.size()),
          next.geo_polyline.end());
      merged.polyline.insert(
          merged.polyline.end(),
          next.polyline.begin() + std::min(skip, next.polyline.size()),
          next.polyline.end());
      acc = std::move(merged);
    } else {
      out.push_back(std::move(acc));
      acc = next;
    }
  }
  out.push_back(std::move(acc));
  return out;
}

}  // namespace ecodrive
