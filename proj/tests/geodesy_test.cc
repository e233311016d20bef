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

#include "gtest/gtest.h"

namespace ecodrive {
namespace {

ProjectionConfig Tangent(GeoPoint anchor) {
  ProjectionConfig c;
  c.kind = ProjectionKind::kLocalTangentPlane;
  c.anchor = anchor;
  return c;
}

TEST(ProjectorTest, AnchorMapsToOrigin) {
  const Projector proj(Tangent({48.8772, 2.1765}));
  auto p = proj.Project({48.8772, 2.1765});
  ASSERT_TRUE(p.ok());
  EXPECT_EQ(p->x, 0.0);
  EXPECT_EQ(p->y, 0.0);
}

TEST(ProjectorTest, LatitudeStepMatchesArcLength) {
  const Projector proj(Tangent({48.8772, 2.1765}));
  auto a = proj.Project({48.8700, 2.1765});
  auto b = proj.Project({48.8710, 2.1765});
  ASSERT_TRUE(a.ok() && b.ok());
  const double arc = kEarthRadiusM * 0.001 * std::numbers::pi / 180.0;
  EXPECT_NEAR(b->y - a->y, arc, 1e-6);
  EXPECT_NEAR(b->y - a->y, 111.2, 0.05);
  EXPECT_NEAR(b->x - a->x, 0.0, 1e-9);
}

TEST(ProjectorTest, TangentRoundTrip) {
  const Projector proj(Tangent({48.8772, 2.1765}));
  for (const GeoPoint g : {GeoPoint{48.86, 2.15}, GeoPoint{48.88, 2.19}}) {
    auto p = proj.Project(g);
    ASSERT_TRUE(p.ok());
    auto back = proj.Unproject(*p);
    ASSERT_TRUE(back.ok());
    EXPECT_NEAR(back->lat_deg, g.lat_deg, 1e-12);
    EXPECT_NEAR(back->lon_deg, g.lon_deg, 1e-12);
  }
}

TEST(ProjectorTest, TangentRejectsFarPoints) {
  ProjectionConfig c = Tangent({48.8772, 2.1765});
  c.max_range_m = 1000.0;
  const Projector proj(c);
  EXPECT_FALSE(proj.Project({48.95, 2.1765}).ok());
}

TEST(ProjectorTest, Lambert93Origin) {
  ProjectionConfig c;
  c.kind = ProjectionKind::kLambert93;
  const Projector proj(c);
  auto p = proj.Project({46.5, 3.0});
  ASSERT_TRUE(p.ok());
  EXPECT_NEAR(p->x, 700000.0, 1e-3);
  EXPECT_NEAR(p->y, 6600000.0, 1e-3);
}

TEST(ProjectorTest, Lambert93RoundTripAndLocalScale) {
  ProjectionConfig c;
  c.kind = ProjectionKind::kLambert93;
  const Projector proj(c);
  auto a = proj.Project({48.8772, 2.1765});
  auto b = proj.Project({48.8782, 2.1765});
  ASSERT_TRUE(a.ok() && b.ok());
  auto back = proj.Unproject(*a);
  ASSERT_TRUE(back.ok());
  EXPECT_NEAR(back->lat_deg, 48.8772, 1e-9);
  EXPECT_NEAR(back->lon_deg, 2.1765, 1e-9);
  // Same 0.001 deg step, within the projection's scale error.
  EXPECT_NEAR(Distance(*a, *b), 111.2, 0.3);
}

TEST(ProjectorTest, Lambert93RejectsOutsideFrance) {
  ProjectionConfig c;
  c.kind = ProjectionKind::kLambert93;
  EXPECT_FALSE(Projector(c).Project({10.0, 3.0}).ok());
}

TEST(ProjectionKindTest, ParseNames) {
  EXPECT_EQ(*ParseProjectionKind("lambert93"), ProjectionKind::kLambert93);
  EXPECT_EQ(*ParseProjectionKind("local_tangent"),
            ProjectionKind::kLocalTangentPlane);
  EXPECT_FALSE(ParseProjectionKind("utm").ok());
}

}  // namespace
}  // namespace ecodrive
