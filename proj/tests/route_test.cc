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

#include <random>
#include <string>

#include "gtest/gtest.h"
#include "test_routes.h"

namespace ecodrive {
namespace {

using ::ecodrive::testing::StraightLink;
using ::ecodrive::testing::StraightRoute;

constexpr char kTwoLinkRoute[] = R"(# test corridor
[route]
name = two
origin = 48.8772, 2.1765
destination = 48.8790, 2.1765

[links]
A, 50, 100.08, 10, 50, traffic_light, 48.8772 2.1765; 48.8781 2.1765
B, 30, 100.08, 14, 0, stop_sign, 48.8781 2.1765; 48.8790 2.1765
)";

TEST(ParseRouteTest, ReadsLinksInSiUnits) {
  auto route = ParseRoute(kTwoLinkRoute, "two.route");
  ASSERT_TRUE(route.ok()) << route.status();
  ASSERT_EQ(route->links.size(), 2u);
  const Link& a = route->links[0];
  EXPECT_EQ(a.id, "A");
  EXPECT_NEAR(a.v_max, 50.0 / 3.6, 1e-12);
  EXPECT_EQ(a.end_feature, EndFeature::kTrafficLight);
  EXPECT_EQ(route->links[1].final_speed, 0.0);
  EXPECT_TRUE(route->links[1].EndsWithStop());
  EXPECT_NEAR(route->TotalLength(), 200.16, 1e-12);
  EXPECT_EQ(route->TotalDuration(), 24.0);
}

TEST(ParseRouteTest, RoundTripThroughFormat) {
  auto route = ParseRoute(kTwoLinkRoute, "two.route");
  ASSERT_TRUE(route.ok());
  auto again = ParseRoute(FormatRoute(*route), "formatted");
  ASSERT_TRUE(again.ok()) << again.status();
  EXPECT_EQ(again->links.size(), 2u);
  EXPECT_NEAR(again->links[1].v_max, route->links[1].v_max, 1e-12);
}

TEST(ParseRouteTest, LengthMismatchIsReportedWithLink) {
  std::string text = kTwoLinkRoute;
  text.replace(text.find("100.08, 10"), 6, "130.00");
  auto route = ParseRoute(text, "bad.route");
  ASSERT_FALSE(route.ok());
  EXPECT_NE(route.status().message().find("link 'A'"), std::string::npos);
}

TEST(ParseRouteTest, BadRowNamesTheLine) {
  std::string text = kTwoLinkRoute;
  text.replace(text.find("traffic_light"), 13, "roundabout");
  auto route = ParseRoute(text, "bad.route");
  ASSERT_FALSE(route.ok());
  EXPECT_NE(route.status().message().find("bad.route:8"), std::string::npos)
      << route.status();
}

TEST(ParseRouteTest, ShippedCorridor) {
  auto route = LoadRoute(ECODRIVE_DATA_DIR "/rueil_bougival.route");
  ASSERT_TRUE(route.ok()) << route.status();
  EXPECT_EQ(route->links.size(), 10u);
  int lights = 0;
  for (const Link& l : route->links) {
    lights += l.end_feature == EndFeature::kTrafficLight;
  }
  EXPECT_EQ(lights, 9);
  EXPECT_NEAR(route->TotalLength(), 2300.0, 0.5);
}

TEST(RouteTest, ValidateRejectsGaps) {
  Route route = StraightRoute({100.0, 100.0});
  route.links[1].polyline[0].x += 5.0;
  route.links[1].length = route.links[1].PolylineLength();
  EXPECT_FALSE(route.Validate().ok());
  EXPECT_FALSE(Route{}.Validate().ok());
}

TEST(RouteTest, LocateAndPointAtDistance) {
  const Route route = StraightRoute({100.0, 50.0, 80.0});
  EXPECT_EQ(route.Locate(0.0).link_index, 0u);
  EXPECT_EQ(route.Locate(100.0).link_index, 1u);
  EXPECT_EQ(route.Locate(120.0).x, 20.0);
  EXPECT_EQ(route.Locate(999.0).link_index, 2u);
  EXPECT_EQ(route.Locate(999.0).x, 80.0);
  EXPECT_EQ(route.LinkStart(2), 150.0);
  EXPECT_NEAR(route.PointAtDistance(175.0).x, 175.0, 1e-12);
  EXPECT_EQ(route.LinkIndex("S2"), 1);
  EXPECT_EQ(route.LinkIndex("nope"), -1);
}

TEST(AggregateLinksTest, SeparatedLongLinksUnchanged) {
  const Route route =
      StraightRoute({100.0, 120.0}, {EndFeature::kTrafficLight,
                                     EndFeature::kStopSign});
  const auto out = AggregateLinks(route.links);
  ASSERT_EQ(out.size(), 2u);
  EXPECT_EQ(out[0].length, 100.0);
  EXPECT_EQ(out[1].length, 120.0);
}

TEST(AggregateLinksTest, ShortFeaturelessLinksMergeBeforeLight) {
  Route route = StraightRoute(
      {20.0, 20.0, 20.0, 150.0},
      {EndFeature::kNone, EndFeature::kNone, EndFeature::kNone,
       EndFeature::kTrafficLight});
  // Different limit on the light link keeps it separate.
  route.links[3].v_max = 30.0 / 3.6;
  route.links[3].final_speed = route.links[3].v_max;
  const auto out = AggregateLinks(route.links);
  ASSERT_EQ(out.size(), 2u);
  EXPECT_EQ(out[0].id, "S1");
  EXPECT_EQ(out[0].length, 60.0);
  EXPECT_EQ(out[0].duration, route.links[0].duration * 3.0);
  EXPECT_EQ(out[1].end_feature, EndFeature::kTrafficLight);
  EXPECT_EQ(out[1].length, 150.0);
}

TEST(AggregateLinksTest, HardBoundariesNeverMerge) {
  const Route route = StraightRoute(
      {10.0, 10.0}, {EndFeature::kTrafficLight, EndFeature::kNone});
  EXPECT_EQ(AggregateLinks(route.links).size(), 2u);
}

TEST(AggregateLinksPropertyTest, PreservesTotalLength) {
  std::mt19937_64 rng(9);
  std::uniform_int_distribution<int> metres(5, 200);
  std::uniform_int_distribution<int> feature(0, 5);
  for (int trial = 0; trial < 200; ++trial) {
    std::vector<double> lengths;
    std::vector<EndFeature> ends;
    for (int i = 0; i < 12; ++i) {
      lengths.push_back(metres(rng) + 0.25 * (i % 4));
      const int f = feature(rng);
      ends.push_back(f == 0   ? EndFeature::kTrafficLight
                     : f == 1 ? EndFeature::kStopSign
                              : EndFeature::kNone);
    }
    const Route route = StraightRoute(lengths, ends);
    const auto out = AggregateLinks(route.links);
    double before = 0.0, after = 0.0;
    for (const Link& l : route.links) before += l.length;
    for (const Link& l : out) after += l.length;
    // Quarter-metre lengths are exact in binary, so the sums are too.
    EXPECT_EQ(before, after);
    EXPECT_LE(out.size(), route.links.size());
    int hard_before = 0, hard_after = 0;
    for (const Link& l : route.links) hard_before += IsHardBoundary(l.end_feature);
    for (const Link& l : out) hard_after += IsHardBoundary(l.end_feature);
    EXPECT_EQ(hard_before, hard_after);
  }
}

}  // namespace
}  // namespace ecodrive
