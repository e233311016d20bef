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


#ifndef ECODRIVE_TESTS_TEST_ROUTES_H_
#define ECODRIVE_TESTS_TEST_ROUTES_H_

#include <string>
#include <utility>
#include <vector>

#include "ecodrive/route.h"

namespace ecodrive::testing {

// Planar link from (x0, y0) to (x1, y1); D_f is the segment length.
inline Link StraightLink(std::string id, PlanarPoint a, PlanarPoint b,
                         double v_max = 50.0 / 3.6,
                         EndFeature end = EndFeature::kNone) {
  Link link;
  link.id = std::move(id);
  link.polyline = {a, b};
  link.length = Distance(a, b);
  link.v_max = v_max;
  link.duration = link.length / (0.8 * v_max) + 2.0;
  link.final_speed = end == EndFeature::kStopSign ? 0.0 : v_max;
  link.end_feature = end;
  return link;
}

// Straight east-bound route made of consecutive links of the given lengths.
inline Route StraightRoute(const std::vector<double>& lengths,
                           const std::vector<EndFeature>& ends = {}) {
  Route route;
  route.name = "straight";
  double x = 0.0;
  for (size_t i = 0; i < lengths.size(); ++i) {
    const EndFeature end = i < ends.size() ? ends[i] : EndFeature::kNone;
    route.links.push_back(StraightLink("S" + std::to_string(i + 1), {x, 0.0},
                                       {x + lengths[i], 0.0}, 50.0 / 3.6,
                                       end));
    x += lengths[i];
  }
  return route;
}

}  // namespace ecodrive::testing

#endif  // ECODRIVE_TESTS_TEST_ROUTES_H_
