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

#include "ecodrive/lead_estimator.h"

#include <cmath>

#include "absl/strings/str_cat.h"

namespace ecodrive {

absl::Status LeadHistory::Push(double t, double speed) {
  if (count_ > 0 && !(t > newest().t)) {
    return absl::InvalidArgumentError(absl::StrCat(
        "lead history timestamps must increase: ", t, " after ", newest().t));
  }
  ring_[head_] = Sample{t, speed};
  head_ = (head_ + 1) % kCapacity;
  if (count_ < kCapacity) ++count_;
  return absl::OkStatus();
}

LeadAccelEstimate LeadHistory::Estimate() const {
  if (count_ < 2) return {0.0, true};
  const size_t pairs = count_ - 1;
  LeadAccelEstimate out;
  out.low_confidence = pairs < 2;

  // Newest pair weighs 1, each older one a further factor beta.
  double weight_sum = 0.0;
  if (mode_ == AccelEstimateMode::kDifferentiateThenSmooth) {
    double acc = 0.0;
    for (size_t k = 0; k < pairs; ++k) {
      const double w = std::pow(beta_, static_cast<double>(pairs - 1 - k));
      const Sample& a = at(k);
      const Sample& b = at(k + 1);
      acc += w * (b.speed - a.speed) / (b.t - a.t);
      weight_sum += w;
    }
    out.accel = acc / weight_sum;
    return out;
  }

  double v_old = 0.0, v_new = 0.0, t_old = 0.0, t_new = 0.0;
  for (size_t k = 0; k < pairs; ++k) {
    const double w = std::pow(beta_, static_cast<double>(pairs - 1 - k));
    v_old += w * at(k).speed;
    t_old += w * at(k).t;
    v_new += w * at(k + 1).speed;
    t_new += w * at(k + 1).t;
    weight_sum += w;
  }
  out.accel = (v_new - v_old) / (t_new - t_old);
  return out;
}

}  // namespace ecodrive
