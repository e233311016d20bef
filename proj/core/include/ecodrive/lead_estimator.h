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

#ifndef ECODRIVE_LEAD_ESTIMATOR_H_
#define ECODRIVE_LEAD_ESTIMATOR_H_

#include <array>
#include <cstddef>

#include "absl/status/status.h"

namespace ecodrive {

enum class AccelEstimateMode {
  // EWMA over per-pair finite-difference accelerations.
  kDifferentiateThenSmooth,
  // EWMA over speeds in two overlapping windows, then one difference.
  kSmoothThenDifferentiate,
};

struct LeadAccelEstimate {
  double accel = 0.0;  // m/s^2
  // Fewer than two speed samples, or a single pair.
  bool low_confidence = true;
};

// The last six lead-speed measurements.
class LeadHistory {
 public:
  static constexpr size_t kCapacity = 6;
  static constexpr double kDefaultBeta = 0.95;

  struct Sample {
    double t = 0.0;
    double speed = 0.0;
  };

  explicit LeadHistory(
      double beta = kDefaultBeta,
      AccelEstimateMode mode = AccelEstimateMode::kDifferentiateThenSmooth)
      : beta_(beta), mode_(mode) {}

  // Rejects timestamps that do not strictly increase.
  absl::Status Push(double t, double speed);
  void Clear() { count_ = 0; }

  size_t size() const { return count_; }
  bool empty() const { return count_ == 0; }
  // i = 0 is the oldest retained sample.
  const Sample& at(size_t i) const {
    return ring_[(head_ + kCapacity - count_ + i) % kCapacity];
  }
  const Sample& newest() const { return at(count_ - 1); }

  double beta() const { return beta_; }
  AccelEstimateMode mode() const { return mode_; }

  LeadAccelEstimate Estimate() const;

 private:
  std::array<Sample, kCapacity> ring_{};
  size_t head_ = 0;  // next write slot
  size_t count_ = 0;
  double beta_;
  AccelEstimateMode mode_;
};

}  // namespace ecodrive

#endif  // ECODRIVE_LEAD_ESTIMATOR_H_
