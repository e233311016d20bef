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

#ifndef ECODRIVE_TRIP_TRACE_H_
#define ECODRIVE_TRIP_TRACE_H_

#include <string>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"

namespace ecodrive {

// Ego kinematic state: position along the current link, speed and time
// since trip start.
struct KinState {
  double x = 0.0;  // m
  double v = 0.0;  // m/s
  double t = 0.0;  // s
};

struct TripSample {
  double t = 0.0;  // s
  double x = 0.0;  // m
  double v = 0.0;  // m/s
};

struct TripTrace {
  std::vector<TripSample> samples;
  std::string vehicle_id;
  std::string route_id;

  size_t size() const { return samples.size(); }
  bool empty() const { return samples.empty(); }
  double duration() const {
    return samples.empty() ? 0.0 : samples.back().t - samples.front().t;
  }
  double distance() const {
    return samples.empty() ? 0.0 : samples.back().x - samples.front().x;
  }
  double average_speed() const {
    return duration() > 0.0 ? distance() / duration() : 0.0;
  }

  // t strictly increasing, x non-decreasing, v >= 0.
  absl::Status Validate() const;

  // Linear interpolation at time t (clamped to the trace span).
  TripSample AtTime(double t) const;
  // First time the trace reaches position x (linear interpolation).
  TripSample AtPosition(double x) const;
};

// `t,x,v` CSV; extra columns (such as a, P_b) are ignored on read.
absl::StatusOr<TripTrace> ParseTripTraceCsv(const std::string& text,
                                            const std::string& source);
absl::StatusOr<TripTrace> LoadTripTraceCsv(const std::string& path);

// Writes `t,x,v` or, when both extra vectors are given, `t,x,v,a,P_b`.
std::string FormatTripTraceCsv(const TripTrace& trace,
                               const std::vector<double>* accel = nullptr,
                               const std::vector<double>* power = nullptr);

}  // namespace ecodrive

#endif  // ECODRIVE_TRIP_TRACE_H_
