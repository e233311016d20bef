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

#include "ecodrive/trip_trace.h"

#include <algorithm>

#include "absl/strings/str_cat.h"
#include "ecodrive/csv.h"
#include "ecodrive/status_macros.h"

namespace ecodrive {

absl::Status TripTrace::Validate() const {
  for (size_t k = 0; k < samples.size(); ++k) {
    const TripSample& s = samples[k];
    if (!(s.v >= 0.0)) {
      return absl::InvalidArgumentError(
          absl::StrCat("trace sample ", k, ": negative speed ", s.v));
    }
    if (k == 0) continue;
    if (!(s.t > samples[k - 1].t)) {
      return absl::InvalidArgumentError(
          absl::StrCat("trace sample ", k, ": time not strictly increasing"));
    }
    if (s.x < samples[k - 1].x) {
      return absl::InvalidArgumentError(
          absl::StrCat("trace sample ", k, ": position decreases"));
    }
  }
  return absl::OkStatus();
}

TripSample TripTrace::AtTime(double t) const {
  if (samples.empty()) return {};
  if (t <= samples.front().t) return samples.front();
  if (t >= samples.back().t) return samples.back();
  const auto it = std::lower_bound(
      samples.begin(), samples.end(), t,
      [](const TripSample& s, double value) { return s.t < value; });
  const TripSample& b = *it;
  const TripSample& a = *(it - 1);
  const double w = (t - a.t) / (b.t - a.t);
  return {t, a.x + w * (b.x - a.x), a.v + w * (b.v - a.v)};
}

TripSample TripTrace::AtPosition(double x) const {
  if (samples.empty()) return {};
  if (x <= samples.front().x) return samples.front();
  if (x >= samples.back().x) {
    // First sample that reached the end.
    for (const auto& s : samples) {
      if (s.x >= samples.back().x) return s;
    }
  }
  const auto it = std::lower_bound(
      samples.begin(), samples.end(), x,
      [](const TripSample& s, double value) { return s.x < value; });
  const TripSample& b = *it;
  const TripSample& a = *(it - 1);
  const double w = (x - a.x) / (b.x - a.x);
  return {a.t + w * (b.t - a.t), x, a.v + w * (b.v - a.v)};
}

absl::StatusOr<TripTrace> ParseTripTraceCsv(const std::string& text,
                                            const std::string& source) {
  ASSIGN_OR_RETURN(const NumericTable table,
                   ParseNumericCsv(text, {"t", "x", "v"}, source));
  TripTrace trace;
  trace.samples.reserve(table.rows.size());
  for (size_t i = 0; i < table.rows.size(); ++i) {
    const auto& row = table.rows[i];
    TripSample s{row[0], row[1], row[2]};
    if (!(s.v >= 0.0)) {
      return absl::InvalidArgumentError(absl::StrCat(
          source, ":", table.line_numbers[i], ": row ", i + 1,
          ": negative speed"));
    }
    if (!trace.samples.empty()) {
      const TripSample& prev = trace.samples.back();
      if (!(s.t > prev.t)) {
        return absl::InvalidArgumentError(
            absl::StrCat(source, ":", table.line_numbers[i], ": row ", i + 1,
                         ": time not strictly increasing"));
      }
      if (s.x < prev.x) {
        return absl::InvalidArgumentError(
            absl::StrCat(source, ":", table.line_numbers[i], ": row ", i + 1,
                         ": position decreases"));
      }
    }
    trace.samples.push_back(s);
  }
  return trace;
}

absl::StatusOr<TripTrace> LoadTripTraceCsv(const std::string& path) {
  ASSIGN_OR_RETURN(const std::string text, ReadFile(path));
  return ParseTripTraceCsv(text, path);
}

std::string FormatTripTraceCsv(const TripTrace& trace,
                               const std::vector<double>* accel,
                               const std::vector<double>* power) {
  const bool extended = accel != nullptr && power != nullptr;
  std::string out = extended ? "t,x,v,a,P_b\n" : "t,x,v\n";
  for (size_t k = 0; k < trace.size(); ++k) {
    const TripSample& s = trace.samples[k];
    absl::StrAppend(&out, FormatNumber(s.t), ",", FormatNumber(s.x), ",",
                    FormatNumber(s.v));
    if (extended) {
      absl::StrAppend(&out, ",", FormatNumber((*accel)[k]), ",",
                      FormatNumber((*power)[k]));
    }
    out += '\n';
  }
  return out;
}

}  // namespace ecodrive
