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

#ifndef ECODRIVE_CSV_H_
#define ECODRIVE_CSV_H_

#include <string>
#include <string_view>
#include <vector>

#include "absl/status/statusor.h"

namespace ecodrive {

// Numeric CSV table with a mandatory header row. '.' decimal separator,
// ',' field separator, no quoting (none of our formats need it).
struct NumericTable {
  std::vector<std::string> header;
  std::vector<std::vector<double>> rows;
  // 1-based line number in the source file of each row.
  std::vector<int> line_numbers;

  int ColumnIndex(std::string_view name) const;
};

// Parses `text` and checks that the header starts with `required_columns`
// in order. Extra trailing columns are allowed.
absl::StatusOr<NumericTable> ParseNumericCsv(
    std::string_view text, const std::vector<std::string>& required_columns,
    const std::string& source_name);

absl::StatusOr<NumericTable> LoadNumericCsv(
    const std::string& path, const std::vector<std::string>& required_columns);

// Shortest representation that round-trips well enough for our files.
std::string FormatNumber(double value);

std::vector<std::string> SplitFields(std::string_view line, char sep = ',');

absl::StatusOr<std::string> ReadFile(const std::string& path);
absl::Status WriteFile(const std::string& path, std::string_view contents);

}  // namespace ecodrive

#endif  // ECODRIVE_CSV_H_
