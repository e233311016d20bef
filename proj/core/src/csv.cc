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

#include "ecodrive/csv.h"

#include <fstream>
#include <sstream>

#include "absl/strings/str_cat.h"
#include "absl/strings/str_format.h"
#include "absl/strings/str_join.h"
#include "ecodrive/text_config.h"

namespace ecodrive {

int NumericTable::ColumnIndex(std::string_view name) const {
  for (size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return static_cast<int>(i);
  }
  return -1;
}

std::vector<std::string> SplitFields(std::string_view line, char sep) {
  std::vector<std::string> fields;
  size_t start = 0;
  while (true) {
    const size_t pos = line.find(sep, start);
    const auto piece = line.substr(
        start, pos == std::string_view::npos ? std::string_view::npos
                                             : pos - start);
    fields.emplace_back(StripWhitespace(piece));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return fields;
}

absl::StatusOr<NumericTable> ParseNumericCsv(
    std::string_view text, const std::vector<std::string>& required_columns,
    const std::string& source_name) {
  NumericTable table;
  std::istringstream in{std::string(text)};
  std::string raw;
  int line_number = 0;
  bool have_header = false;
  while (std::getline(in, raw)) {
    ++line_number;
    const auto line = StripWhitespace(raw);
    if (line.empty() || line.front() == '#') continue;
    auto fields = SplitFields(line);
    if (!have_header) {
      table.header = std::move(fields);
      if (table.header.size() < required_columns.size()) {
        return absl::InvalidArgumentError(absl::StrCat(
            source_name, ":", line_number, ": expected header starting with '",
            absl::StrJoin(required_columns, ","), "'"));
      }
      for (size_t i = 0; i < required_columns.size(); ++i) {
        if (table.header[i] != required_columns[i]) {
          return absl::InvalidArgumentError(absl::StrCat(
              source_name, ":", line_number, ": expected header starting with '",
              absl::StrJoin(required_columns, ","), "'"));
        }
      }
      have_header = true;
      continue;
    }
    if (fields.size() != table.header.size()) {
      return absl::InvalidArgumentError(
          absl::StrCat(source_name, ":", line_number, ": row ",
                       table.rows.size() + 1, " has ", fields.size(),
                       " fields, expected ", table.header.size()));
    }
    std::vector<double> row;
    row.reserve(fields.size());
    for (const auto& f : fields) {
      auto value = ParseNumber(f);
      if (!value.ok()) {
        return absl::InvalidArgumentError(
            absl::StrCat(source_name, ":", line_number, ": row ",
                         table.rows.size() + 1, ": ", value.status().message()));
      }
      row.push_back(*value);
    }
    table.rows.push_back(std::move(row));
    table.line_numbers.push_back(line_number);
  }
  if (!have_header) {
    return absl::InvalidArgumentError(
        absl::StrCat(source_name, ": empty CSV, missing header"));
  }
  return table;
}

absl::StatusOr<std::string> ReadFile(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) return absl::NotFoundError(absl::StrCat("cannot open file: ", path));
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

absl::Status WriteFile(const std::string& path, std::string_view contents) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    return absl::PermissionDeniedError(
        absl::StrCat("cannot write file: ", path));
  }
  out.write(contents.data(), static_cast<std::streamsize>(contents.size()));
  if (!out) return absl::InternalError(absl::StrCat("write failed: ", path));
  return absl::OkStatus();
}

absl::StatusOr<NumericTable> LoadNumericCsv(
    const std::string& path, const std::vector<std::string>& required_columns) {
  auto text = ReadFile(path);
  if (!text.ok()) return text.status();
  return ParseNumericCsv(*text, required_columns, path);
}

std::string FormatNumber(double value) {
  if (value == 0.0) return "0";  // also folds -0
  return absl::StrFormat("%.10g", value);
}

}  // namespace ecodrive
