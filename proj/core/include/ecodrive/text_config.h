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

#ifndef ECODRIVE_TEXT_CONFIG_H_
#define ECODRIVE_TEXT_CONFIG_H_

#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "absl/status/status.h"
#include "absl/status/statusor.h"
#include "absl/strings/string_view.h"

namespace ecodrive {

// One non-blank, non-comment line of a config file.
struct ConfigLine {
  int line_number = 0;
  std::string text;
};

// A `key = value` entry, remembering where it came from for diagnostics.
struct ConfigEntry {
  std::string key;
  std::string value;
  int line_number = 0;
};

struct ConfigSection {
  std::string name;
  std::vector<ConfigLine> lines;
  std::vector<ConfigEntry> entries;

  const ConfigEntry* Find(std::string_view key) const;
  std::vector<const ConfigEntry*> FindAll(std::string_view key) const;
};

// INI-flavoured text: optional `[section]` headers, `key = value` lines and
// `#` comments. Lines without `=` are kept verbatim so that table sections
// (such as the link table of a route file) can be parsed by the caller.
// Lines before the first header belong to the section named "".
class TextConfig {
 public:
  static absl::StatusOr<TextConfig> Parse(std::string_view text,
                                          std::string source_name);
  static absl::StatusOr<TextConfig> Load(const std::string& path);

  const ConfigSection* Section(std::string_view name) const;
  const std::string& source_name() const { return source_name_; }
  const std::vector<ConfigSection>& sections() const { return sections_; }

  // Typed access with "source:line: ..." diagnostics.
  absl::StatusOr<double> GetDouble(std::string_view section,
                                   std::string_view key) const;
  absl::StatusOr<std::string> GetString(std::string_view section,
                                        std::string_view key) const;
  std::optional<std::string> FindString(std::string_view section,
                                        std::string_view key) const;
  absl::StatusOr<double> GetDoubleOr(std::string_view section,
                                     std::string_view key,
                                     double fallback) const;
  absl::StatusOr<double> GetSpeedOr(std::string_view section,
                                    std::string_view key,
                                    double fallback_mps) const;

  absl::Status ErrorAt(int line_number, absl::string_view message) const;

 private:
  std::string source_name_;
  std::vector<ConfigSection> sections_;
};

// Parses a plain number, or a speed with an explicit `km/h` / `m/s` suffix.
// Returned value is SI (m/s for speeds).
absl::StatusOr<double> ParseNumber(std::string_view text);
absl::StatusOr<double> ParseSpeed(std::string_view text);

std::string_view StripWhitespace(std::string_view s);

}  // namespace ecodrive

#endif  // ECODRIVE_TEXT_CONFIG_H_
