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

#include "ecodrive/text_config.h"

#include <charconv>
#include <fstream>
#include <sstream>
#include <utility>

#include "absl/strings/str_cat.h"

namespace ecodrive {

std::string_view StripWhitespace(std::string_view s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string_view::npos) return {};
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

absl::StatusOr<double> ParseNumber(std::string_view text) {
  text = StripWhitespace(text);
  double value = 0.0;
  const char* begin = text.data();
  const char* end = text.data() + text.size();
  if (!text.empty() && *begin == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end || text.empty()) {
    return absl::InvalidArgumentError(
        absl::StrCat("not a number: '", std::string(text), "'"));
  }
  return value;
}

absl::StatusOr<double> ParseSpeed(std::string_view text) {
  text = StripWhitespace(text);
  constexpr std::string_view kKmh = "km/h";
  constexpr std::string_view kMps = "m/s";
  double scale = 1.0;
  if (text.size() > kKmh.size() &&
      text.substr(text.size() - kKmh.size()) == kKmh) {
    text.remove_suffix(kKmh.size());
    scale = 1.0 / 3.6;
  } else if (text.size() > kMps.size() &&
             text.substr(text.size() - kMps.size()) == kMps) {
    text.remove_suffix(kMps.size());
  }
  auto value = ParseNumber(text);
  if (!value.ok()) return value.status();
  return *value * scale;
}

const ConfigEntry* ConfigSection::Find(std::string_view key) const {
  const ConfigEntry* found = nullptr;
  for (const auto& e : entries) {
    if (e.key == key) found = &e;  // last one wins
  }
  return found;
}

std::vector<const ConfigEntry*> ConfigSection::FindAll(
    std::string_view key) const {
  std::vector<const ConfigEntry*> out;
  for (const auto& e : entries) {
    if (e.key == key) out.push_back(&e);
  }
  return out;
}

absl::StatusOr<TextConfig> TextConfig::Parse(std::string_view text,
                                             std::string source_name) {
  TextConfig config;
  config.source_name_ = std::move(source_name);
  config.sections_.push_back(ConfigSection{});

  std::istringstream in{std::string(text)};
  std::string raw;
  int line_number = 0;
  while (std::getline(in, raw)) {
    ++line_number;
    std::string_view line = raw;
    if (const auto hash = line.find('#'); hash != std::string_view::npos) {
      line = line.substr(0, hash);
    }
    line = StripWhitespace(line);
    if (line.empty()) continue;

    if (line.front() == '[') {
      if (line.back() != ']' || line.size() < 3) {
        return config.ErrorAt(line_number, "malformed section header");
      }
      ConfigSection section;
      section.name = std::string(StripWhitespace(line.substr(1, line.size() - 2)));
      config.sections_.push_back(std::move(section));
      continue;
    }

    ConfigSection& current = config.sections_.back();
    current.lines.push_back(ConfigLine{line_number, std::string(line)});
    const auto eq = line.find('=');
    if (eq != std::string_view::npos) {
      const auto key = StripWhitespace(line.substr(0, eq));
      if (key.empty()) return config.ErrorAt(line_number, "empty key");
      current.entries.push_back(
          ConfigEntry{std::string(key),
                      std::string(StripWhitespace(line.substr(eq + 1))),
                      line_number});
    }
  }
  return config;
}

absl::StatusOr<TextConfig> TextConfig::Load(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    return absl::NotFoundError(absl::StrCat("cannot open file: ", path));
  }
  std::stringstream buffer;
  buffer << in.rdbuf();
  return Parse(buffer.str(), path);
}

const ConfigSection* TextConfig::Section(std::string_view name) const {
  for (const auto& s : sections_) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

absl::Status TextConfig::ErrorAt(int line_number,
                                 absl::string_view message) const {
  return absl::InvalidArgumentError(
      absl::StrCat(source_name_, ":", line_number, ": ", std::string(message)));
}

std::optional<std::string> TextConfig::FindString(std::string_view section,
                                                  std::string_view key) const {
  const ConfigSection* s = Section(section);
  if (s == nullptr) return std::nullopt;
  const ConfigEntry* e = s->Find(key);
  if (e == nullptr) return std::nullopt;
  return e->value;
}

absl::StatusOr<std::string> TextConfig::GetString(std::string_view section,
                                                  std::string_view key) const {
  auto value = FindString(section, key);
  if (!value) {
    return absl::InvalidArgumentError(
        absl::StrCat(source_name_, ": missing key '", std::string(key),
                     "' in section [", std::string(section), "]"));
  }
  return *value;
}

absl::StatusOr<double> TextConfig::GetDouble(std::string_view section,
                                             std::string_view key) const {
  const ConfigSection* s = Section(section);
  const ConfigEntry* e = s == nullptr ? nullptr : s->Find(key);
  if (e == nullptr) {
    return absl::InvalidArgumentError(
        absl::StrCat(source_name_, ": missing key '", std::string(key),
                     "' in section [", std::string(section), "]"));
  }
  auto value = ParseNumber(e->value);
  if (!value.ok()) return ErrorAt(e->line_number, value.status().message());
  return *value;
}

absl::StatusOr<double> TextConfig::GetDoubleOr(std::string_view section,
                                               std::string_view key,
                                               double fallback) const {
  const ConfigSection* s = Section(section);
  const ConfigEntry* e = s == nullptr ? nullptr : s->Find(key);
  if (e == nullptr) return fallback;
  auto value = ParseNumber(e->value);
  if (!value.ok()) return ErrorAt(e->line_number, value.status().message());
  return *value;
}

absl::StatusOr<double> TextConfig::GetSpeedOr(std::string_view section,
                                              std::string_view key,
                                              double fallback_mps) const {
  const ConfigSection* s = Section(section);
  const ConfigEntry* e = s == nullptr ? nullptr : s->Find(key);
  if (e == nullptr) return fallback_mps;
  auto value = ParseSpeed(e->value);
  if (!value.ok()) return ErrorAt(e->line_number, value.status().message());
  return *value;
}

}  // namespace ecodrive
