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

#include <cmath>
#include <filesystem>

#include "gtest/gtest.h"

namespace ecodrive {
namespace {

TEST(SplitFieldsTest, TrimsAndKeepsEmpty) {
  const auto f = SplitFields(" a , b,,c ");
  ASSERT_EQ(f.size(), 4u);
  EXPECT_EQ(f[0], "a");
  EXPECT_EQ(f[2], "");
  EXPECT_EQ(f[3], "c");
}

TEST(ParseNumericCsvTest, ReadsRowsWithLineNumbers) {
  auto table = ParseNumericCsv("# comment\nt,x,v,extra\n0,0,0,1\n\n1,2.5,5,2\n",
                               {"t", "x", "v"}, "trace.csv");
  ASSERT_TRUE(table.ok()) << table.status();
  ASSERT_EQ(table->rows.size(), 2u);
  EXPECT_EQ(table->rows[1][1], 2.5);
  EXPECT_EQ(table->line_numbers[1], 5);
  EXPECT_EQ(table->ColumnIndex("extra"), 3);
  EXPECT_EQ(table->ColumnIndex("missing"), -1);
}

TEST(ParseNumericCsvTest, BadCellNamesRowAndLine) {
  auto table =
      ParseNumericCsv("t,x,v\n0,0,0\n1,abc,2\n", {"t", "x", "v"}, "trace.csv");
  ASSERT_FALSE(table.ok());
  EXPECT_EQ(table.status().message(),
            "trace.csv:3: row 2: not a number: 'abc'");
}

TEST(ParseNumericCsvTest, WrongFieldCountAndHeader) {
  auto short_row =
      ParseNumericCsv("t,x,v\n0,0\n", {"t", "x", "v"}, "trace.csv");
  ASSERT_FALSE(short_row.ok());
  EXPECT_NE(short_row.status().message().find("row 1 has 2 fields"),
            std::string::npos);
  EXPECT_FALSE(ParseNumericCsv("time,x,v\n0,0,0\n", {"t", "x", "v"}, "a").ok());
  EXPECT_FALSE(ParseNumericCsv("", {"t"}, "a").ok());
}

TEST(FormatNumberTest, ShortestStableForm) {
  EXPECT_EQ(FormatNumber(0.0), "0");
  EXPECT_EQ(FormatNumber(-0.0), "0");
  EXPECT_EQ(FormatNumber(1.5), "1.5");
  EXPECT_EQ(FormatNumber(1.0 / 3.0), "0.3333333333");
}

TEST(FileIoTest, WriteThenRead) {
  const std::string path =
      (std::filesystem::temp_directory_path() / "ecodrive_csv_test.txt")
          .string();
  ASSERT_TRUE(WriteFile(path, "hello\n").ok());
  auto text = ReadFile(path);
  ASSERT_TRUE(text.ok());
  EXPECT_EQ(*text, "hello\n");
  std::filesystem::remove(path);
  auto missing = ReadFile(path);
  ASSERT_FALSE(missing.ok());
  EXPECT_TRUE(absl::IsNotFound(missing.status()));
  EXPECT_NE(missing.status().message().find(path), std::string::npos);
}

}  // namespace
}  // namespace ecodrive
