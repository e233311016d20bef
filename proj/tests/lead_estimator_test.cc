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
#include <random>

#include "gtest/gtest.h"

namespace ecodrive {
namespace {

TEST(LeadHistoryTest, EmptyAndSingleSampleAreLowConfidence) {
  LeadHistory history;
  EXPECT_TRUE(history.Estimate().low_confidence);
  EXPECT_EQ(history.Estimate().accel, 0.0);
  ASSERT_TRUE(history.Push(0.0, 10.0).ok());
  EXPECT_TRUE(history.Estimate().low_confidence);
  ASSERT_TRUE(history.Push(1.0, 11.0).ok());
  EXPECT_TRUE(history.Estimate().low_confidence);
  ASSERT_TRUE(history.Push(2.0, 12.0).ok());
  EXPECT_FALSE(history.Estimate().low_confidence);
}

TEST(LeadHistoryTest, ConstantSpeedGivesZero) {
  for (auto mode : {AccelEstimateMode::kDifferentiateThenSmooth,
                    AccelEstimateMode::kSmoothThenDifferentiate}) {
    LeadHistory history(0.95, mode);
    for (int k = 0; k < 6; ++k) ASSERT_TRUE(history.Push(k, 8.0).ok());
    EXPECT_EQ(history.Estimate().accel, 0.0);
  }
}

TEST(LeadHistoryTest, ConstantRampIsExact) {
  for (auto mode : {AccelEstimateMode::kDifferentiateThenSmooth,
                    AccelEstimateMode::kSmoothThenDifferentiate}) {
    LeadHistory history(0.95, mode);
    for (int k = 0; k < 6; ++k) ASSERT_TRUE(history.Push(k, 3.0 + k).ok());
    EXPECT_NEAR(history.Estimate().accel, 1.0, 1e-9);
  }
}

TEST(LeadHistoryTest, KeepsOnlySixNewestSamples) {
  LeadHistory history;
  for (int k = 0; k < 10; ++k) ASSERT_TRUE(history.Push(k, k * k).ok());
  ASSERT_EQ(history.size(), LeadHistory::kCapacity);
  EXPECT_EQ(history.at(0).t, 4.0);
  EXPECT_EQ(history.newest().t, 9.0);
}

TEST(LeadHistoryTest, WeightsFavourNewestPair) {
  // Pair slopes 0, 0, 0, 0, 5 with beta 0.5: weights 1/16 .. 1.
  LeadHistory history(0.5);
  const double speeds[] = {0, 0, 0, 0, 0, 5};
  for (int k = 0; k < 6; ++k) ASSERT_TRUE(history.Push(k, speeds[k]).ok());
  const double weights = 1.0 + 0.5 + 0.25 + 0.125 + 0.0625;
  EXPECT_NEAR(history.Estimate().accel, 5.0 / weights, 1e-12);
}

TEST(LeadHistoryTest, RejectsNonIncreasingTime) {
  LeadHistory history;
  ASSERT_TRUE(history.Push(1.0, 3.0).ok());
  EXPECT_FALSE(history.Push(1.0, 3.0).ok());
  history.Clear();
  EXPECT_TRUE(history.empty());
  EXPECT_TRUE(history.Push(0.5, 3.0).ok());
}

TEST(LeadHistoryPropertyTest, SmoothingReducesNoiseVariance) {
  std::mt19937_64 rng(2024);
  std::normal_distribution<double> noise(0.0, 0.3);
  const double true_accel = 0.8;
  double raw_sq = 0.0, ewma_sq = 0.0;
  const int draws = 10000;
  for (int d = 0; d < draws; ++d) {
    LeadHistory history;
    double prev_t = 0.0, prev_v = 0.0, last_raw = 0.0;
    for (int k = 0; k < 6; ++k) {
      const double v = 5.0 + true_accel * k + noise(rng);
      ASSERT_TRUE(history.Push(k, v).ok());
      if (k > 0) last_raw = (v - prev_v) / (k - prev_t);
      prev_t = k;
      prev_v = v;
    }
    raw_sq += std::pow(last_raw - true_accel, 2);
    ewma_sq += std::pow(history.Estimate().accel - true_accel, 2);
  }
  EXPECT_LT(ewma_sq / draws, raw_sq / draws);
}

}  // namespace
}  // namespace ecodrive
