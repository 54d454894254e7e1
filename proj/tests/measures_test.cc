// Copyright 2026 The Align Authors.
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "align/measures.h"

#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "test_support.h"

namespace align {
namespace {

TEST(SubmissionErrorTest, Fixtures) {
  EXPECT_EQ(SubmissionError(23, 23), 0.0);
  EXPECT_EQ(SubmissionError(30, 20), 0.5);
  EXPECT_THROW(SubmissionError(19, 20), std::invalid_argument);
  EXPECT_THROW(SubmissionError(5, 0), std::invalid_argument);
}

TEST(SubmissionErrorTest, ScaleInvariant) {
  for (int optimal = 1; optimal < 40; ++optimal) {
    for (int cost = optimal; cost < optimal + 30; ++cost) {
      for (double k : {0.5, 3.0, 17.0}) {
        EXPECT_NEAR(SubmissionError(cost * k, optimal * k), SubmissionError(cost, optimal), 1e-12);
      }
    }
  }
}

TEST(TeamErrorTest, MinimumAndMonotone) {
  EXPECT_THROW(TeamError({}), std::invalid_argument);
  std::mt19937 rng(4);
  std::uniform_real_distribution<double> err(0, 2);
  std::vector<double> errors;
  double last = 1e9;
  for (int i = 0; i < 200; ++i) {
    errors.push_back(err(rng));
    const double now = TeamError(errors);
    EXPECT_LE(now, last);
    last = now;
  }
}

TEST(RelativeLearningGainTest, Fixtures) {
  EXPECT_EQ(RelativeLearningGain(5, 5), 0.0);
  EXPECT_EQ(RelativeLearningGain(4, 7), 0.5);
  EXPECT_EQ(RelativeLearningGain(6, 3), -0.5);
  EXPECT_EQ(RelativeLearningGain(10, 10), 0.0);
  EXPECT_EQ(RelativeLearningGain(0, 10), 1.0);
  EXPECT_EQ(RelativeLearningGain(3, 0), -1.0);
  EXPECT_EQ(RelativeLearningGain(2, 5, 8), 0.5);
  EXPECT_THROW(RelativeLearningGain(-1, 3), std::invalid_argument);
  EXPECT_THROW(RelativeLearningGain(3, 11), std::invalid_argument);
}

TEST(RelativeLearningGainTest, BoundedForAllLegalScores) {
  for (int max = 1; max <= 12; ++max) {
    for (int pre = 0; pre <= max; ++pre) {
      for (int post = 0; post <= max; ++post) {
        const double g = RelativeLearningGain(pre, post, max);
        EXPECT_GE(g, -1.0);
        EXPECT_LE(g, 1.0);
      }
    }
  }
}

TEST(TeamSuccessTest, SampleCorpus) {
  const Corpus corpus = Corpus::LoadDir(testing::DataPath("sample"));
  std::vector<TeamSuccess> teams;
  for (const auto &[id, team] : corpus.teams) {
    teams.push_back(ComputeTeamSuccess(team, corpus.network));
  }
  const TeamSuccess &t17 = teams[1];
  EXPECT_EQ(t17.team, 17);
  EXPECT_DOUBLE_EQ(*t17.error, 4.0 / 23.0);
  EXPECT_DOUBLE_EQ(*t17.learn_a, 5.0 / 7.0);
  EXPECT_DOUBLE_EQ(*t17.learn_b, 0.75);
  EXPECT_DOUBLE_EQ(*t17.learn, (5.0 / 7.0 + 0.75) / 2);
  EXPECT_EQ(t17.n_submissions, 1u);
  EXPECT_EQ(t17.n_turns, 4);
  EXPECT_DOUBLE_EQ(t17.duration, 42.0);
  EXPECT_EQ(*teams[0].error, 0.0);
  EXPECT_DOUBLE_EQ(*teams[3].error, 2.0 / 23.0);  // best of 30 and 25

  const LearningGroups groups = SplitLearningGroups(teams);
  EXPECT_EQ(groups.positive, (std::set<TeamId>{10, 17}));
  EXPECT_EQ(groups.nonpositive, (std::set<TeamId>{20, 28}));

  std::ostringstream out;
  WriteTaskFeatures(out, teams);
  EXPECT_EQ(out.str().substr(0, out.str().find('\n')),
            "team,error,learn,learn_A,learn_B,duration_sec,n_submissions,n_turns");
}

TEST(TeamSuccessTest, MissingDataStaysMissing) {
  TeamCorpus team;
  team.team = 3;
  const TeamSuccess s = ComputeTeamSuccess(team, testing::FixtureNetwork());
  EXPECT_FALSE(s.error.has_value());
  EXPECT_FALSE(s.learn.has_value());
  EXPECT_EQ(s.n_turns, 0);
  EXPECT_TRUE(SplitLearningGroups({s}).positive.empty());
}

TEST(CommonWindowLengthTest, Minimum) {
  EXPECT_EQ(CommonWindowLength({300, 120, 450}), 120);
  EXPECT_THROW(CommonWindowLength({}), std::invalid_argument);
}

}  // namespace
}  // namespace align
