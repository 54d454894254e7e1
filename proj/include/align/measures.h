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

// Task success: submission error against the optimal spanning tree cost and
// relative learning gain from pre/post test scores.

#ifndef ALIGN_MEASURES_H_
#define ALIGN_MEASURES_H_

#include <optional>
#include <ostream>
#include <set>
#include <vector>

#include "align/corpus.h"

namespace align {

// (cost - optimal) / optimal. Throws std::invalid_argument if optimal <= 0
// or cost < optimal.
double SubmissionError(double cost, double optimal_cost);

// Lowest submission error. Throws std::invalid_argument when empty.
double TeamError(const std::vector<double> &submission_errors);

// (post - pre) / (max - pre) when post >= pre, else (post - pre) / pre.
// A perfect pre and post score gives 0.
double RelativeLearningGain(int pre, int post, int max_score = 10);

double TeamLearning(double learn_a, double learn_b);

struct TeamSuccess {
  TeamId team = 0;
  std::optional<double> error;  // absent without submissions
  std::optional<double> learn;  // absent without both test scores
  std::optional<double> learn_a;
  std::optional<double> learn_b;
  double duration = 0;
  std::size_t n_submissions = 0;
  int n_turns = 0;
};

TeamSuccess ComputeTeamSuccess(const TeamCorpus &team, const Network &network,
                               int max_score = 10);

struct LearningGroups {
  std::set<TeamId> positive;
  std::set<TeamId> nonpositive;
};

// Splits on learn > 0; teams without a learning measure are left out.
LearningGroups SplitLearningGroups(const std::vector<TeamSuccess> &teams);

// Duration of the quickest team. Throws std::invalid_argument when empty.
double CommonWindowLength(const std::vector<double> &team_durations);

// team, error, learn, learn_A, learn_B, duration_sec, n_submissions, n_turns
void WriteTaskFeatures(std::ostream &out, const std::vector<TeamSuccess> &teams);

}  // namespace align

#endif  // ALIGN_MEASURES_H_
