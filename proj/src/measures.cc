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

#include <algorithm>
#include <stdexcept>

#include "align/csv.h"

namespace align {

double SubmissionError(double cost, double optimal_cost) {
  if (!(optimal_cost > 0)) throw std::invalid_argument("optimal cost must be positive");
  if (cost < optimal_cost) {
    throw std::invalid_argument("submitted cost is below the optimal cost");
  }
  return (cost - optimal_cost) / optimal_cost;
}

double TeamError(const std::vector<double> &submission_errors) {
  if (submission_errors.empty()) throw std::invalid_argument("no submissions");
  return *std::min_element(submission_errors.begin(), submission_errors.end());
}

double RelativeLearningGain(int pre, int post, int max_score) {
  if (max_score <= 0 || pre < 0 || post < 0 || pre > max_score || post > max_score) {
    throw std::invalid_argument("test scores must lie in [0, max_score]");
  }
  if (post >= pre) {
    if (pre == max_score) return 0.0;  // no margin left to improve
    return static_cast<double>(post - pre) / (max_score - pre);
  }
  return static_cast<double>(post - pre) / pre;
}

double TeamLearning(double learn_a, double learn_b) { return (learn_a + learn_b) / 2.0; }

TeamSuccess ComputeTeamSuccess(const TeamCorpus &team, const Network &network,
                               int max_score) {
  TeamSuccess s;
  s.team = team.team;
  s.duration = team.Duration();
  s.n_submissions = team.submits.size();
  s.n_turns = static_cast<int>((team.edits.size() + 1) / 2);
  if (!team.submits.empty()) {
    std::vector<double> errors;
    for (const SubmitEvent &sub : team.submits) {
      errors.push_back(SubmissionError(sub.cost, network.OptimalCost()));
    }
    s.error = TeamError(errors);
  }
  if (team.scores_a) {
    s.learn_a = RelativeLearningGain(team.scores_a->pre, team.scores_a->post, max_score);
  }
  if (team.scores_b) {
    s.learn_b = RelativeLearningGain(team.scores_b->pre, team.scores_b->post, max_score);
  }
  if (s.learn_a && s.learn_b) s.learn = TeamLearning(*s.learn_a, *s.learn_b);
  return s;
}

LearningGroups SplitLearningGroups(const std::vector<TeamSuccess> &teams) {
  LearningGroups groups;
  for (const TeamSuccess &t : teams) {
    if (!t.learn) continue;
    (*t.learn > 0 ? groups.positive : groups.nonpositive).insert(t.team);
  }
  return groups;
}

double CommonWindowLength(const std::vector<double> &team_durations) {
  if (team_durations.empty()) throw std::invalid_argument("no teams");
  return *std::min_element(team_durations.begin(), team_durations.end());
}

void WriteTaskFeatures(std::ostream &out, const std::vector<TeamSuccess> &teams) {
  auto opt = [](const std::optional<double> &v) { return v ? FormatDouble(*v) : ""; };
  WriteCsvRow(out, {"team", "error", "learn", "learn_A", "learn_B", "duration_sec",
                    "n_submissions", "n_turns"});
  for (const TeamSuccess &t : teams) {
    WriteCsvRow(out, {std::to_string(t.team), opt(t.error), opt(t.learn), opt(t.learn_a),
                      opt(t.learn_b), FormatDouble(t.duration),
                      std::to_string(t.n_submissions), std::to_string(t.n_turns)});
  }
}

}  // namespace align
