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

// Per-team pipelines and the four hypothesis analyses:
//   h1.1  establishment times vs task success
//   h1.2  filler positions vs routine priming / establishment positions
//   h2.1  match and mismatch times vs task success
//   h2.2  "oh" times vs (mis)matched action times

#ifndef ALIGN_REPORT_H_
#define ALIGN_REPORT_H_

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "align/corpus.h"
#include "align/instructions.h"
#include "align/measures.h"
#include "align/routines.h"

namespace align {

enum class Hypothesis { kH11, kH12, kH21, kH22 };
std::string_view HypothesisName(Hypothesis h);  // "h1.1"
std::optional<Hypothesis> ParseHypothesis(std::string_view text);
inline constexpr Hypothesis kAllHypotheses[] = {Hypothesis::kH11, Hypothesis::kH12,
                                                Hypothesis::kH21, Hypothesis::kH22};

using Value = std::variant<std::monostate, long long, double, std::string>;

struct SummaryStat {
  std::string name;
  std::optional<double> statistic;
  std::optional<double> p_value;
  std::size_t n = 0;

  bool operator==(const SummaryStat &) const = default;
};

struct Distribution {
  TeamId team = 0;
  std::string series;
  std::vector<double> values;

  bool operator==(const Distribution &) const = default;
};

struct HypothesisReport {
  Hypothesis hypothesis = Hypothesis::kH11;
  std::vector<std::string> columns;
  std::vector<std::vector<Value>> rows;  // one per team, best team first
  std::vector<SummaryStat> summary;
  std::vector<Distribution> distributions;  // boxplot-ready series

  bool operator==(const HypothesisReport &) const = default;

  std::optional<double> Number(TeamId team, std::string_view column) const;
  const SummaryStat *Summary(std::string_view name) const;
};

struct AnalysisOptions {
  // Defaults to the duration of the quickest team.
  std::optional<double> common_window;
  MatcherOptions matcher;
  int max_score = 10;
  // Spearman p from the exhaustive permutation distribution when at most 10
  // teams enter the test, instead of the t approximation.
  bool exact_spearman_p = false;
};

struct TeamAnalysis {
  TeamId team = 0;
  TeamSuccess success;
  std::size_t total_tokens = 0;
  std::vector<Routine> task_routines;
  TokenEvents filler_events;
  MatchResult matches;
  std::vector<double> oh_times;  // one per "oh" token, utterance end time
  std::size_t oh_utterances = 0;
};

// Runs every per-team pipeline once. Teams are ordered by decreasing task
// performance: increasing error, then increasing duration, then team id;
// teams without an error come last.
class Analysis {
 public:
  Analysis(const Corpus &corpus, AnalysisOptions options = {});

  const std::vector<TeamAnalysis> &teams() const { return teams_; }
  double common_window() const { return common_window_; }
  const LearningGroups &learning_groups() const { return groups_; }
  const AnalysisOptions &options() const { return options_; }

 private:
  AnalysisOptions options_;
  std::vector<TeamAnalysis> teams_;
  double common_window_ = 0;
  LearningGroups groups_;
};

HypothesisReport RunH11(const Analysis &analysis);
HypothesisReport RunH12(const Analysis &analysis);
HypothesisReport RunH21(const Analysis &analysis);
HypothesisReport RunH22(const Analysis &analysis);
HypothesisReport RunHypothesis(Hypothesis h, const Analysis &analysis);

enum class ReportFormat { kCsv, kJson };

std::string ReportToJson(const HypothesisReport &report);
HypothesisReport ReportFromJson(std::string_view text);
void WriteReportCsv(std::ostream &out, const HypothesisReport &report);
void WriteSummaryCsv(std::ostream &out, const HypothesisReport &report);
void WriteDistributionsCsv(std::ostream &out, const HypothesisReport &report);

// Human-readable table: p-values to 3 decimals, "<.05" when significant.
std::string RenderReport(const HypothesisReport &report);
std::string FormatPValue(std::optional<double> p);

// Writes <name>.csv, <name>_summary.csv and <name>_distributions.csv (csv)
// or <name>.json, where <name> is e.g. "h1_2". Returns the written paths.
// Throws std::runtime_error when the directory cannot be written.
std::vector<std::filesystem::path> EmitReport(const HypothesisReport &report,
                                              ReportFormat format,
                                              const std::filesystem::path &out_dir);

}  // namespace align

#endif  // ALIGN_REPORT_H_
