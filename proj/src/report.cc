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

#include "align/report.h"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include "align/csv.h"
#include "align/stats.h"
#include "json.hpp"

namespace align {

namespace {

using ordered_json = nlohmann::ordered_json;
using OptDouble = std::optional<double>;

Value Num(OptDouble v) { return v ? Value(*v) : Value(); }
Value Count(std::size_t n) { return Value(static_cast<long long>(n)); }

OptDouble MedianOf(const std::vector<double> &values) {
  if (values.empty()) return std::nullopt;
  return stats::Median(values);
}

std::vector<double> Percent(const std::vector<std::size_t> &positions, std::size_t total) {
  std::vector<double> out;
  out.reserve(positions.size());
  for (std::size_t p : positions) out.push_back(100.0 * static_cast<double>(p) / total);
  return out;
}

std::vector<double> AsDoubles(const std::vector<std::size_t> &positions) {
  return {positions.begin(), positions.end()};
}

// One value per team in report order; missing values are dropped listwise.
struct TeamValues {
  std::string name;
  std::vector<OptDouble> values;
};

SummaryStat SpearmanVsError(const Analysis &analysis, const TeamValues &tv) {
  SummaryStat s;
  s.name = "spearman_" + tv.name + "_vs_error";
  std::vector<double> x, y;
  for (std::size_t i = 0; i < analysis.teams().size(); ++i) {
    const OptDouble &error = analysis.teams()[i].success.error;
    if (!tv.values[i] || !error) continue;
    x.push_back(*tv.values[i]);
    y.push_back(*error);
  }
  s.n = x.size();
  try {
    const stats::TestResult r = stats::Spearman(x, y);
    s.statistic = r.statistic;
    s.p_value = r.p_value;
    if (analysis.options().exact_spearman_p && x.size() <= 10) {
      s.p_value = stats::SpearmanPermutationP(x, y);
    }
  } catch (const std::invalid_argument &) {
    // too few teams or constant input: left as n/a
  }
  return s;
}

SummaryStat KruskalByLearning(const Analysis &analysis, const TeamValues &tv) {
  SummaryStat s;
  s.name = "kruskal_" + tv.name + "_by_learning";
  std::vector<double> positive, nonpositive;
  const LearningGroups &groups = analysis.learning_groups();
  for (std::size_t i = 0; i < analysis.teams().size(); ++i) {
    if (!tv.values[i]) continue;
    const TeamId team = analysis.teams()[i].team;
    if (groups.positive.count(team)) positive.push_back(*tv.values[i]);
    if (groups.nonpositive.count(team)) nonpositive.push_back(*tv.values[i]);
  }
  s.n = positive.size() + nonpositive.size();
  try {
    const stats::TestResult r = stats::KruskalWallis({positive, nonpositive});
    s.statistic = r.statistic;
    s.p_value = r.p_value;
  } catch (const std::invalid_argument &) {
  }
  return s;
}

SummaryStat MeanOf(const TeamValues &tv) {
  SummaryStat s;
  s.name = "mean_of_" + tv.name;
  std::vector<double> present;
  for (const OptDouble &v : tv.values) {
    if (v) present.push_back(*v);
  }
  s.n = present.size();
  if (!present.empty()) s.statistic = stats::Mean(present);
  return s;
}

struct Comparison {
  OptDouble u, p, delta;
};

Comparison Compare(const std::vector<double> &x, const std::vector<double> &y) {
  if (x.empty() || y.empty()) return {};
  const stats::TestResult r = stats::MannWhitneyU(x, y);
  return {r.statistic, r.p_value, stats::CliffsDelta(x, y)};
}

HypothesisReport Start(Hypothesis h, std::vector<std::string> columns) {
  HypothesisReport report;
  report.hypothesis = h;
  report.columns = std::move(columns);
  return report;
}

void AddDistribution(HypothesisReport *report, TeamId team, std::string series,
                     std::vector<double> values) {
  report->distributions.push_back({team, std::move(series), std::move(values)});
}

std::string FileStem(Hypothesis h) {
  std::string stem(HypothesisName(h));
  std::replace(stem.begin(), stem.end(), '.', '_');
  return stem;
}

std::string CellText(const Value &v) {
  if (std::holds_alternative<long long>(v)) return std::to_string(std::get<long long>(v));
  if (std::holds_alternative<double>(v)) return FormatDouble(std::get<double>(v));
  if (std::holds_alternative<std::string>(v)) return std::get<std::string>(v);
  return "";
}

std::string OptText(const OptDouble &v) { return v ? FormatDouble(*v) : ""; }

std::string Interpretation(const SummaryStat &s) {
  if (!s.statistic) return "";
  if (s.name.rfind("spearman_", 0) == 0) {
    return std::string(stats::RhoStrengthName(stats::InterpretRho(*s.statistic)));
  }
  return "";
}

ordered_json ValueToJson(const Value &v) {
  if (std::holds_alternative<long long>(v)) return std::get<long long>(v);
  if (std::holds_alternative<double>(v)) return std::get<double>(v);
  if (std::holds_alternative<std::string>(v)) return std::get<std::string>(v);
  return nullptr;
}

Value ValueFromJson(const ordered_json &j) {
  if (j.is_null()) return {};
  if (j.is_number_integer()) return j.get<long long>();
  if (j.is_number_float()) return j.get<double>();
  if (j.is_string()) return j.get<std::string>();
  throw std::invalid_argument("report json: unsupported cell type");
}

ordered_json OptToJson(const OptDouble &v) { return v ? ordered_json(*v) : ordered_json(); }
OptDouble OptFromJson(const ordered_json &j) {
  if (j.is_null()) return std::nullopt;
  return j.get<double>();
}

std::string Fixed(double v, int digits) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*f", digits, v);
  return buf;
}

bool IsPColumn(const std::string &column) {
  return column == "p" || column.rfind("p_", 0) == 0;
}

}  // namespace

std::string_view HypothesisName(Hypothesis h) {
  switch (h) {
    case Hypothesis::kH11: return "h1.1";
    case Hypothesis::kH12: return "h1.2";
    case Hypothesis::kH21: return "h2.1";
    case Hypothesis::kH22: return "h2.2";
  }
  return "?";
}

std::optional<Hypothesis> ParseHypothesis(std::string_view text) {
  for (Hypothesis h : kAllHypotheses) {
    if (HypothesisName(h) == text) return h;
  }
  return std::nullopt;
}

std::optional<double> HypothesisReport::Number(TeamId team, std::string_view column) const {
  const auto col = std::find(columns.begin(), columns.end(), column);
  if (col == columns.end()) return std::nullopt;
  const std::size_t c = static_cast<std::size_t>(col - columns.begin());
  for (const auto &row : rows) {
    if (row.empty() || !std::holds_alternative<long long>(row[0])) continue;
    if (std::get<long long>(row[0]) != team) continue;
    if (std::holds_alternative<long long>(row[c])) {
      return static_cast<double>(std::get<long long>(row[c]));
    }
    if (std::holds_alternative<double>(row[c])) return std::get<double>(row[c]);
    return std::nullopt;
  }
  return std::nullopt;
}

const SummaryStat *HypothesisReport::Summary(std::string_view name) const {
  for (const SummaryStat &s : summary) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

Analysis::Analysis(const Corpus &corpus, AnalysisOptions options) : options_(options) {
  std::vector<double> durations;
  std::vector<TeamSuccess> successes;
  for (const auto &[id, team] : corpus.teams) {
    TeamAnalysis t;
    t.team = id;
    t.success = ComputeTeamSuccess(team, corpus.network, options.max_score);
    for (const Utterance &u : team.utterances) t.total_tokens += u.tokens.size();
    t.task_routines = FilterTaskRoutines(ExtractRoutines(team.utterances), corpus.network);
    t.filler_events = CollectTokenEvents(team.utterances, t.task_routines, FillerMarkers());
    t.matches = MatchInstructionsToActions(team.Actions(), team.utterances, team.edits,
                                           corpus.network, options.matcher);
    for (const Utterance &u : team.utterances) {
      if (!IsHuman(u.speaker)) continue;
      const auto n = std::count(u.tokens.begin(), u.tokens.end(), "oh");
      for (long i = 0; i < n; ++i) t.oh_times.push_back(u.end);
      if (n > 0) ++t.oh_utterances;
    }
    durations.push_back(t.success.duration);
    successes.push_back(t.success);
    teams_.push_back(std::move(t));
  }
  std::stable_sort(teams_.begin(), teams_.end(), [](const TeamAnalysis &a, const TeamAnalysis &b) {
    const OptDouble &ea = a.success.error;
    const OptDouble &eb = b.success.error;
    if (ea.has_value() != eb.has_value()) return ea.has_value();
    if (ea && *ea != *eb) return *ea < *eb;
    if (a.success.duration != b.success.duration) return a.success.duration < b.success.duration;
    return a.team < b.team;
  });
  if (options.common_window) {
    common_window_ = *options.common_window;
  } else if (!durations.empty()) {
    common_window_ = CommonWindowLength(durations);
  }
  groups_ = SplitLearningGroups(successes);
}

HypothesisReport RunH11(const Analysis &analysis) {
  HypothesisReport report =
      Start(Hypothesis::kH11,
            {"team", "error", "learn", "duration_sec", "n_routines", "n_common_window",
             "median_abs", "median_common", "median_norm", "q1_norm", "q3_norm"});
  TeamValues abs{"median_abs", {}}, common{"median_common", {}}, norm{"median_norm", {}};
  for (const TeamAnalysis &t : analysis.teams()) {
    const std::vector<double> a = EstablishmentTimes(t.task_routines, AbsoluteTimes{});
    const std::vector<double> c =
        EstablishmentTimes(t.task_routines, CommonWindow{analysis.common_window()});
    std::vector<double> n;
    if (t.success.duration > 0) {
      n = EstablishmentTimes(t.task_routines, NormalizedTimes{t.success.duration});
    }
    OptDouble q1, q3;
    if (!n.empty()) {
      const Quartiles q = CollaborativePeriod(n);
      q1 = q.q1;
      q3 = q.q3;
    }
    abs.values.push_back(MedianOf(a));
    common.values.push_back(MedianOf(c));
    norm.values.push_back(MedianOf(n));
    report.rows.push_back({Count(t.team), Num(t.success.error), Num(t.success.learn),
                           t.success.duration, Count(a.size()), Count(c.size()),
                           Num(abs.values.back()), Num(common.values.back()),
                           Num(norm.values.back()), Num(q1), Num(q3)});
    AddDistribution(&report, t.team, "establishment_abs", a);
    AddDistribution(&report, t.team, "establishment_common", c);
    AddDistribution(&report, t.team, "establishment_norm", n);
  }
  for (const TeamValues *tv : {&abs, &common, &norm}) {
    report.summary.push_back(SpearmanVsError(analysis, *tv));
  }
  for (const TeamValues *tv : {&abs, &common, &norm}) {
    report.summary.push_back(KruskalByLearning(analysis, *tv));
  }
  report.summary.push_back(MeanOf(norm));
  return report;
}

HypothesisReport RunH12(const Analysis &analysis) {
  HypothesisReport report = Start(
      Hypothesis::kH12,
      {"team", "n_filler", "n_routine", "median_filler", "median_priming",
       "median_establishment", "U_priming", "p_priming", "delta_priming", "U_estab", "p_estab",
       "delta_estab"});
  TeamValues dp{"delta_priming", {}}, de{"delta_estab", {}};
  for (const TeamAnalysis &t : analysis.teams()) {
    const TokenEvents &ev = t.filler_events;
    const std::vector<double> fillers = AsDoubles(ev.marker_positions);
    const std::vector<double> priming = AsDoubles(ev.priming_positions);
    const std::vector<double> estab = AsDoubles(ev.establishment_positions);
    OptDouble mf, mp, me;
    if (t.total_tokens > 0) {
      mf = MedianOf(Percent(ev.marker_positions, t.total_tokens));
      mp = MedianOf(Percent(ev.priming_positions, t.total_tokens));
      me = MedianOf(Percent(ev.establishment_positions, t.total_tokens));
    }
    const Comparison cp = Compare(fillers, priming);
    const Comparison ce = Compare(fillers, estab);
    dp.values.push_back(cp.delta);
    de.values.push_back(ce.delta);
    report.rows.push_back({Count(t.team), Count(fillers.size()), Count(t.task_routines.size()),
                           Num(mf), Num(mp), Num(me), Num(cp.u), Num(cp.p), Num(cp.delta),
                           Num(ce.u), Num(ce.p), Num(ce.delta)});
    AddDistribution(&report, t.team, "filler_pos", fillers);
    AddDistribution(&report, t.team, "priming_pos", priming);
    AddDistribution(&report, t.team, "establishment_pos", estab);
  }
  report.summary.push_back(SpearmanVsError(analysis, dp));
  report.summary.push_back(SpearmanVsError(analysis, de));
  report.summary.push_back(KruskalByLearning(analysis, dp));
  report.summary.push_back(KruskalByLearning(analysis, de));
  return report;
}

HypothesisReport RunH21(const Analysis &analysis) {
  HypothesisReport report = Start(
      Hypothesis::kH21,
      {"team", "error", "learn", "duration_sec", "n_match", "n_mismatch", "n_nonmatch",
       "n_match_utterances", "n_mismatch_utterances", "match_mismatch_ratio",
       "median_match_abs", "median_match_common", "median_match_norm", "median_mismatch_abs",
       "median_mismatch_common", "median_mismatch_norm"});
  TeamValues match_abs{"median_match_abs", {}}, match_common{"median_match_common", {}},
      match_norm{"median_match_norm", {}}, mis_abs{"median_mismatch_abs", {}},
      mis_common{"median_mismatch_common", {}}, mis_norm{"median_mismatch_norm", {}};
  for (const TeamAnalysis &t : analysis.teams()) {
    const auto &records = t.matches.records;
    const std::vector<double> match = VerdictTimes(records, Verdict::kMatch);
    const std::vector<double> mismatch = VerdictTimes(records, Verdict::kMismatch);
    const std::size_t match_groups = CountVerdictUtterances(records, Verdict::kMatch);
    const std::size_t mismatch_groups = CountVerdictUtterances(records, Verdict::kMismatch);
    OptDouble ratio;
    if (mismatch_groups > 0) {
      ratio = static_cast<double>(match_groups) / static_cast<double>(mismatch_groups);
    }
    const TimeMode window = CommonWindow{analysis.common_window()};
    std::vector<double> match_n, mismatch_n;
    if (t.success.duration > 0) {
      match_n = ApplyTimeMode(match, NormalizedTimes{t.success.duration});
      mismatch_n = ApplyTimeMode(mismatch, NormalizedTimes{t.success.duration});
    }
    const std::vector<double> match_c = ApplyTimeMode(match, window);
    const std::vector<double> mismatch_c = ApplyTimeMode(mismatch, window);
    match_abs.values.push_back(MedianOf(match));
    match_common.values.push_back(MedianOf(match_c));
    match_norm.values.push_back(MedianOf(match_n));
    mis_abs.values.push_back(MedianOf(mismatch));
    mis_common.values.push_back(MedianOf(mismatch_c));
    mis_norm.values.push_back(MedianOf(mismatch_n));
    report.rows.push_back(
        {Count(t.team), Num(t.success.error), Num(t.success.learn), t.success.duration,
         Count(match.size()), Count(mismatch.size()),
         Count(CountVerdicts(records, Verdict::kNonmatch)), Count(match_groups),
         Count(mismatch_groups), ratio ? Value(*ratio) : Value(std::string("n/a")),
         Num(match_abs.values.back()), Num(match_common.values.back()),
         Num(match_norm.values.back()), Num(mis_abs.values.back()),
         Num(mis_common.values.back()), Num(mis_norm.values.back())});
    AddDistribution(&report, t.team, "match_abs", match);
    AddDistribution(&report, t.team, "match_norm", match_n);
    AddDistribution(&report, t.team, "mismatch_abs", mismatch);
    AddDistribution(&report, t.team, "mismatch_norm", mismatch_n);
  }
  for (const TeamValues *tv : {&match_abs, &mis_abs, &match_common, &mis_common, &match_norm,
                               &mis_norm}) {
    report.summary.push_back(SpearmanVsError(analysis, *tv));
  }
  for (const TeamValues *tv : {&match_abs, &mis_abs, &match_norm, &mis_norm}) {
    report.summary.push_back(KruskalByLearning(analysis, *tv));
  }
  report.summary.push_back(MeanOf(match_norm));
  report.summary.push_back(MeanOf(mis_norm));
  return report;
}

HypothesisReport RunH22(const Analysis &analysis) {
  HypothesisReport report = Start(
      Hypothesis::kH22,
      {"team", "n_oh", "n_oh_utterances", "n_match", "n_mismatch", "n_match_utterances",
       "n_mismatch_utterances", "median_oh", "median_actions", "U", "p", "delta"});
  TeamValues delta{"delta", {}};
  for (const TeamAnalysis &t : analysis.teams()) {
    const auto &records = t.matches.records;
    const std::vector<double> match = VerdictTimes(records, Verdict::kMatch);
    const std::vector<double> mismatch = VerdictTimes(records, Verdict::kMismatch);
    std::vector<double> actions = match;
    actions.insert(actions.end(), mismatch.begin(), mismatch.end());
    std::sort(actions.begin(), actions.end());
    OptDouble median_oh, median_actions;
    if (t.success.duration > 0) {
      median_oh = MedianOf(ApplyTimeMode(t.oh_times, NormalizedTimes{t.success.duration}));
      median_actions = MedianOf(ApplyTimeMode(actions, NormalizedTimes{t.success.duration}));
    }
    const Comparison c = Compare(t.oh_times, actions);
    delta.values.push_back(c.delta);
    report.rows.push_back(
        {Count(t.team), Count(t.oh_times.size()), Count(t.oh_utterances), Count(match.size()),
         Count(mismatch.size()), Count(CountVerdictUtterances(records, Verdict::kMatch)),
         Count(CountVerdictUtterances(records, Verdict::kMismatch)), Num(median_oh),
         Num(median_actions), Num(c.u), Num(c.p), Num(c.delta)});
    AddDistribution(&report, t.team, "oh_time", t.oh_times);
    AddDistribution(&report, t.team, "action_time", actions);
  }
  report.summary.push_back(SpearmanVsError(analysis, delta));
  report.summary.push_back(KruskalByLearning(analysis, delta));
  return report;
}

HypothesisReport RunHypothesis(Hypothesis h, const Analysis &analysis) {
  switch (h) {
    case Hypothesis::kH11: return RunH11(analysis);
    case Hypothesis::kH12: return RunH12(analysis);
    case Hypothesis::kH21: return RunH21(analysis);
    case Hypothesis::kH22: return RunH22(analysis);
  }
  throw std::invalid_argument("unknown hypothesis");
}

std::string ReportToJson(const HypothesisReport &report) {
  ordered_json j;
  j["hypothesis"] = HypothesisName(report.hypothesis);
  j["columns"] = report.columns;
  j["rows"] = ordered_json::array();
  for (const auto &row : report.rows) {
    ordered_json r = ordered_json::array();
    for (const Value &v : row) r.push_back(ValueToJson(v));
    j["rows"].push_back(std::move(r));
  }
  j["summary"] = ordered_json::array();
  for (const SummaryStat &s : report.summary) {
    j["summary"].push_back({{"name", s.name},
                            {"statistic", OptToJson(s.statistic)},
                            {"p_value", OptToJson(s.p_value)},
                            {"n", s.n}});
  }
  j["distributions"] = ordered_json::array();
  for (const Distribution &d : report.distributions) {
    j["distributions"].push_back({{"team", d.team}, {"series", d.series}, {"values", d.values}});
  }
  return j.dump(2) + "\n";
}

HypothesisReport ReportFromJson(std::string_view text) {
  const ordered_json j = ordered_json::parse(text);
  HypothesisReport report;
  const auto h = ParseHypothesis(j.at("hypothesis").get<std::string>());
  if (!h) throw std::invalid_argument("report json: unknown hypothesis");
  report.hypothesis = *h;
  report.columns = j.at("columns").get<std::vector<std::string>>();
  for (const auto &r : j.at("rows")) {
    std::vector<Value> row;
    for (const auto &cell : r) row.push_back(ValueFromJson(cell));
    report.rows.push_back(std::move(row));
  }
  for (const auto &s : j.at("summary")) {
    report.summary.push_back({s.at("name").get<std::string>(), OptFromJson(s.at("statistic")),
                              OptFromJson(s.at("p_value")), s.at("n").get<std::size_t>()});
  }
  for (const auto &d : j.at("distributions")) {
    report.distributions.push_back({d.at("team").get<TeamId>(), d.at("series").get<std::string>(),
                                    d.at("values").get<std::vector<double>>()});
  }
  return report;
}

void WriteReportCsv(std::ostream &out, const HypothesisReport &report) {
  WriteCsvRow(out, report.columns);
  for (const auto &row : report.rows) {
    std::vector<std::string> cells;
    for (const Value &v : row) cells.push_back(CellText(v));
    WriteCsvRow(out, cells);
  }
}

void WriteSummaryCsv(std::ostream &out, const HypothesisReport &report) {
  WriteCsvRow(out, {"name", "statistic", "p_value", "n", "interpretation"});
  for (const SummaryStat &s : report.summary) {
    WriteCsvRow(out, {s.name, OptText(s.statistic), OptText(s.p_value), std::to_string(s.n),
                      Interpretation(s)});
  }
}

void WriteDistributionsCsv(std::ostream &out, const HypothesisReport &report) {
  WriteCsvRow(out, {"team", "series", "value"});
  for (const Distribution &d : report.distributions) {
    for (double v : d.values) {
      WriteCsvRow(out, {std::to_string(d.team), d.series, FormatDouble(v)});
    }
  }
}

std::string FormatPValue(std::optional<double> p) {
  if (!p) return "n/a";
  if (*p < 0.05) return "<.05";
  std::string s = Fixed(*p, 3);
  if (s.rfind("0.", 0) == 0) s.erase(0, 1);
  return s;
}

std::string RenderReport(const HypothesisReport &report) {
  std::vector<std::vector<std::string>> table;
  table.push_back(report.columns);
  for (const auto &row : report.rows) {
    std::vector<std::string> cells;
    for (std::size_t c = 0; c < row.size(); ++c) {
      const Value &v = row[c];
      if (IsPColumn(report.columns[c])) {
        cells.push_back(std::holds_alternative<double>(v) ? FormatPValue(std::get<double>(v))
                                                          : "n/a");
      } else if (std::holds_alternative<double>(v)) {
        cells.push_back(Fixed(std::get<double>(v), 2));
      } else if (std::holds_alternative<std::monostate>(v)) {
        cells.push_back("n/a");
      } else {
        cells.push_back(CellText(v));
      }
    }
    table.push_back(std::move(cells));
  }
  std::vector<std::size_t> width(report.columns.size(), 0);
  for (const auto &row : table) {
    for (std::size_t c = 0; c < row.size() && c < width.size(); ++c) {
      width[c] = std::max(width[c], row[c].size());
    }
  }
  std::ostringstream out;
  out << "== " << HypothesisName(report.hypothesis) << " ==\n";
  for (const auto &row : table) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c) out << "  ";
      out << std::string(width[c] - row[c].size(), ' ') << row[c];
    }
    out << '\n';
  }
  out << '\n';
  for (const SummaryStat &s : report.summary) {
    out << s.name << ": ";
    if (s.statistic) {
      out << Fixed(*s.statistic, 2);
      if (s.name.rfind("mean_of_", 0) != 0) out << ", p = " << FormatPValue(s.p_value);
    } else {
      out << "n/a";
    }
    out << " (n = " << s.n << ")";
    const std::string interp = Interpretation(s);
    if (!interp.empty()) out << " " << interp;
    out << '\n';
  }
  return out.str();
}

std::vector<std::filesystem::path> EmitReport(const HypothesisReport &report,
                                              ReportFormat format,
                                              const std::filesystem::path &out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec) throw std::runtime_error("cannot create " + out_dir.string() + ": " + ec.message());
  const std::string stem = FileStem(report.hypothesis);
  std::vector<std::filesystem::path> written;
  auto write = [&](const std::string &name, const auto &fill) {
    const std::filesystem::path path = out_dir / name;
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path.string());
    fill(out);
    out.flush();
    if (!out) throw std::runtime_error("write failed: " + path.string());
    written.push_back(path);
  };
  if (format == ReportFormat::kJson) {
    write(stem + ".json", [&](std::ostream &o) { o << ReportToJson(report); });
  } else {
    write(stem + ".csv", [&](std::ostream &o) { WriteReportCsv(o, report); });
    write(stem + "_summary.csv", [&](std::ostream &o) { WriteSummaryCsv(o, report); });
    write(stem + "_distributions.csv", [&](std::ostream &o) { WriteDistributionsCsv(o, report); });
  }
  return written;
}

}  // namespace align
