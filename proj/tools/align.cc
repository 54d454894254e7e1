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

// align: routine mining, instruction/action matching and the hypothesis
// analyses over a corpus directory.
//
// Exit codes: 0 success, 2 invalid input or usage, 1 anything else.

#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "align/corpus.h"
#include "align/error.h"
#include "align/instructions.h"
#include "align/measures.h"
#include "align/report.h"
#include "align/routines.h"

namespace fs = std::filesystem;

namespace {

constexpr int kInputFailure = 2;
constexpr int kOtherFailure = 1;

struct Options {
  std::string transcripts, events, network, tests;
  std::string corpus;
  std::string out;
  std::string hypothesis;
  std::string format = "csv";
  bool task_only = false;
  bool clear_on_verdict = false;
  bool exact_p = false;
  std::optional<double> common_window;
};

// Writes to --out when given, stdout otherwise.
template <typename Fill>
void WithOutput(const std::string &path, Fill fill) {
  if (path.empty()) {
    fill(std::cout);
    return;
  }
  if (fs::path(path).has_parent_path()) fs::create_directories(fs::path(path).parent_path());
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  fill(out);
}

void WriteRoutines(std::ostream &out, const align::Corpus &corpus, bool task_only) {
  align::WriteRoutineTableHeader(out);
  for (const auto &[id, team] : corpus.teams) {
    std::vector<align::Routine> routines = align::ExtractRoutines(team.utterances);
    if (task_only) routines = align::FilterTaskRoutines(routines, corpus.network);
    align::WriteRoutineTableRows(out, id, routines, corpus.network);
  }
}

void WriteAnnotated(std::ostream &out, const align::Corpus &corpus, bool clear_on_verdict) {
  align::WriteAnnotatedHeader(out);
  for (const auto &[id, team] : corpus.teams) {
    const align::MatchResult result = align::MatchInstructionsToActions(
        team.Actions(), team.utterances, team.edits, corpus.network, {clear_on_verdict});
    align::WriteAnnotatedRows(out, id, result, team.utterances, team.edits, team.submits,
                              corpus.network);
  }
}

void WriteMeasures(std::ostream &out, const align::Corpus &corpus) {
  std::vector<align::TeamSuccess> teams;
  for (const auto &[id, team] : corpus.teams) {
    teams.push_back(align::ComputeTeamSuccess(team, corpus.network));
  }
  align::WriteTaskFeatures(out, teams);
}

align::Analysis Analyze(const align::Corpus &corpus, const Options &opt) {
  align::AnalysisOptions options;
  options.common_window = opt.common_window;
  options.matcher.clear_on_verdict = opt.clear_on_verdict;
  options.exact_spearman_p = opt.exact_p;
  return align::Analysis(corpus, options);
}

int Run(CLI::App &app, const Options &opt) {
  if (app.got_subcommand("ingest")) {
    const align::Corpus corpus =
        align::Corpus::Ingest(opt.transcripts, opt.events, opt.network, opt.tests);
    corpus.SaveDir(opt.out);
    std::cout << "ingested " << corpus.teams.size() << " teams into " << opt.out << "\n";
    return 0;
  }
  const align::Corpus corpus = align::Corpus::LoadDir(opt.corpus);
  if (app.got_subcommand("routines")) {
    WithOutput(opt.out, [&](std::ostream &o) { WriteRoutines(o, corpus, opt.task_only); });
  } else if (app.got_subcommand("annotate")) {
    WithOutput(opt.out,
               [&](std::ostream &o) { WriteAnnotated(o, corpus, opt.clear_on_verdict); });
  } else if (app.got_subcommand("measures")) {
    WithOutput(opt.out, [&](std::ostream &o) { WriteMeasures(o, corpus); });
  } else if (app.got_subcommand("analyze")) {
    const align::Hypothesis h = *align::ParseHypothesis(opt.hypothesis);
    const align::HypothesisReport report = align::RunHypothesis(h, Analyze(corpus, opt));
    const fs::path out = opt.out.empty() ? fs::path(opt.corpus) / "reports" : fs::path(opt.out);
    align::EmitReport(report,
                      opt.format == "json" ? align::ReportFormat::kJson : align::ReportFormat::kCsv,
                      out);
    std::cout << align::RenderReport(report);
  } else if (app.got_subcommand("all")) {
    const fs::path out = opt.out.empty() ? fs::path(opt.corpus) / "reports" : fs::path(opt.out);
    WithOutput((out / "routines.csv").string(),
               [&](std::ostream &o) { WriteRoutines(o, corpus, false); });
    WithOutput((out / "task_routines.csv").string(),
               [&](std::ostream &o) { WriteRoutines(o, corpus, true); });
    WithOutput((out / "annotated.csv").string(),
               [&](std::ostream &o) { WriteAnnotated(o, corpus, opt.clear_on_verdict); });
    WithOutput((out / "task_features.csv").string(),
               [&](std::ostream &o) { WriteMeasures(o, corpus); });
    const align::Analysis analysis = Analyze(corpus, opt);
    for (align::Hypothesis h : align::kAllHypotheses) {
      const align::HypothesisReport report = align::RunHypothesis(h, analysis);
      align::EmitReport(report, align::ReportFormat::kCsv, out);
      align::EmitReport(report, align::ReportFormat::kJson, out);
      std::cout << align::RenderReport(report) << "\n";
    }
  }
  return 0;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"Routine expressions and instruction-to-action alignment in situated dialogue"};
  app.require_subcommand(1);
  Options opt;

  CLI::App *ingest = app.add_subcommand("ingest", "validate raw inputs into a corpus directory");
  ingest->add_option("--transcripts", opt.transcripts, "transcripts CSV")->required();
  ingest->add_option("--events", opt.events, "event log CSV")->required();
  ingest->add_option("--network", opt.network, "network JSON")->required();
  ingest->add_option("--tests", opt.tests, "pre/post test scores CSV")->required();
  ingest->add_option("--out", opt.out, "corpus directory to create")->required();

  CLI::App *routines = app.add_subcommand("routines", "emit the routine table");
  routines->add_flag("--task-only", opt.task_only, "keep routines naming a node");

  CLI::App *annotate = app.add_subcommand("annotate", "emit the annotated action stream");
  CLI::App *measures = app.add_subcommand("measures", "emit per-team task success");

  CLI::App *analyze = app.add_subcommand("analyze", "run one hypothesis analysis");
  analyze->add_option("--hypothesis", opt.hypothesis)
      ->required()
      ->check(CLI::IsMember({"h1.1", "h1.2", "h2.1", "h2.2"}));
  analyze->add_option("--format", opt.format)->check(CLI::IsMember({"csv", "json"}));

  CLI::App *all = app.add_subcommand("all", "run every stage and analysis");

  for (CLI::App *sub : {routines, annotate, measures, analyze, all}) {
    sub->add_option("--corpus", opt.corpus, "corpus directory")->required();
    sub->add_option("--out", opt.out, "output file or directory");
  }
  for (CLI::App *sub : {annotate, analyze, all}) {
    sub->add_flag("--clear-on-verdict", opt.clear_on_verdict,
                  "empty the pending list after each match or mismatch");
  }
  for (CLI::App *sub : {analyze, all}) {
    sub->add_option("--common-window", opt.common_window, "common window in seconds")
        ->check(CLI::PositiveNumber);
    sub->add_flag("--exact-p", opt.exact_p,
                  "permutation p-values for Spearman summaries over <= 10 teams");
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kInputFailure;
  }

  try {
    return Run(app, opt);
  } catch (const align::InputError &e) {
    std::cerr << "align: " << e.what() << "\n";
    return kInputFailure;
  } catch (const std::exception &e) {
    std::cerr << "align: " << e.what() << "\n";
    return kOtherFailure;
  }
}
