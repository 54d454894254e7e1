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

// Ingestion of transcripts, event logs and test scores, and the unified
// chronological action stream (says / adds / removes / submits) with turn
// and attempt bookkeeping.

#ifndef ALIGN_CORPUS_H_
#define ALIGN_CORPUS_H_

#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "align/network.h"

namespace align {

using TeamId = int;

// A and B are the two learners; kRobot is the robot ("I" in transcripts).
enum class Speaker { kA, kB, kRobot };

std::string_view SpeakerName(Speaker speaker);
std::optional<Speaker> ParseSpeaker(std::string_view text);
inline bool IsHuman(Speaker s) { return s != Speaker::kRobot; }
inline Speaker OtherHuman(Speaker s) {
  return s == Speaker::kA ? Speaker::kB : Speaker::kA;
}

// One inter-pausal unit of a single speaker.
struct Utterance {
  TeamId team = 0;
  Speaker speaker = Speaker::kA;
  double start = 0;
  double end = 0;
  std::string text;
  std::vector<std::string> tokens;
  // Position of tokens[0] in the team's whole-dialogue token numbering.
  std::size_t token_offset = 0;
};

enum class EditKind { kAdd, kRemove };

struct EditEvent {
  TeamId team = 0;
  double time = 0;
  EditKind kind = EditKind::kAdd;
  int u = 0;  // u < v
  int v = 0;
  // Who performed the edit, when the log records it.
  std::optional<Speaker> subject;
};

struct SubmitEvent {
  TeamId team = 0;
  double time = 0;
  int cost = 0;
};

// Experimenter stop record; only contributes to the team duration.
struct StopEvent {
  TeamId team = 0;
  double time = 0;
};

struct EventLog {
  std::vector<EditEvent> edits;
  std::vector<SubmitEvent> submits;
  std::vector<StopEvent> stops;
};

struct TestScores {
  TeamId team = 0;
  Speaker speaker = Speaker::kA;
  int pre = 0;
  int post = 0;
};

enum class ActionVerb { kSays, kAdds, kRemoves, kSubmits };
std::string_view VerbName(ActionVerb verb);

struct ActionEvent {
  // Absent for robot utterances and submissions.
  std::optional<Speaker> subject;
  ActionVerb verb = ActionVerb::kSays;
  // Index into the utterance, edit or submit list, according to `verb`.
  std::size_t object = 0;
  double time = 0;
  int turn = 1;
  int attempt = 1;
};

// Transcript CSV: team,speaker,start_sec,end_sec,utterance. Rows are
// sorted by (team, start); token offsets restart at 0 for every team.
std::vector<Utterance> ReadTranscript(std::istream &in, std::string_view source);
std::vector<Utterance> LoadTranscript(const std::filesystem::path &path);
void WriteTranscript(std::ostream &out, const std::vector<Utterance> &utterances);

// Recomputes token offsets of a single team's utterances (already sorted).
void AssignTokenOffsets(std::vector<Utterance> *utterances);

// Events CSV: team,time_sec,event,u,v,cost[,subject]. event is one of add,
// remove, submit, stop. Node references are resolved against `network`.
EventLog ReadEventLog(std::istream &in, std::string_view source,
                      const Network &network);
EventLog LoadEventLog(const std::filesystem::path &path, const Network &network);
void WriteEventLog(std::ostream &out, const EventLog &log, const Network &network);

// Tests CSV: team,speaker,pre,post.
std::vector<TestScores> ReadTestScores(std::istream &in, std::string_view source,
                                       int max_score = 10);
std::vector<TestScores> LoadTestScores(const std::filesystem::path &path,
                                       int max_score = 10);
void WriteTestScores(std::ostream &out, const std::vector<TestScores> &scores);

// Merges one team's inputs into a chronological stream. The turn counter
// goes up after every second edit, the attempt counter after every
// submission; utterances carry the counters in force at their start time.
// At equal timestamps log records precede utterances. Edits without a
// recorded subject are attributed to the visual-view holder: A on odd
// turns, B on even turns.
std::vector<ActionEvent> BuildActionStream(const std::vector<Utterance> &utterances,
                                           const std::vector<EditEvent> &edits,
                                           const std::vector<SubmitEvent> &submits);

// 100 * time / duration. Throws std::invalid_argument when duration <= 0
// or time lies outside [0, duration].
double RelativeTime(double time, double duration);

struct TeamCorpus {
  TeamId team = 0;
  std::vector<Utterance> utterances;
  std::vector<EditEvent> edits;
  std::vector<SubmitEvent> submits;
  std::vector<StopEvent> stops;
  std::optional<TestScores> scores_a;
  std::optional<TestScores> scores_b;

  // Time of the last log record or the end of the last utterance,
  // whichever is later.
  double Duration() const;
  std::vector<ActionEvent> Actions() const {
    return BuildActionStream(utterances, edits, submits);
  }
};

struct Corpus {
  Network network;
  std::map<TeamId, TeamCorpus> teams;

  static Corpus Assemble(Network network, std::vector<Utterance> utterances,
                         EventLog log, std::vector<TestScores> scores);
  static Corpus Ingest(const std::filesystem::path &transcripts,
                       const std::filesystem::path &events,
                       const std::filesystem::path &network,
                       const std::filesystem::path &tests);

  // Corpus directory layout: network.json, transcripts.csv, events.csv,
  // tests.csv and the derived actions.csv.
  static Corpus LoadDir(const std::filesystem::path &dir);
  void SaveDir(const std::filesystem::path &dir) const;
};

// actions.csv: team,subject,verb,object,time,turn,attempt.
void WriteActionTable(std::ostream &out, const Corpus &corpus);

}  // namespace align

#endif  // ALIGN_CORPUS_H_
