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

#include "align/corpus.h"

#include <algorithm>
#include <fstream>
#include <stdexcept>

#include "align/csv.h"
#include "align/error.h"
#include "align/tokenize.h"

namespace align {

namespace {

std::string Where(std::string_view source, int line) {
  return std::string(source) + ":" + std::to_string(line) + ": ";
}

bool IsBlankRow(const std::vector<std::string> &row) {
  return row.size() == 1 && row[0].find_first_not_of(" \t\r") == std::string::npos;
}

const std::string &Field(const std::vector<std::string> &row, std::size_t index,
                         std::string_view source, int line) {
  if (index >= row.size()) {
    throw InputError(Where(source, line) + "expected at least " +
                     std::to_string(index + 1) + " fields, got " +
                     std::to_string(row.size()));
  }
  return row[index];
}

TeamId ParseTeam(const std::string &text, std::string_view source, int line) {
  auto team = ParseInt(text);
  if (!team) throw InputError(Where(source, line) + "bad team id '" + text + "'");
  return static_cast<TeamId>(*team);
}

double ParseSeconds(const std::string &text, std::string_view what,
                    std::string_view source, int line) {
  auto value = ParseDouble(text);
  if (!value || *value < 0) {
    throw InputError(Where(source, line) + "bad " + std::string(what) + " '" +
                     text + "'");
  }
  return *value;
}

std::ifstream OpenInput(const std::filesystem::path &path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot open " + path.string());
  return in;
}

std::ofstream OpenOutput(const std::filesystem::path &path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  return out;
}

}  // namespace

std::string_view SpeakerName(Speaker speaker) {
  switch (speaker) {
    case Speaker::kA: return "A";
    case Speaker::kB: return "B";
    case Speaker::kRobot: return "I";
  }
  return "?";
}

std::optional<Speaker> ParseSpeaker(std::string_view text) {
  if (text == "A" || text == "a") return Speaker::kA;
  if (text == "B" || text == "b") return Speaker::kB;
  if (text == "I" || text == "i" || text == "R" || text == "robot") {
    return Speaker::kRobot;
  }
  return std::nullopt;
}

std::string_view VerbName(ActionVerb verb) {
  switch (verb) {
    case ActionVerb::kSays: return "says";
    case ActionVerb::kAdds: return "adds";
    case ActionVerb::kRemoves: return "removes";
    case ActionVerb::kSubmits: return "submits";
  }
  return "?";
}

void AssignTokenOffsets(std::vector<Utterance> *utterances) {
  std::size_t offset = 0;
  for (Utterance &u : *utterances) {
    u.token_offset = offset;
    offset += u.tokens.size();
  }
}

std::vector<Utterance> ReadTranscript(std::istream &in, std::string_view source) {
  CsvReader reader(in);
  std::vector<std::string> row;
  if (!reader.Next(&row)) {
    throw InputError(std::string(source) + ": missing header row");
  }
  CsvHeader header(row, {"team", "speaker", "start_sec", "end_sec", "utterance"},
                   source);
  const std::size_t team_col = header.index("team");
  const std::size_t speaker_col = header.index("speaker");
  const std::size_t start_col = header.index("start_sec");
  const std::size_t end_col = header.index("end_sec");
  const std::size_t text_col = header.index("utterance");

  std::vector<Utterance> utterances;
  while (reader.Next(&row)) {
    if (IsBlankRow(row)) continue;
    const int line = reader.line();
    Utterance u;
    u.team = ParseTeam(Field(row, team_col, source, line), source, line);
    const std::string &speaker = Field(row, speaker_col, source, line);
    auto parsed = ParseSpeaker(speaker);
    if (!parsed) {
      throw InputError(Where(source, line) + "unknown speaker '" + speaker + "'");
    }
    u.speaker = *parsed;
    u.start = ParseSeconds(Field(row, start_col, source, line), "start_sec", source, line);
    u.end = ParseSeconds(Field(row, end_col, source, line), "end_sec", source, line);
    if (u.end < u.start) {
      throw InputError(Where(source, line) + "utterance ends before it starts");
    }
    u.text = Field(row, text_col, source, line);
    u.tokens = Tokenize(u.text);
    utterances.push_back(std::move(u));
  }

  std::stable_sort(utterances.begin(), utterances.end(),
                   [](const Utterance &a, const Utterance &b) {
                     if (a.team != b.team) return a.team < b.team;
                     return a.start < b.start;
                   });
  std::size_t offset = 0;
  for (std::size_t i = 0; i < utterances.size(); ++i) {
    if (i == 0 || utterances[i].team != utterances[i - 1].team) offset = 0;
    utterances[i].token_offset = offset;
    offset += utterances[i].tokens.size();
  }
  return utterances;
}

std::vector<Utterance> LoadTranscript(const std::filesystem::path &path) {
  auto in = OpenInput(path);
  return ReadTranscript(in, path.string());
}

void WriteTranscript(std::ostream &out, const std::vector<Utterance> &utterances) {
  WriteCsvRow(out, {"team", "speaker", "start_sec", "end_sec", "utterance"});
  for (const Utterance &u : utterances) {
    WriteCsvRow(out, {std::to_string(u.team), std::string(SpeakerName(u.speaker)),
                      FormatDouble(u.start), FormatDouble(u.end), u.text});
  }
}

EventLog ReadEventLog(std::istream &in, std::string_view source,
                      const Network &network) {
  CsvReader reader(in);
  std::vector<std::string> row;
  if (!reader.Next(&row)) {
    throw InputError(std::string(source) + ": missing header row");
  }
  CsvHeader header(row, {"team", "time_sec", "event", "u", "v", "cost"}, source);
  const std::size_t team_col = header.index("team");
  const std::size_t time_col = header.index("time_sec");
  const std::size_t event_col = header.index("event");
  const std::size_t u_col = header.index("u");
  const std::size_t v_col = header.index("v");
  const std::size_t cost_col = header.index("cost");
  const auto subject_col = header.find("subject");

  EventLog log;
  while (reader.Next(&row)) {
    if (IsBlankRow(row)) continue;
    const int line = reader.line();
    const TeamId team = ParseTeam(Field(row, team_col, source, line), source, line);
    const double time =
        ParseSeconds(Field(row, time_col, source, line), "time_sec", source, line);
    const std::string event = ToLower(Field(row, event_col, source, line));

    if (event == "add" || event == "remove") {
      auto resolve = [&](std::size_t col) {
        const std::string &ref = Field(row, col, source, line);
        auto id = network.FindNode(ref);
        if (!id) throw InputError(Where(source, line) + "unknown node '" + ref + "'");
        return *id;
      };
      EditEvent edit;
      edit.team = team;
      edit.time = time;
      edit.kind = event == "add" ? EditKind::kAdd : EditKind::kRemove;
      edit.u = resolve(u_col);
      edit.v = resolve(v_col);
      if (edit.u > edit.v) std::swap(edit.u, edit.v);
      if (!network.HasEdge(edit.u, edit.v)) {
        throw InputError(Where(source, line) + "(" + network.node(edit.u).name + "," +
                         network.node(edit.v).name + ") is not a network edge");
      }
      if (subject_col && *subject_col < row.size() && !row[*subject_col].empty()) {
        auto subject = ParseSpeaker(row[*subject_col]);
        if (!subject || !IsHuman(*subject)) {
          throw InputError(Where(source, line) + "bad subject '" +
                           row[*subject_col] + "'");
        }
        edit.subject = subject;
      }
      log.edits.push_back(edit);
    } else if (event == "submit") {
      const std::string &cost_text =
          cost_col < row.size() ? row[cost_col] : std::string();
      auto cost = ParseInt(cost_text);
      if (!cost) throw InputError(Where(source, line) + "submit without cost");
      if (*cost < network.OptimalCost()) {
        throw InputError(Where(source, line) + "submitted cost " + cost_text +
                         " is below the optimal cost " +
                         std::to_string(network.OptimalCost()));
      }
      log.submits.push_back({team, time, static_cast<int>(*cost)});
    } else if (event == "stop") {
      log.stops.push_back({team, time});
    } else {
      throw InputError(Where(source, line) + "unknown event '" + event + "'");
    }
  }

  auto by_team_time = [](const auto &a, const auto &b) {
    if (a.team != b.team) return a.team < b.team;
    return a.time < b.time;
  };
  std::stable_sort(log.edits.begin(), log.edits.end(), by_team_time);
  std::stable_sort(log.submits.begin(), log.submits.end(), by_team_time);
  std::stable_sort(log.stops.begin(), log.stops.end(), by_team_time);
  return log;
}

EventLog LoadEventLog(const std::filesystem::path &path, const Network &network) {
  auto in = OpenInput(path);
  return ReadEventLog(in, path.string(), network);
}

void WriteEventLog(std::ostream &out, const EventLog &log, const Network &network) {
  struct Row {
    TeamId team;
    double time;
    int order;
    std::vector<std::string> fields;
  };
  std::vector<Row> rows;
  for (const EditEvent &e : log.edits) {
    rows.push_back({e.team, e.time, 0,
                    {std::to_string(e.team), FormatDouble(e.time),
                     e.kind == EditKind::kAdd ? "add" : "remove",
                     network.node(e.u).name, network.node(e.v).name, "",
                     e.subject ? std::string(SpeakerName(*e.subject)) : ""}});
  }
  for (const SubmitEvent &s : log.submits) {
    rows.push_back({s.team, s.time, 1,
                    {std::to_string(s.team), FormatDouble(s.time), "submit", "", "",
                     std::to_string(s.cost), ""}});
  }
  for (const StopEvent &s : log.stops) {
    rows.push_back({s.team, s.time, 2,
                    {std::to_string(s.team), FormatDouble(s.time), "stop", "", "", "",
                     ""}});
  }
  std::stable_sort(rows.begin(), rows.end(), [](const Row &a, const Row &b) {
    if (a.team != b.team) return a.team < b.team;
    if (a.time != b.time) return a.time < b.time;
    return a.order < b.order;
  });
  WriteCsvRow(out, {"team", "time_sec", "event", "u", "v", "cost", "subject"});
  for (const Row &r : rows) WriteCsvRow(out, r.fields);
}

std::vector<TestScores> ReadTestScores(std::istream &in, std::string_view source,
                                       int max_score) {
  CsvReader reader(in);
  std::vector<std::string> row;
  if (!reader.Next(&row)) {
    throw InputError(std::string(source) + ": missing header row");
  }
  CsvHeader header(row, {"team", "speaker", "pre", "post"}, source);
  std::vector<TestScores> scores;
  while (reader.Next(&row)) {
    if (IsBlankRow(row)) continue;
    const int line = reader.line();
    TestScores s;
    s.team = ParseTeam(Field(row, header.index("team"), source, line), source, line);
    auto speaker = ParseSpeaker(Field(row, header.index("speaker"), source, line));
    if (!speaker || !IsHuman(*speaker)) {
      throw InputError(Where(source, line) + "speaker must be A or B");
    }
    s.speaker = *speaker;
    auto score = [&](const char *column) {
      const std::string &text = Field(row, header.index(column), source, line);
      auto value = ParseInt(text);
      if (!value || *value < 0 || *value > max_score) {
        throw InputError(Where(source, line) + "bad " + column + " score '" + text +
                         "'");
      }
      return static_cast<int>(*value);
    };
    s.pre = score("pre");
    s.post = score("post");
    scores.push_back(s);
  }
  return scores;
}

std::vector<TestScores> LoadTestScores(const std::filesystem::path &path,
                                       int max_score) {
  auto in = OpenInput(path);
  return ReadTestScores(in, path.string(), max_score);
}

void WriteTestScores(std::ostream &out, const std::vector<TestScores> &scores) {
  WriteCsvRow(out, {"team", "speaker", "pre", "post"});
  for (const TestScores &s : scores) {
    WriteCsvRow(out, {std::to_string(s.team), std::string(SpeakerName(s.speaker)),
                      std::to_string(s.pre), std::to_string(s.post)});
  }
}

std::vector<ActionEvent> BuildActionStream(const std::vector<Utterance> &utterances,
                                           const std::vector<EditEvent> &edits,
                                           const std::vector<SubmitEvent> &submits) {
  // Log records in time order; edits before submits at equal times.
  struct LogRecord {
    double time;
    bool is_edit;
    std::size_t index;
  };
  std::vector<LogRecord> log;
  log.reserve(edits.size() + submits.size());
  for (std::size_t i = 0; i < edits.size(); ++i) log.push_back({edits[i].time, true, i});
  for (std::size_t i = 0; i < submits.size(); ++i) {
    log.push_back({submits[i].time, false, i});
  }
  std::stable_sort(log.begin(), log.end(), [](const LogRecord &a, const LogRecord &b) {
    if (a.time != b.time) return a.time < b.time;
    return a.is_edit && !b.is_edit;
  });

  std::vector<std::size_t> says(utterances.size());
  for (std::size_t i = 0; i < says.size(); ++i) says[i] = i;
  std::stable_sort(says.begin(), says.end(), [&](std::size_t a, std::size_t b) {
    return utterances[a].start < utterances[b].start;
  });

  std::vector<ActionEvent> stream;
  stream.reserve(log.size() + says.size());
  int turn = 1;
  int attempt = 1;
  std::size_t edit_count = 0;
  std::size_t li = 0;
  std::size_t si = 0;
  while (li < log.size() || si < says.size()) {
    const bool take_log =
        li < log.size() &&
        (si >= says.size() || log[li].time <= utterances[says[si]].start);
    ActionEvent a;
    a.turn = turn;
    a.attempt = attempt;
    if (take_log) {
      const LogRecord &r = log[li++];
      a.object = r.index;
      a.time = r.time;
      if (r.is_edit) {
        const EditEvent &e = edits[r.index];
        a.verb = e.kind == EditKind::kAdd ? ActionVerb::kAdds : ActionVerb::kRemoves;
        a.subject = e.subject ? *e.subject : (turn % 2 == 1 ? Speaker::kA : Speaker::kB);
        if (++edit_count % 2 == 0) ++turn;
      } else {
        a.verb = ActionVerb::kSubmits;
        ++attempt;
      }
    } else {
      const std::size_t idx = says[si++];
      const Utterance &u = utterances[idx];
      a.verb = ActionVerb::kSays;
      a.object = idx;
      a.time = u.start;
      if (IsHuman(u.speaker)) a.subject = u.speaker;
    }
    stream.push_back(a);
  }
  return stream;
}

double RelativeTime(double time, double duration) {
  if (!(duration > 0)) {
    throw std::invalid_argument("relative time needs a positive team duration");
  }
  if (time < 0 || time > duration) {
    throw std::invalid_argument("time " + FormatDouble(time) +
                                " lies outside the team duration " +
                                FormatDouble(duration));
  }
  return 100.0 * time / duration;
}

double TeamCorpus::Duration() const {
  double last = 0;
  for (const auto &e : edits) last = std::max(last, e.time);
  for (const auto &s : submits) last = std::max(last, s.time);
  for (const auto &s : stops) last = std::max(last, s.time);
  for (const auto &u : utterances) last = std::max(last, u.end);
  return last;
}

Corpus Corpus::Assemble(Network network, std::vector<Utterance> utterances,
                        EventLog log, std::vector<TestScores> scores) {
  Corpus corpus;
  corpus.network = std::move(network);
  auto team = [&](TeamId id) -> TeamCorpus & {
    TeamCorpus &t = corpus.teams[id];
    t.team = id;
    return t;
  };
  for (Utterance &u : utterances) team(u.team).utterances.push_back(std::move(u));
  for (const EditEvent &e : log.edits) team(e.team).edits.push_back(e);
  for (const SubmitEvent &s : log.submits) team(s.team).submits.push_back(s);
  for (const StopEvent &s : log.stops) team(s.team).stops.push_back(s);
  for (const TestScores &s : scores) {
    auto it = corpus.teams.find(s.team);
    if (it == corpus.teams.end()) continue;
    auto &slot = s.speaker == Speaker::kA ? it->second.scores_a : it->second.scores_b;
    if (slot) {
      throw InputError("tests: duplicate scores for team " + std::to_string(s.team) +
                       " speaker " + std::string(SpeakerName(s.speaker)));
    }
    slot = s;
  }
  for (auto &[id, t] : corpus.teams) {
    std::stable_sort(t.utterances.begin(), t.utterances.end(),
                     [](const Utterance &a, const Utterance &b) {
                       return a.start < b.start;
                     });
    AssignTokenOffsets(&t.utterances);
  }
  return corpus;
}

Corpus Corpus::Ingest(const std::filesystem::path &transcripts,
                      const std::filesystem::path &events,
                      const std::filesystem::path &network,
                      const std::filesystem::path &tests) {
  Network net = Network::Load(network);
  auto utterances = LoadTranscript(transcripts);
  auto log = LoadEventLog(events, net);
  auto scores = LoadTestScores(tests);
  return Assemble(std::move(net), std::move(utterances), std::move(log),
                  std::move(scores));
}

Corpus Corpus::LoadDir(const std::filesystem::path &dir) {
  return Ingest(dir / "transcripts.csv", dir / "events.csv", dir / "network.json",
                dir / "tests.csv");
}

void Corpus::SaveDir(const std::filesystem::path &dir) const {
  std::filesystem::create_directories(dir);
  {
    auto out = OpenOutput(dir / "network.json");
    out << network.ToJson();
  }
  std::vector<Utterance> utterances;
  EventLog log;
  std::vector<TestScores> scores;
  for (const auto &[id, t] : teams) {
    utterances.insert(utterances.end(), t.utterances.begin(), t.utterances.end());
    log.edits.insert(log.edits.end(), t.edits.begin(), t.edits.end());
    log.submits.insert(log.submits.end(), t.submits.begin(), t.submits.end());
    log.stops.insert(log.stops.end(), t.stops.begin(), t.stops.end());
    if (t.scores_a) scores.push_back(*t.scores_a);
    if (t.scores_b) scores.push_back(*t.scores_b);
  }
  {
    auto out = OpenOutput(dir / "transcripts.csv");
    WriteTranscript(out, utterances);
  }
  {
    auto out = OpenOutput(dir / "events.csv");
    WriteEventLog(out, log, network);
  }
  {
    auto out = OpenOutput(dir / "tests.csv");
    WriteTestScores(out, scores);
  }
  {
    auto out = OpenOutput(dir / "actions.csv");
    WriteActionTable(out, *this);
  }
}

void WriteActionTable(std::ostream &out, const Corpus &corpus) {
  WriteCsvRow(out, {"team", "subject", "verb", "object", "time", "turn", "attempt"});
  for (const auto &[id, t] : corpus.teams) {
    for (const ActionEvent &a : t.Actions()) {
      std::string object;
      switch (a.verb) {
        case ActionVerb::kSays:
          object = t.utterances[a.object].text;
          break;
        case ActionVerb::kAdds:
        case ActionVerb::kRemoves: {
          const EditEvent &e = t.edits[a.object];
          object = corpus.network.node(e.u).name + "-" + corpus.network.node(e.v).name;
          break;
        }
        case ActionVerb::kSubmits:
          object = std::to_string(t.submits[a.object].cost);
          break;
      }
      WriteCsvRow(out, {std::to_string(id),
                        a.subject ? std::string(SpeakerName(*a.subject)) : "",
                        std::string(VerbName(a.verb)), object, FormatDouble(a.time),
                        std::to_string(a.turn), std::to_string(a.attempt)});
    }
  }
}

}  // namespace align
