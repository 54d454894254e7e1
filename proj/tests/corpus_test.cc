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

#include <functional>
#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "align/error.h"
#include "test_support.h"

namespace align {
namespace {

using testing::DataPath;
using testing::Edit;
using testing::FixtureNetwork;
using testing::Utt;

std::vector<Utterance> Transcript(const std::string &csv) {
  std::istringstream in(csv);
  return ReadTranscript(in, "t.csv");
}

EventLog Events(const std::string &csv) {
  std::istringstream in(csv);
  return ReadEventLog(in, "e.csv", FixtureNetwork());
}

std::string ErrorOf(const std::function<void()> &f) {
  try {
    f();
  } catch (const InputError &e) {
    return e.what();
  }
  return "";
}

TEST(TranscriptTest, OffsetsAreGlobalPerTeam) {
  const auto utts = Transcript(
      "team,speaker,start_sec,end_sec,utterance\n"
      "1,B,2.0,3.0,mount bern\n"
      "1,A,0.0,1.0,uh mount bern\n"
      "2,A,0.0,1.0,Oh.\n");
  ASSERT_EQ(utts.size(), 3u);
  EXPECT_EQ(utts[0].speaker, Speaker::kA);
  EXPECT_EQ(utts[0].token_offset, 0u);
  EXPECT_EQ(utts[1].token_offset, 3u);
  EXPECT_EQ(utts[2].team, 2);
  EXPECT_EQ(utts[2].token_offset, 0u);
  EXPECT_EQ(utts[2].tokens, std::vector<std::string>{"oh"});
}

TEST(TranscriptTest, RobotAcceptedOtherSpeakersRejected) {
  EXPECT_EQ(Transcript("team,speaker,start_sec,end_sec,utterance\n1,I,0,1,hi\n")[0].speaker,
            Speaker::kRobot);
  const std::string msg = ErrorOf([] {
    Transcript("team,speaker,start_sec,end_sec,utterance\n1,A,0,1,x\n1,C,1,2,y\n");
  });
  EXPECT_NE(msg.find("t.csv:3:"), std::string::npos) << msg;
  EXPECT_NE(msg.find("speaker"), std::string::npos) << msg;
}

TEST(TranscriptTest, ValidationErrorsNameTheLine) {
  EXPECT_NE(ErrorOf([] {
              Transcript("team,speaker,start_sec,end_sec,utterance\n1,A,5,4,x\n");
            }).find("t.csv:2:"),
            std::string::npos);
  EXPECT_NE(ErrorOf([] {
              Transcript("team,speaker,start_sec,end_sec,utterance\n1,A,zero,4,x\n");
            }).find("t.csv:2:"),
            std::string::npos);
  EXPECT_NE(ErrorOf([] { Transcript("team,speaker,utterance\n"); }).find("start_sec"),
            std::string::npos);
}

TEST(EventLogTest, ParsesEditsSubmitsAndStops) {
  const EventLog log = Events(
      "team,time_sec,event,u,v,cost,subject\n"
      "1,3.0,add,Gallen,Davos,,B\n"
      "1,1.0,remove,Mount Zurich,Bern,,\n"
      "1,4.0,submit,,,23,\n"
      "1,5.0,stop,,,,\n");
  ASSERT_EQ(log.edits.size(), 2u);
  EXPECT_EQ(log.edits[0].kind, EditKind::kRemove);
  EXPECT_FALSE(log.edits[0].subject.has_value());
  EXPECT_EQ(log.edits[1].u, 3);  // canonical: Davos(3) < Gallen(6)
  EXPECT_EQ(log.edits[1].v, 6);
  EXPECT_EQ(log.edits[1].subject, Speaker::kB);
  ASSERT_EQ(log.submits.size(), 1u);
  EXPECT_EQ(log.submits[0].cost, 23);
  EXPECT_EQ(log.stops.size(), 1u);
}

TEST(EventLogTest, RejectsBadRecordsWithLineNumbers) {
  const std::string head = "team,time_sec,event,u,v,cost\n1,0,add,Gallen,Davos,\n";
  EXPECT_NE(ErrorOf([&] { Events(head + "1,1,add,Geneva,Bern,\n"); }).find("e.csv:3:"),
            std::string::npos);
  EXPECT_NE(ErrorOf([&] { Events(head + "1,1,add,Luzern,Montreux,\n"); })
                .find("not a network edge"),
            std::string::npos);
  EXPECT_NE(ErrorOf([&] { Events(head + "1,1,submit,,,22\n"); }).find("below the optimal"),
            std::string::npos);
  EXPECT_NE(ErrorOf([&] { Events(head + "1,1,draw,Gallen,Davos,\n"); }).find("e.csv:3:"),
            std::string::npos);
  EXPECT_NE(ErrorOf([&] {
              Events("team,time_sec,event,u,v,cost,subject\n1,1,add,Gallen,Davos,,I\n");
            }).find("subject"),
            std::string::npos);
}

TEST(TestScoresTest, RangeChecked) {
  std::istringstream ok("team,speaker,pre,post\n1,A,3,8\n");
  EXPECT_EQ(ReadTestScores(ok, "s.csv")[0].post, 8);
  std::istringstream bad("team,speaker,pre,post\n1,A,3,11\n");
  EXPECT_THROW(ReadTestScores(bad, "s.csv"), InputError);
  std::istringstream robot("team,speaker,pre,post\n1,I,3,4\n");
  EXPECT_THROW(ReadTestScores(robot, "s.csv"), InputError);
}

std::vector<int> TurnsOf(const std::vector<ActionEvent> &stream, ActionVerb verb) {
  std::vector<int> turns;
  for (const ActionEvent &a : stream) {
    if (a.verb == verb) turns.push_back(a.turn);
  }
  return turns;
}

TEST(ActionStreamTest, TurnLastsTwoEdits) {
  const std::vector<EditEvent> edits = {
      Edit(1, EditKind::kAdd, "Gallen", "Davos"), Edit(2, EditKind::kAdd, "Zurich", "Davos"),
      Edit(3, EditKind::kAdd, "Basel", "Bern"), Edit(4, EditKind::kAdd, "Basel", "Zurich")};
  const auto stream = BuildActionStream({}, edits, {});
  EXPECT_EQ(TurnsOf(stream, ActionVerb::kAdds), (std::vector<int>{1, 1, 2, 2}));
  // Unrecorded subjects follow the visual view: A on odd turns, B on even.
  EXPECT_EQ(stream[0].subject, Speaker::kA);
  EXPECT_EQ(stream[2].subject, Speaker::kB);
}

TEST(ActionStreamTest, SubmissionStartsNewAttempt) {
  const std::vector<EditEvent> edits = {Edit(1, EditKind::kAdd, "Gallen", "Davos"),
                                        Edit(2, EditKind::kAdd, "Zurich", "Davos"),
                                        Edit(4, EditKind::kAdd, "Basel", "Bern")};
  const auto stream = BuildActionStream({}, edits, {{1, 3.0, 30}});
  ASSERT_EQ(stream.size(), 4u);
  EXPECT_EQ(stream[2].verb, ActionVerb::kSubmits);
  EXPECT_FALSE(stream[2].subject.has_value());
  EXPECT_EQ(stream[3].attempt, 2);
  EXPECT_EQ(stream[3].turn, 2);
}

TEST(ActionStreamTest, UtteranceTakesCountersAtItsStart) {
  const std::vector<EditEvent> edits = {Edit(1, EditKind::kAdd, "Gallen", "Davos"),
                                        Edit(2, EditKind::kAdd, "Zurich", "Davos"),
                                        Edit(6, EditKind::kAdd, "Basel", "Bern")};
  // Starts between the 2nd and 3rd edit, ends after the 3rd.
  const auto utts = testing::WithOffsets({Utt(Speaker::kA, 3.0, 7.0, "go to mount basel")});
  const auto stream = BuildActionStream(utts, edits, {});
  EXPECT_EQ(TurnsOf(stream, ActionVerb::kSays), std::vector<int>{2});
}

TEST(ActionStreamTest, LogRecordsPrecedeUtterancesAtEqualTimes) {
  const std::vector<EditEvent> edits = {Edit(2, EditKind::kAdd, "Gallen", "Davos"),
                                        Edit(2, EditKind::kAdd, "Zurich", "Davos")};
  const auto utts = testing::WithOffsets({Utt(Speaker::kB, 2.0, 3.0, "okay")});
  const auto stream = BuildActionStream(utts, edits, {{1, 2.0, 25}});
  ASSERT_EQ(stream.size(), 4u);
  EXPECT_EQ(stream[0].verb, ActionVerb::kAdds);
  EXPECT_EQ(stream[1].verb, ActionVerb::kAdds);
  EXPECT_EQ(stream[2].verb, ActionVerb::kSubmits);
  EXPECT_EQ(stream[3].verb, ActionVerb::kSays);
  EXPECT_EQ(stream[3].turn, 2);
  EXPECT_EQ(stream[3].attempt, 2);
}

// #turn increments = floor(#edits / 2), #attempt increments = #submits.
TEST(ActionStreamTest, CounterPropertyOnRandomStreams) {
  std::mt19937 rng(7);
  for (int iter = 0; iter < 300; ++iter) {
    const testing::RandomStream s = testing::RandomActionStream(rng);
    const auto stream = BuildActionStream(s.utterances, s.edits, s.submits);
    ASSERT_EQ(stream.size(), s.utterances.size() + s.edits.size() + s.submits.size());
    int edits = 0, submits = 0;
    for (std::size_t i = 0; i < stream.size(); ++i) {
      const ActionEvent &a = stream[i];
      EXPECT_EQ(a.turn, 1 + edits / 2);
      EXPECT_EQ(a.attempt, 1 + submits);
      if (i > 0) EXPECT_LE(stream[i - 1].time, a.time);
      if (a.verb == ActionVerb::kAdds || a.verb == ActionVerb::kRemoves) ++edits;
      if (a.verb == ActionVerb::kSubmits) ++submits;
    }
    EXPECT_EQ(edits, static_cast<int>(s.edits.size()));
    EXPECT_EQ(submits, static_cast<int>(s.submits.size()));
  }
}

TEST(RelativeTimeTest, PercentOfDuration) {
  EXPECT_DOUBLE_EQ(RelativeTime(25, 100), 25.0);
  EXPECT_DOUBLE_EQ(RelativeTime(0, 80), 0.0);
  EXPECT_DOUBLE_EQ(RelativeTime(80, 80), 100.0);
  EXPECT_THROW(RelativeTime(1, 0), std::invalid_argument);
  EXPECT_THROW(RelativeTime(81, 80), std::invalid_argument);
  EXPECT_THROW(RelativeTime(-1, 80), std::invalid_argument);
}

TEST(CorpusTest, SampleCorpusAssembles) {
  const Corpus corpus = Corpus::LoadDir(DataPath("sample"));
  ASSERT_EQ(corpus.teams.size(), 4u);
  const TeamCorpus &t17 = corpus.teams.at(17);
  EXPECT_EQ(t17.edits.size(), 7u);
  EXPECT_EQ(t17.submits.size(), 1u);
  ASSERT_TRUE(t17.scores_a && t17.scores_b);
  EXPECT_EQ(t17.scores_a->pre, 3);
  EXPECT_DOUBLE_EQ(t17.Duration(), 42.0);
  EXPECT_DOUBLE_EQ(corpus.teams.at(10).Duration(), 24.0);
}

TEST(CorpusTest, SaveLoadRoundTrip) {
  const Corpus corpus = Corpus::LoadDir(DataPath("sample"));
  const auto dir = std::filesystem::temp_directory_path() / "align_roundtrip_test";
  std::filesystem::remove_all(dir);
  corpus.SaveDir(dir);
  EXPECT_TRUE(std::filesystem::exists(dir / "actions.csv"));
  const Corpus again = Corpus::LoadDir(dir);
  ASSERT_EQ(again.teams.size(), corpus.teams.size());
  for (const auto &[id, team] : corpus.teams) {
    const TeamCorpus &other = again.teams.at(id);
    ASSERT_EQ(team.utterances.size(), other.utterances.size());
    for (std::size_t i = 0; i < team.utterances.size(); ++i) {
      EXPECT_EQ(team.utterances[i].tokens, other.utterances[i].tokens);
      EXPECT_EQ(team.utterances[i].token_offset, other.utterances[i].token_offset);
      EXPECT_EQ(team.utterances[i].text, other.utterances[i].text);
    }
    const auto a = team.Actions();
    const auto b = other.Actions();
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      EXPECT_EQ(a[i].verb, b[i].verb);
      EXPECT_EQ(a[i].subject, b[i].subject);
      EXPECT_EQ(a[i].turn, b[i].turn);
      EXPECT_EQ(a[i].attempt, b[i].attempt);
      EXPECT_EQ(a[i].time, b[i].time);
    }
  }
  std::filesystem::remove_all(dir);
}

TEST(CorpusTest, TokenNumberingIsABijection) {
  const Corpus corpus = Corpus::LoadDir(DataPath("sample"));
  for (const auto &[id, team] : corpus.teams) {
    std::size_t next = 0;
    for (const Utterance &u : team.utterances) {
      EXPECT_EQ(u.token_offset, next);
      next += u.tokens.size();
    }
  }
}

}  // namespace
}  // namespace align
