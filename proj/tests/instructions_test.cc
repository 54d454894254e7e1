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

#include "align/instructions.h"

#include <random>
#include <sstream>

#include <gtest/gtest.h>

#include "align/tokenize.h"
#include "test_support.h"

namespace align {
namespace {

using testing::DataPath;
using testing::FixtureNetwork;

std::vector<std::string> Recognise(const std::string &text) {
  std::vector<std::string> out;
  for (const Instruction &i : RecogniseInstructions(Tokenize(text), FixtureNetwork().lexicon())) {
    out.push_back(FormatInstruction(i));
  }
  return out;
}

using Strings = std::vector<std::string>;

TEST(RecogniseEntitiesTest, LabelsVerbsAndNodes) {
  const auto entities =
      RecogniseEntities(Tokenize("No lets do Mount Davos to, St Gallen"), FixtureNetwork().lexicon());
  const std::vector<Entity> expected = {{"do", EntityLabel::kAdd},
                                        {"davos", EntityLabel::kNode},
                                        {"gallen", EntityLabel::kNode}};
  EXPECT_EQ(entities, expected);
  EXPECT_TRUE(RemoveVerbs().count("rub"));
  EXPECT_TRUE(AddVerbs().count("build"));
}

TEST(RecogniseInstructionsTest, ExcerptUtterances) {
  EXPECT_EQ(Recognise("Maybe we start from, Mount Zermatt?"), Strings{"Add(zermatt,?)"});
  EXPECT_EQ(Recognise("No lets do Mount Davos to, where do you wanna go?"),
            Strings{"Add(davos,?)"});
  EXPECT_EQ(Recognise("... to Mount, St Gallen."), Strings{"Add(gallen,?)"});
  EXPECT_EQ(Recognise("Yeah, and then go to Mount Zurich."), Strings{"Add(zurich,?)"});
  EXPECT_EQ(Recognise("Then do Mount Bern to Mount Zermatt."), Strings{"Add(bern,zermatt)"});
  EXPECT_EQ(Recognise("Mount Bern to Mount Interlaken?"), Strings{"Add(bern,interlaken)"});
  EXPECT_TRUE(Recognise("Oh I think we have to connect all of them.").empty());
}

TEST(RecogniseInstructionsTest, VerbFlushesPartialDraft) {
  EXPECT_EQ(Recognise("erase mount zurich connect mount bern to mount gallen"),
            (Strings{"Remove(zurich,?)", "Add(bern,gallen)"}));
}

TEST(RecogniseInstructionsTest, VerbCarriesOverAfterCompletedInstruction) {
  EXPECT_EQ(Recognise("remove mount bern and mount zurich and mount basel"),
            (Strings{"Remove(bern,zurich)", "Remove(basel,?)"}));
  EXPECT_EQ(Recognise("So if we erase Mount Zurich or Mount Ber- to Mount Bern or Mount Zurich "
                      "to Mount Gallen?"),
            (Strings{"Remove(zurich,bern)", "Remove(zurich,gallen)"}));
}

TEST(RecogniseInstructionsTest, LateVerbKeepsFirstNode) {
  EXPECT_EQ(Recognise("mount bern erase mount zurich"), Strings{"Remove(bern,zurich)"});
}

TEST(RecogniseInstructionsTest, RepeatedNodeDoesNotComplete) {
  EXPECT_EQ(Recognise("mount bern to mount bern"), Strings{"Add(bern,?)"});
  EXPECT_TRUE(Recognise("").empty());
  EXPECT_TRUE(Recognise("connect erase").empty());
}

EditAction Act(EditVerb verb, const std::string &u, const std::string &v) { return {verb, u, v}; }

TEST(CheckMatchTest, PartialAndFullInstructions) {
  const Instruction partial{EditVerb::kAdd, "gallen", std::nullopt, {}, {}};
  const Instruction full{EditVerb::kAdd, "bern", "zermatt", {}, {}};
  EXPECT_TRUE(CheckMatch(partial, Act(EditVerb::kAdd, "davos", "gallen")));
  EXPECT_FALSE(CheckMatch(partial, Act(EditVerb::kRemove, "davos", "gallen")));
  EXPECT_FALSE(CheckMatch(partial, Act(EditVerb::kAdd, "luzern", "interlaken")));
  EXPECT_TRUE(CheckMatch(full, Act(EditVerb::kAdd, "zermatt", "bern")));
  EXPECT_FALSE(CheckMatch(full, Act(EditVerb::kAdd, "interlaken", "bern")));
}

TEST(CheckMatchTest, SymmetricInEdgeOrientation) {
  const auto &lex = FixtureNetwork().lexicon();
  const std::vector<std::string> nodes(lex.begin(), lex.end());
  std::mt19937 rng(1);
  std::uniform_int_distribution<std::size_t> pick(0, nodes.size() - 1);
  std::uniform_int_distribution<int> coin(0, 1);
  for (int i = 0; i < 2000; ++i) {
    Instruction ins{coin(rng) ? EditVerb::kAdd : EditVerb::kRemove, nodes[pick(rng)],
                    std::nullopt, {}, {}};
    if (coin(rng)) ins.v = nodes[pick(rng)];
    const EditVerb verb = coin(rng) ? EditVerb::kAdd : EditVerb::kRemove;
    const std::string a = nodes[pick(rng)], b = nodes[pick(rng)];
    EXPECT_EQ(CheckMatch(ins, Act(verb, a, b)), CheckMatch(ins, Act(verb, b, a)));
  }
}

struct Row {
  Verdict verdict;
  Speaker actor;
  std::string instruction;  // empty for nonmatches
  std::optional<Speaker> agent;
};

std::vector<Row> Rows(const MatchResult &result) {
  std::vector<Row> rows;
  for (const MatchRecord &r : result.records) {
    rows.push_back({r.verdict, r.actor, r.instruction ? FormatInstruction(*r.instruction) : "",
                    r.instruction ? r.instruction->agent : std::nullopt});
  }
  return rows;
}

void ExpectRows(const std::vector<Row> &actual, const std::vector<Row> &expected) {
  ASSERT_EQ(actual.size(), expected.size());
  for (std::size_t i = 0; i < actual.size(); ++i) {
    EXPECT_EQ(actual[i].verdict, expected[i].verdict) << "record " << i;
    EXPECT_EQ(actual[i].actor, expected[i].actor) << "record " << i;
    EXPECT_EQ(actual[i].instruction, expected[i].instruction) << "record " << i;
    EXPECT_EQ(actual[i].agent, expected[i].agent) << "record " << i;
  }
}

MatchResult RunTeam(const Corpus &corpus, TeamId team, bool clear_on_verdict = false) {
  const TeamCorpus &t = corpus.teams.at(team);
  return MatchInstructionsToActions(t.Actions(), t.utterances, t.edits, corpus.network,
                                    {clear_on_verdict});
}

constexpr auto A = Speaker::kA;
constexpr auto B = Speaker::kB;

class ExcerptTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() { corpus_ = new Corpus(Corpus::LoadDir(DataPath("sample"))); }
  static void TearDownTestSuite() { delete corpus_; }
  static Corpus *corpus_;
};
Corpus *ExcerptTest::corpus_ = nullptr;

TEST_F(ExcerptTest, Team10NegotiatedPartialMatch) {
  const MatchResult result = RunTeam(*corpus_, 10);
  // says, says, says, adds
  ASSERT_GE(result.annotated.size(), 4u);
  auto said = [&](std::size_t i) {
    Strings s;
    for (const Instruction &ins : result.annotated[i].instructions) s.push_back(FormatInstruction(ins));
    return s;
  };
  EXPECT_EQ(said(0), Strings{"Add(zermatt,?)"});
  EXPECT_EQ(result.annotated[0].instructions[0].agent, A);
  EXPECT_EQ(said(1), Strings{"Add(davos,?)"});
  EXPECT_EQ(result.annotated[1].instructions[0].agent, B);
  EXPECT_EQ(said(2), Strings{"Add(gallen,?)"});
  const AnnotatedAction &adds = result.annotated[3];
  ASSERT_TRUE(adds.record.has_value());
  EXPECT_EQ(adds.record->verdict, Verdict::kMatch);
  EXPECT_EQ(adds.record->actor, B);
  EXPECT_EQ(FormatInstruction(*adds.record->instruction), "Add(gallen,?)");
  EXPECT_EQ(adds.record->instruction->agent, A);
  // Zermatt stays pending; B's own Davos instruction is consumed.
  ASSERT_EQ(adds.pending.size(), 1u);
  EXPECT_EQ(FormatInstruction(adds.pending[0]), "Add(zermatt,?)");
  ExpectRows(Rows(result), {{Verdict::kMatch, B, "Add(gallen,?)", A},
                            {Verdict::kMatch, B, "Add(davos,zurich)", A},
                            {Verdict::kMatch, A, "Add(basel,?)", B},
                            {Verdict::kMatch, A, "Add(bern,?)", B}});
}

TEST_F(ExcerptTest, Team17MatchesAndMismatch) {
  ExpectRows(Rows(RunTeam(*corpus_, 17)),
             {{Verdict::kNonmatch, B, "", std::nullopt},
              {Verdict::kNonmatch, B, "", std::nullopt},
              {Verdict::kNonmatch, A, "", std::nullopt},
              {Verdict::kMatch, B, "Add(basel,?)", A},
              {Verdict::kMatch, B, "Add(zurich,?)", A},
              {Verdict::kNonmatch, B, "", std::nullopt},
              {Verdict::kMismatch, B, "Add(bern,zermatt)", A}});
}

TEST_F(ExcerptTest, Team20NonmatchAndMismatch) {
  ExpectRows(Rows(RunTeam(*corpus_, 20)),
             {{Verdict::kNonmatch, A, "", std::nullopt},
              {Verdict::kNonmatch, A, "", std::nullopt},
              {Verdict::kMismatch, B, "Add(gallen,?)", A},
              {Verdict::kMismatch, B, "Add(gallen,?)", A},
              {Verdict::kNonmatch, A, "", std::nullopt}});
}

// The pending Gallen instruction survives a mismatch unless the list is
// emptied after every verdict; only then is Luzern-Zurich a nonmatch.
TEST_F(ExcerptTest, Team20ClearOnVerdict) {
  ExpectRows(Rows(RunTeam(*corpus_, 20, true)),
             {{Verdict::kNonmatch, A, "", std::nullopt},
              {Verdict::kNonmatch, A, "", std::nullopt},
              {Verdict::kMismatch, B, "Add(gallen,?)", A},
              {Verdict::kNonmatch, B, "", std::nullopt},
              {Verdict::kNonmatch, A, "", std::nullopt}});
}

TEST_F(ExcerptTest, Team28RemoveInstructionAndAttemptClearing) {
  ExpectRows(Rows(RunTeam(*corpus_, 28)), {{Verdict::kMatch, B, "Remove(zurich,bern)", A},
                                           {Verdict::kMatch, B, "Add(gallen,davos)", A},
                                           {Verdict::kMatch, A, "Add(basel,zurich)", B},
                                           {Verdict::kMatch, A, "Add(luzern,zurich)", B}});
}

TEST_F(ExcerptTest, VerdictCounts) {
  const MatchResult r20 = RunTeam(*corpus_, 20);
  EXPECT_EQ(CountVerdicts(r20.records, Verdict::kMismatch), 2u);
  EXPECT_EQ(CountVerdicts(r20.records, Verdict::kNonmatch), 3u);
  // Both mismatches bind the same instruction utterance.
  EXPECT_EQ(CountVerdictUtterances(r20.records, Verdict::kMismatch), 1u);
  EXPECT_EQ(VerdictTimes(r20.records, Verdict::kMismatch), (std::vector<double>{15, 16}));
  EXPECT_TRUE(VerdictTimes(r20.records, Verdict::kMatch).empty());
}

TEST_F(ExcerptTest, AnnotatedTable) {
  const TeamCorpus &t = corpus_->teams.at(10);
  std::ostringstream out;
  WriteAnnotatedHeader(out);
  WriteAnnotatedRows(out, 10, RunTeam(*corpus_, 10), t.utterances, t.edits, t.submits,
                     corpus_->network);
  const std::string text = out.str();
  EXPECT_EQ(text.substr(0, text.find('\n')),
            "team,subject,verb,object,time,turn,attempt,instructions,verdict,"
            "matched_instruction,matched_agent");
  EXPECT_NE(text.find("10,B,adds,Davos-Gallen,8,1,1,,Match,\"Add(gallen,?)\",A"),
            std::string::npos)
      << text;
  EXPECT_NE(text.find("10,,submits,23,24,3,1,,-,,"), std::string::npos) << text;
}

void CheckAgainstOracle(bool clear_on_verdict, unsigned seed) {
  std::mt19937 rng(seed);
  const Network &net = FixtureNetwork();
  for (int iter = 0; iter < 500; ++iter) {
    const testing::RandomStream s = testing::RandomActionStream(rng);
    const auto stream = BuildActionStream(s.utterances, s.edits, s.submits);
    const MatchResult result =
        MatchInstructionsToActions(stream, s.utterances, s.edits, net, {clear_on_verdict});
    const auto oracle = testing::ReplayMatcher(stream, s.utterances, s.edits, net, clear_on_verdict);
    ASSERT_EQ(result.records.size(), s.edits.size());
    ASSERT_EQ(oracle.size(), result.records.size());
    for (std::size_t i = 0; i < oracle.size(); ++i) {
      const MatchRecord &r = result.records[i];
      EXPECT_EQ(r.verdict, oracle[i].verdict) << "iteration " << iter;
      EXPECT_EQ(r.actor, oracle[i].actor);
      EXPECT_EQ(r.instruction, oracle[i].instruction);
      if (r.instruction) {
        EXPECT_NE(r.instruction->agent, r.actor);  // never self-matched
        const ActionEvent &edit = stream[r.action];
        // The instruction was said in the edit's turn and attempt.
        for (const ActionEvent &a : stream) {
          if (a.verb == ActionVerb::kSays && a.object == *r.instruction->source_utterance) {
            EXPECT_EQ(a.turn, edit.turn);
            EXPECT_EQ(a.attempt, edit.attempt);
          }
        }
      }
    }
  }
}

TEST(MatcherTest, EqualsReplayOracle) { CheckAgainstOracle(false, 99); }
TEST(MatcherTest, EqualsReplayOracleWithClearOnVerdict) { CheckAgainstOracle(true, 100); }

}  // namespace
}  // namespace align
