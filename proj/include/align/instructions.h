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

// Behavioural alignment: rule-based instruction recognition and the
// pending-instruction matcher that labels every edit as a match, mismatch
// or nonmatch of the other learner's instructions.

#ifndef ALIGN_INSTRUCTIONS_H_
#define ALIGN_INSTRUCTIONS_H_

#include <optional>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include "align/corpus.h"
#include "align/network.h"

namespace align {

enum class EntityLabel { kNode, kAdd, kRemove };

struct Entity {
  std::string token;
  EntityLabel label = EntityLabel::kNode;

  bool operator==(const Entity &) const = default;
};

// Verb lexicons and the node lexicon used by RecogniseEntities.
const std::set<std::string> &AddVerbs();
const std::set<std::string> &RemoveVerbs();

std::vector<Entity> RecogniseEntities(const std::vector<std::string> &tokens,
                                      const std::set<std::string> &node_lexicon);

enum class EditVerb { kAdd, kRemove };

struct Instruction {
  EditVerb verb = EditVerb::kAdd;
  std::string u;
  std::optional<std::string> v;  // unset for partial instructions
  std::optional<Speaker> agent;
  // Index of the utterance the instruction was recognised in, when known.
  std::optional<std::size_t> source_utterance;

  bool partial() const { return !v.has_value(); }
  bool operator==(const Instruction &) const = default;
};

// "Add(gallen,?)", "Remove(bern,zurich)".
std::string FormatInstruction(const Instruction &instruction);

// Left-to-right scan over the entities keeping one draft instruction. A
// verb entity flushes a draft that already has a verb and a first node,
// then starts a new draft with that verb. A node fills u, then v (unless it
// repeats u), which completes the instruction; a missing verb defaults to
// Add for the first instruction of the utterance and to the previous
// instruction's verb afterwards. A draft holding u at the end of the
// utterance is emitted as a partial instruction.
std::vector<Instruction> RecogniseInstructions(const std::vector<std::string> &tokens,
                                               const std::set<std::string> &node_lexicon);

// An edit seen by the matcher: verb plus the two node tokens.
struct EditAction {
  EditVerb verb = EditVerb::kAdd;
  std::string u;
  std::string v;
};

// Same verb, and u (partial) or both u and v (full) among the edge's ends.
bool CheckMatch(const Instruction &instruction, const EditAction &action);

enum class Verdict { kMatch, kMismatch, kNonmatch };
std::string_view VerdictName(Verdict verdict);

struct MatchRecord {
  Verdict verdict = Verdict::kNonmatch;
  Speaker actor = Speaker::kA;
  std::size_t edit = 0;    // index into the team's edit list
  std::size_t action = 0;  // index into the action stream
  std::optional<Instruction> instruction;  // absent for nonmatches
  double time = 0;
};

struct MatcherOptions {
  // Also empty the pending list after every match or mismatch.
  bool clear_on_verdict = false;
};

struct AnnotatedAction {
  ActionEvent action;
  std::vector<Instruction> instructions;  // recognised in this utterance
  std::vector<Instruction> pending;       // pending list after this action
  std::optional<MatchRecord> record;      // set for edits
};

struct MatchResult {
  std::vector<MatchRecord> records;
  std::vector<AnnotatedAction> annotated;
};

// Runs the pending-instruction state machine over one team's action stream.
MatchResult MatchInstructionsToActions(const std::vector<ActionEvent> &stream,
                                       const std::vector<Utterance> &utterances,
                                       const std::vector<EditEvent> &edits,
                                       const Network &network,
                                       const MatcherOptions &options = {});

std::vector<double> VerdictTimes(const std::vector<MatchRecord> &records,
                                 Verdict verdict);
std::size_t CountVerdicts(const std::vector<MatchRecord> &records, Verdict verdict);

// Number of distinct instruction source utterances bound by records of the
// given verdict.
std::size_t CountVerdictUtterances(const std::vector<MatchRecord> &records,
                                   Verdict verdict);

// Annotated corpus CSV: team, subject, verb, object, time, turn, attempt,
// instructions, verdict, matched_instruction, matched_agent.
void WriteAnnotatedHeader(std::ostream &out);
void WriteAnnotatedRows(std::ostream &out, TeamId team, const MatchResult &result,
                        const std::vector<Utterance> &utterances,
                        const std::vector<EditEvent> &edits,
                        const std::vector<SubmitEvent> &submits,
                        const Network &network);

}  // namespace align

#endif  // ALIGN_INSTRUCTIONS_H_
