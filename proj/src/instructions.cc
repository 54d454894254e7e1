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

#include <algorithm>

#include "align/csv.h"

namespace align {

const std::set<std::string> &AddVerbs() {
  static const std::set<std::string> kAdd = {"add", "build", "connect",
                                             "do",  "go",    "put"};
  return kAdd;
}

const std::set<std::string> &RemoveVerbs() {
  static const std::set<std::string> kRemove = {"away",  "cut",    "delete",
                                                "erase", "remove", "rub"};
  return kRemove;
}

std::vector<Entity> RecogniseEntities(const std::vector<std::string> &tokens,
                                      const std::set<std::string> &node_lexicon) {
  std::vector<Entity> entities;
  for (const std::string &t : tokens) {
    if (node_lexicon.count(t)) {
      entities.push_back({t, EntityLabel::kNode});
    } else if (AddVerbs().count(t)) {
      entities.push_back({t, EntityLabel::kAdd});
    } else if (RemoveVerbs().count(t)) {
      entities.push_back({t, EntityLabel::kRemove});
    }
  }
  return entities;
}

std::string FormatInstruction(const Instruction &instruction) {
  std::string out = instruction.verb == EditVerb::kAdd ? "Add(" : "Remove(";
  out += instruction.u;
  out += ',';
  out += instruction.v ? *instruction.v : "?";
  out += ')';
  return out;
}

std::vector<Instruction> RecogniseInstructions(const std::vector<std::string> &tokens,
                                               const std::set<std::string> &node_lexicon) {
  struct Draft {
    std::optional<EditVerb> verb;
    std::optional<std::string> u;
  };
  std::vector<Instruction> out;
  Draft draft;

  auto default_verb = [&]() {
    if (draft.verb) return *draft.verb;
    return out.empty() ? EditVerb::kAdd : out.back().verb;
  };

  for (const Entity &e : RecogniseEntities(tokens, node_lexicon)) {
    if (e.label == EntityLabel::kAdd || e.label == EntityLabel::kRemove) {
      if (draft.verb) {
        if (draft.u) out.push_back({*draft.verb, *draft.u, std::nullopt, {}, {}});
        draft.u.reset();
      }
      draft.verb = e.label == EntityLabel::kAdd ? EditVerb::kAdd : EditVerb::kRemove;
    } else if (!draft.u) {
      draft.u = e.token;
    } else if (*draft.u != e.token) {
      out.push_back({default_verb(), *draft.u, e.token, {}, {}});
      draft = Draft{};
    }
  }
  if (draft.u) out.push_back({default_verb(), *draft.u, std::nullopt, {}, {}});
  return out;
}

bool CheckMatch(const Instruction &instruction, const EditAction &action) {
  if (instruction.verb != action.verb) return false;
  auto on_edge = [&](const std::string &node) {
    return node == action.u || node == action.v;
  };
  if (instruction.partial()) return on_edge(instruction.u);
  return on_edge(instruction.u) && on_edge(*instruction.v);
}

std::string_view VerdictName(Verdict verdict) {
  switch (verdict) {
    case Verdict::kMatch: return "Match";
    case Verdict::kMismatch: return "Mismatch";
    case Verdict::kNonmatch: return "Nonmatch";
  }
  return "?";
}

MatchResult MatchInstructionsToActions(const std::vector<ActionEvent> &stream,
                                       const std::vector<Utterance> &utterances,
                                       const std::vector<EditEvent> &edits,
                                       const Network &network,
                                       const MatcherOptions &options) {
  MatchResult result;
  std::vector<Instruction> pending;
  int turn = 1;
  int attempt = 1;

  for (std::size_t index = 0; index < stream.size(); ++index) {
    const ActionEvent &a = stream[index];
    AnnotatedAction annotated;
    annotated.action = a;

    // A view swap or a submission starts a new period.
    if (a.turn != turn || a.attempt != attempt) {
      pending.clear();
      turn = a.turn;
      attempt = a.attempt;
    }

    if (a.verb == ActionVerb::kSays) {
      if (a.subject) {
        for (Instruction i :
             RecogniseInstructions(utterances[a.object].tokens, network.lexicon())) {
          i.agent = a.subject;
          i.source_utterance = a.object;
          annotated.instructions.push_back(i);
          pending.push_back(std::move(i));
        }
      }
    } else if (a.verb == ActionVerb::kAdds || a.verb == ActionVerb::kRemoves) {
      const EditEvent &e = edits[a.object];
      const EditAction action{a.verb == ActionVerb::kAdds ? EditVerb::kAdd : EditVerb::kRemove,
                              network.TokenOf(e.u), network.TokenOf(e.v)};
      const Speaker actor = a.subject.value_or(Speaker::kA);

      MatchRecord record;
      record.actor = actor;
      record.edit = a.object;
      record.action = index;
      record.time = a.time;

      const Instruction *last_other = nullptr;
      const Instruction *matched = nullptr;
      for (const Instruction &p : pending) {
        if (p.agent == actor) continue;
        last_other = &p;
        if (CheckMatch(p, action)) matched = &p;
      }
      if (last_other == nullptr) {
        record.verdict = Verdict::kNonmatch;
      } else {
        record.verdict = matched ? Verdict::kMatch : Verdict::kMismatch;
        record.instruction = matched ? *matched : *last_other;
        if (options.clear_on_verdict) {
          pending.clear();
        } else {
          std::erase_if(pending,
                        [&](const Instruction &p) { return CheckMatch(p, action); });
        }
      }
      annotated.record = record;
      result.records.push_back(std::move(record));
    }
    annotated.pending = pending;
    result.annotated.push_back(std::move(annotated));
  }
  return result;
}

std::vector<double> VerdictTimes(const std::vector<MatchRecord> &records,
                                 Verdict verdict) {
  std::vector<double> times;
  for (const MatchRecord &r : records) {
    if (r.verdict == verdict) times.push_back(r.time);
  }
  return times;
}

std::size_t CountVerdicts(const std::vector<MatchRecord> &records, Verdict verdict) {
  return static_cast<std::size_t>(
      std::count_if(records.begin(), records.end(),
                    [&](const MatchRecord &r) { return r.verdict == verdict; }));
}

std::size_t CountVerdictUtterances(const std::vector<MatchRecord> &records,
                                   Verdict verdict) {
  std::set<std::size_t> sources;
  for (const MatchRecord &r : records) {
    if (r.verdict == verdict && r.instruction && r.instruction->source_utterance) {
      sources.insert(*r.instruction->source_utterance);
    }
  }
  return sources.size();
}

void WriteAnnotatedHeader(std::ostream &out) {
  WriteCsvRow(out, {"team", "subject", "verb", "object", "time", "turn", "attempt",
                    "instructions", "verdict", "matched_instruction", "matched_agent"});
}

void WriteAnnotatedRows(std::ostream &out, TeamId team, const MatchResult &result,
                        const std::vector<Utterance> &utterances,
                        const std::vector<EditEvent> &edits,
                        const std::vector<SubmitEvent> &submits,
                        const Network &network) {
  for (const AnnotatedAction &row : result.annotated) {
    const ActionEvent &a = row.action;
    std::string object;
    if (a.verb == ActionVerb::kSays) {
      object = utterances[a.object].text;
    } else if (a.verb == ActionVerb::kSubmits) {
      object = std::to_string(submits[a.object].cost);
    } else {
      const EditEvent &e = edits[a.object];
      object = network.node(e.u).name + "-" + network.node(e.v).name;
    }
    std::string instructions;
    for (const Instruction &i : row.instructions) {
      if (!instructions.empty()) instructions += ';';
      instructions += FormatInstruction(i);
    }
    std::string verdict = "-";
    std::string matched;
    std::string agent;
    if (row.record) {
      verdict = std::string(VerdictName(row.record->verdict));
      if (row.record->instruction) {
        matched = FormatInstruction(*row.record->instruction);
        if (row.record->instruction->agent) {
          agent = std::string(SpeakerName(*row.record->instruction->agent));
        }
      }
    }
    WriteCsvRow(out, {std::to_string(team),
                      a.subject ? std::string(SpeakerName(*a.subject)) : "",
                      std::string(VerbName(a.verb)), object, FormatDouble(a.time),
                      std::to_string(a.turn), std::to_string(a.attempt), instructions,
                      verdict, matched, agent});
  }
}

}  // namespace align
