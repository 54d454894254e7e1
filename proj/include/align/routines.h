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

// Verbal alignment: shared token sequences ("routines") between the two
// learners, with the utterances that prime and establish them.
//
// A token sequence is a routine when both A and B produce it and at least
// one of its occurrences is free, i.e. not strictly inside an occurrence of
// a longer shared sequence at the same place in the same utterance.

#ifndef ALIGN_ROUTINES_H_
#define ALIGN_ROUTINES_H_

#include <ostream>
#include <set>
#include <string>
#include <variant>
#include <vector>

#include "align/corpus.h"
#include "align/network.h"

namespace align {

struct RoutineOccurrence {
  std::size_t utterance = 0;  // index into the team's utterance list
  std::size_t token_pos = 0;  // global position of the first token
  Speaker speaker = Speaker::kA;
  bool free = false;

  bool operator==(const RoutineOccurrence &) const = default;
};

struct RoutineEvent {
  std::size_t utterance = 0;
  std::size_t token_pos = 0;
  double time = 0;  // end time of the utterance

  bool operator==(const RoutineEvent &) const = default;
};

struct Routine {
  std::vector<std::string> expression;
  Speaker initiator = Speaker::kA;
  RoutineEvent priming;
  RoutineEvent establishment;
  std::vector<RoutineOccurrence> occurrences;  // in text order

  bool operator==(const Routine &) const = default;
};

std::string JoinTokens(const std::vector<std::string> &tokens);

// Every routine of one team, sorted by establishment time (ties by
// establishment token position, then expression). Robot utterances are
// ignored. Fewer than two speaking learners yields an empty list.
std::vector<Routine> ExtractRoutines(const std::vector<Utterance> &utterances);

bool ContainsReferent(const Routine &routine, const Network &network);

// Keeps routines whose expression contains at least one node name token.
std::vector<Routine> FilterTaskRoutines(const std::vector<Routine> &routines,
                                        const Network &network);

struct AbsoluteTimes {};
struct CommonWindow {
  double limit = 0;  // seconds
};
struct NormalizedTimes {
  double duration = 0;  // seconds
};
using TimeMode = std::variant<AbsoluteTimes, CommonWindow, NormalizedTimes>;

// Establishment times in seconds (absolute, or the subset <= limit) or in
// percent of the team duration.
std::vector<double> EstablishmentTimes(const std::vector<Routine> &routines,
                                       const TimeMode &mode);

// Applies the same modes to arbitrary event times.
std::vector<double> ApplyTimeMode(const std::vector<double> &times,
                                  const TimeMode &mode);

struct Quartiles {
  double q1 = 0;
  double q3 = 0;
};

// Q1..Q3 of normalized establishment times with linear interpolation.
// Throws std::invalid_argument("no establishments") on an empty list.
Quartiles CollaborativePeriod(std::vector<double> times);

struct TokenEvents {
  std::vector<std::size_t> priming_positions;
  std::vector<std::size_t> establishment_positions;
  std::vector<std::size_t> marker_positions;
};

// Global token positions of routine priming/establishment first tokens and
// of every marker token produced by the learners.
TokenEvents CollectTokenEvents(const std::vector<Utterance> &utterances,
                               const std::vector<Routine> &routines,
                               const std::set<std::string> &markers);

inline const std::set<std::string> &FillerMarkers() {
  static const std::set<std::string> kFillers = {"uh", "um"};
  return kFillers;
}

// Routine table CSV: team, expression, initiator, priming_time,
// establishment_time, priming_token_pos, establishment_token_pos,
// contains_referent.
void WriteRoutineTableHeader(std::ostream &out);
void WriteRoutineTableRows(std::ostream &out, TeamId team,
                           const std::vector<Routine> &routines,
                           const Network &network);

}  // namespace align

#endif  // ALIGN_ROUTINES_H_
