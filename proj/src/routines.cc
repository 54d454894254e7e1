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

#include "align/routines.h"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <stdexcept>
#include <unordered_map>

#include "align/csv.h"

namespace align {

namespace {

constexpr std::size_t kNone = std::numeric_limits<std::size_t>::max();

// The learners' utterances laid end to end as interned token ids, each
// utterance closed by a separator that occurs nowhere else. Separators keep
// every common prefix inside a single utterance.
struct DialogueText {
  std::vector<int> symbols;
  std::vector<std::size_t> utterance;  // kNone on separators
  std::vector<std::size_t> local;      // index inside the utterance
  std::vector<std::string> vocabulary;
};

DialogueText BuildText(const std::vector<Utterance> &utterances) {
  DialogueText text;
  std::unordered_map<std::string, int> ids;
  int separator = -1;
  for (std::size_t u = 0; u < utterances.size(); ++u) {
    const Utterance &utt = utterances[u];
    if (!IsHuman(utt.speaker) || utt.tokens.empty()) continue;
    for (std::size_t i = 0; i < utt.tokens.size(); ++i) {
      auto [it, inserted] =
          ids.emplace(utt.tokens[i], static_cast<int>(text.vocabulary.size()));
      if (inserted) text.vocabulary.push_back(utt.tokens[i]);
      text.symbols.push_back(it->second);
      text.utterance.push_back(u);
      text.local.push_back(i);
    }
    text.symbols.push_back(separator--);
    text.utterance.push_back(kNone);
    text.local.push_back(kNone);
  }
  return text;
}

std::vector<std::size_t> SuffixArray(const std::vector<int> &s) {
  std::vector<std::size_t> sa(s.size());
  for (std::size_t i = 0; i < sa.size(); ++i) sa[i] = i;
  // Unique separators bound every comparison by one utterance length.
  std::sort(sa.begin(), sa.end(), [&](std::size_t a, std::size_t b) {
    while (s[a] == s[b]) {
      ++a;
      ++b;
    }
    return s[a] < s[b];
  });
  return sa;
}

// Kasai et al. lcp[r] = longest common prefix of suffixes sa[r-1], sa[r].
std::vector<std::size_t> LcpArray(const std::vector<int> &s,
                                  const std::vector<std::size_t> &sa,
                                  const std::vector<std::size_t> &rank) {
  std::vector<std::size_t> lcp(s.size(), 0);
  std::size_t h = 0;
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (rank[i] == 0) {
      h = 0;
      continue;
    }
    const std::size_t j = sa[rank[i] - 1];
    while (i + h < s.size() && j + h < s.size() && s[i + h] == s[j + h]) ++h;
    lcp[rank[i]] = h;
    if (h > 0) --h;
  }
  return lcp;
}

}  // namespace

std::string JoinTokens(const std::vector<std::string> &tokens) {
  std::string out;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    if (i) out.push_back(' ');
    out += tokens[i];
  }
  return out;
}

std::vector<Routine> ExtractRoutines(const std::vector<Utterance> &utterances) {
  const DialogueText text = BuildText(utterances);
  const std::size_t n = text.symbols.size();
  if (n == 0) return {};

  auto speaker_at = [&](std::size_t pos) {
    return utterances[text.utterance[pos]].speaker;
  };

  const std::vector<std::size_t> sa = SuffixArray(text.symbols);
  std::vector<std::size_t> rank(n);
  for (std::size_t r = 0; r < n; ++r) rank[sa[r]] = r;
  const std::vector<std::size_t> lcp = LcpArray(text.symbols, sa, rank);

  // shared[p]: longest prefix of the suffix at p that the other learner
  // also produces. Sharing is prefix closed, so the shared lengths at p are
  // exactly 1..shared[p]. Two sweeps over the suffix array track the
  // running minimum lcp since the last suffix of each speaker.
  std::vector<std::size_t> shared(n, 0);
  constexpr std::size_t kUnseen = kNone;
  auto sweep = [&](bool forward) {
    std::size_t run[2] = {kUnseen, kUnseen};
    for (std::size_t step = 0; step < n; ++step) {
      const std::size_t r = forward ? step : n - 1 - step;
      if (step > 0) {
        const std::size_t link = forward ? lcp[r] : lcp[r + 1];
        for (auto &v : run) {
          if (v != kUnseen) v = std::min(v, link);
        }
      }
      const std::size_t pos = sa[r];
      if (text.utterance[pos] == kNone) continue;
      const int self = speaker_at(pos) == Speaker::kA ? 0 : 1;
      if (run[1 - self] != kUnseen) shared[pos] = std::max(shared[pos], run[1 - self]);
      run[self] = std::numeric_limits<std::size_t>::max() - 1;
    }
  };
  sweep(true);
  sweep(false);

  // The occurrence of length len at pos is free iff neither its one-token
  // right extension nor its one-token left extension is shared: any longer
  // containing occurrence contains one of those two.
  auto is_free = [&](std::size_t pos, std::size_t len) {
    if (shared[pos] != len) return false;
    return text.local[pos] == 0 || shared[pos - 1] < len + 1;
  };

  std::vector<Routine> routines;
  std::map<std::pair<std::size_t, std::size_t>, bool> seen;  // (lo rank, len)
  for (std::size_t pos = 0; pos < n; ++pos) {
    if (text.utterance[pos] == kNone) continue;
    const std::size_t len = shared[pos];
    if (len == 0 || !is_free(pos, len)) continue;

    std::size_t lo = rank[pos];
    while (lo > 0 && lcp[lo] >= len) --lo;
    std::size_t hi = rank[pos];
    while (hi + 1 < n && lcp[hi + 1] >= len) ++hi;
    if (!seen.emplace(std::make_pair(lo, len), true).second) continue;

    std::vector<std::size_t> starts(sa.begin() + lo, sa.begin() + hi + 1);
    std::sort(starts.begin(), starts.end());

    Routine routine;
    for (std::size_t k = 0; k < len; ++k) {
      routine.expression.push_back(text.vocabulary[text.symbols[pos + k]]);
    }
    for (std::size_t start : starts) {
      const Utterance &utt = utterances[text.utterance[start]];
      routine.occurrences.push_back({text.utterance[start],
                                     utt.token_offset + text.local[start],
                                     utt.speaker, is_free(start, len)});
    }
    auto event_of = [&](const RoutineOccurrence &occ) {
      return RoutineEvent{occ.utterance, occ.token_pos, utterances[occ.utterance].end};
    };
    const RoutineOccurrence &first = routine.occurrences.front();
    routine.initiator = first.speaker;
    routine.priming = event_of(first);
    for (const RoutineOccurrence &occ : routine.occurrences) {
      if (occ.speaker != routine.initiator) {
        routine.establishment = event_of(occ);
        break;
      }
    }
    routines.push_back(std::move(routine));
  }

  std::sort(routines.begin(), routines.end(), [](const Routine &a, const Routine &b) {
    if (a.establishment.time != b.establishment.time) {
      return a.establishment.time < b.establishment.time;
    }
    if (a.establishment.token_pos != b.establishment.token_pos) {
      return a.establishment.token_pos < b.establishment.token_pos;
    }
    return a.expression < b.expression;
  });
  return routines;
}

bool ContainsReferent(const Routine &routine, const Network &network) {
  return std::any_of(routine.expression.begin(), routine.expression.end(),
                     [&](const std::string &t) { return network.IsNodeToken(t); });
}

std::vector<Routine> FilterTaskRoutines(const std::vector<Routine> &routines,
                                        const Network &network) {
  std::vector<Routine> kept;
  for (const Routine &r : routines) {
    if (ContainsReferent(r, network)) kept.push_back(r);
  }
  return kept;
}

std::vector<double> ApplyTimeMode(const std::vector<double> &times,
                                  const TimeMode &mode) {
  std::vector<double> out;
  if (std::holds_alternative<AbsoluteTimes>(mode)) {
    out = times;
  } else if (const auto *window = std::get_if<CommonWindow>(&mode)) {
    for (double t : times) {
      if (t <= window->limit) out.push_back(t);
    }
  } else {
    const double duration = std::get<NormalizedTimes>(mode).duration;
    for (double t : times) out.push_back(RelativeTime(t, duration));
  }
  return out;
}

std::vector<double> EstablishmentTimes(const std::vector<Routine> &routines,
                                       const TimeMode &mode) {
  std::vector<double> times;
  times.reserve(routines.size());
  for (const Routine &r : routines) times.push_back(r.establishment.time);
  return ApplyTimeMode(times, mode);
}

Quartiles CollaborativePeriod(std::vector<double> times) {
  if (times.empty()) throw std::invalid_argument("no establishments");
  std::sort(times.begin(), times.end());
  auto quantile = [&](double p) {
    const double h = p * static_cast<double>(times.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = std::min(lo + 1, times.size() - 1);
    return times[lo] + (h - static_cast<double>(lo)) * (times[hi] - times[lo]);
  };
  return {quantile(0.25), quantile(0.75)};
}

TokenEvents CollectTokenEvents(const std::vector<Utterance> &utterances,
                               const std::vector<Routine> &routines,
                               const std::set<std::string> &markers) {
  TokenEvents events;
  for (const Routine &r : routines) {
    events.priming_positions.push_back(r.priming.token_pos);
    events.establishment_positions.push_back(r.establishment.token_pos);
  }
  for (const Utterance &u : utterances) {
    if (!IsHuman(u.speaker)) continue;
    for (std::size_t i = 0; i < u.tokens.size(); ++i) {
      if (markers.count(u.tokens[i])) events.marker_positions.push_back(u.token_offset + i);
    }
  }
  std::sort(events.priming_positions.begin(), events.priming_positions.end());
  std::sort(events.establishment_positions.begin(), events.establishment_positions.end());
  return events;
}

void WriteRoutineTableHeader(std::ostream &out) {
  WriteCsvRow(out, {"team", "expression", "initiator", "priming_time",
                    "establishment_time", "priming_token_pos",
                    "establishment_token_pos", "contains_referent"});
}

void WriteRoutineTableRows(std::ostream &out, TeamId team,
                           const std::vector<Routine> &routines,
                           const Network &network) {
  for (const Routine &r : routines) {
    WriteCsvRow(out, {std::to_string(team), JoinTokens(r.expression),
                      std::string(SpeakerName(r.initiator)),
                      FormatDouble(r.priming.time), FormatDouble(r.establishment.time),
                      std::to_string(r.priming.token_pos),
                      std::to_string(r.establishment.token_pos),
                      ContainsReferent(r, network) ? "true" : "false"});
  }
}

}  // namespace align
