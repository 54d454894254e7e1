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

#ifndef ALIGN_TOKENIZE_H_
#define ALIGN_TOKENIZE_H_

#include <string>
#include <string_view>
#include <vector>

namespace align {

// Splits a transcript utterance on whitespace, lowercases, and drops the
// punctuation marks , . ! ? wherever they occur. Apostrophes ("that's")
// and trailing hyphens of cut-off words ("neuchat-") are kept, so fillers
// and fragments survive as tokens of their own.
std::vector<std::string> Tokenize(std::string_view text);

// ASCII lowercase; other bytes are copied unchanged.
std::string ToLower(std::string_view text);

}  // namespace align

#endif  // ALIGN_TOKENIZE_H_
