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

// Minimal RFC 4180 reading and writing. Quoted fields may contain commas,
// doubled quotes and line breaks.

#ifndef ALIGN_CSV_H_
#define ALIGN_CSV_H_

#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

namespace align {

class CsvReader {
 public:
  explicit CsvReader(std::istream &in) : in_(in) {}

  // Reads the next record into *row. Returns false at end of input.
  // Throws InputError on an unterminated quoted field.
  bool Next(std::vector<std::string> *row);

  // 1-based line number at which the last returned record started.
  int line() const { return record_line_; }

 private:
  std::istream &in_;
  int line_ = 1;
  int record_line_ = 0;
};

// Column lookup for a header row. Throws InputError naming any missing
// required column.
class CsvHeader {
 public:
  CsvHeader(const std::vector<std::string> &header,
            const std::vector<std::string> &required,
            std::string_view source);

  std::size_t index(const std::string &column) const;
  std::optional<std::size_t> find(const std::string &column) const;

 private:
  std::map<std::string, std::size_t> columns_;
};

std::string CsvEscape(std::string_view field);
void WriteCsvRow(std::ostream &out, const std::vector<std::string> &fields);

// Shortest decimal representation that parses back to the same double.
std::string FormatDouble(double value);

// Strict numeric parsing; nullopt when the whole field is not a number.
std::optional<double> ParseDouble(std::string_view text);
std::optional<long long> ParseInt(std::string_view text);

}  // namespace align

#endif  // ALIGN_CSV_H_
