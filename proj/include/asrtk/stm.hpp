// stm.hpp
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

#ifndef ASRTK_STM_HPP_
#define ASRTK_STM_HPP_

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace asrtk {

// One reference span of a segment time mark (STM) file.
struct StmSegment {
  std::string recording_id;
  std::string channel;
  std::string speaker;
  double start = 0.0;  // seconds
  double end = 0.0;    // seconds, start < end
  std::optional<std::string> labels;  // "<...>" category field, brackets stripped
  std::vector<std::string> text;      // may be empty (silence / ignore span)

  bool operator==(const StmSegment&) const = default;
};

// Parses NIST STM: `recording channel speaker start end [<labels>] text...`.
// Segments are returned in file order. ";;" comments and blank lines skipped.
std::vector<StmSegment> parse_stm(std::istream& in);
std::vector<StmSegment> parse_stm(const std::string& text);
std::vector<StmSegment> read_stm_file(const std::string& path);

// Serializes with times at fixed 3-decimal precision; round-trip stable.
void write_stm(const std::vector<StmSegment>& segments, std::ostream& out);
std::string write_stm(const std::vector<StmSegment>& segments);
void write_stm_file(const std::vector<StmSegment>& segments, const std::string& path);

}  // namespace asrtk

#endif  // ASRTK_STM_HPP_
