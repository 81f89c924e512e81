// ctm.hpp
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

#ifndef ASRTK_CTM_HPP_
#define ASRTK_CTM_HPP_

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace asrtk {

// One recognized word of a time-marked conversation (CTM) file.
struct WordToken {
  std::string recording_id;
  std::string channel;
  double start = 0.0;     // seconds
  double duration = 0.0;  // seconds
  std::string word;
  std::optional<double> confidence;  // absent means 1.0

  double midpoint() const { return start + duration / 2.0; }
  double confidence_or_default() const { return confidence.value_or(1.0); }

  bool operator==(const WordToken&) const = default;
};

// CTM container. Tokens are kept sorted by (recording_id, channel, start),
// ties broken by insertion order.
struct CtmFile {
  std::vector<WordToken> tokens;

  // Sorts tokens into the canonical order.
  static CtmFile from_tokens(std::vector<WordToken> tokens);

  bool operator==(const CtmFile&) const = default;
};

// Parses NIST CTM text: `recording channel start duration word [confidence]`,
// ";;" comment lines and blank lines skipped. Throws ParseError with the
// offending line number on malformed rows, ValidationError on out-of-range
// fields.
CtmFile parse_ctm(std::istream& in);
CtmFile parse_ctm(const std::string& text);
CtmFile read_ctm_file(const std::string& path);

// Serializes with times at fixed 3-decimal precision and confidence, when
// present, at 6 decimals.
void write_ctm(const CtmFile& ctm, std::ostream& out);
std::string write_ctm(const CtmFile& ctm);
void write_ctm_file(const CtmFile& ctm, const std::string& path);

}  // namespace asrtk

#endif  // ASRTK_CTM_HPP_
