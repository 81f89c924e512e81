// ctm.cpp
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

#include "asrtk/ctm.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <tuple>

#include "asrtk/errors.hpp"
#include "asrtk/io_util.hpp"

namespace asrtk {

CtmFile CtmFile::from_tokens(std::vector<WordToken> tokens) {
  std::stable_sort(tokens.begin(), tokens.end(),
                   [](const WordToken& a, const WordToken& b) {
                     return std::tie(a.recording_id, a.channel, a.start) <
                            std::tie(b.recording_id, b.channel, b.start);
                   });
  return CtmFile{std::move(tokens)};
}

CtmFile parse_ctm(std::istream& in) {
  std::vector<WordToken> tokens;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::vector<std::string> fields = split_fields(line);
    if (fields.empty()) continue;
    if (fields[0].rfind(";;", 0) == 0) continue;
    if (fields.size() < 5 || fields.size() > 6)
      throw ParseError("expected 5 or 6 CTM fields, got " + std::to_string(fields.size()),
                       lineno);
    WordToken tok;
    tok.recording_id = fields[0];
    tok.channel = fields[1];
    tok.start = parse_number(fields[2], "start time", lineno);
    tok.duration = parse_number(fields[3], "duration", lineno);
    tok.word = fields[4];
    if (fields.size() == 6)
      tok.confidence = parse_number(fields[5], "confidence", lineno);
    if (tok.start < 0)
      throw ValidationError("line " + std::to_string(lineno) + ": negative start time");
    if (tok.duration < 0)
      throw ValidationError("line " + std::to_string(lineno) + ": negative duration");
    if (tok.confidence && (*tok.confidence < 0.0 || *tok.confidence > 1.0))
      throw ValidationError("line " + std::to_string(lineno) +
                            ": confidence outside [0, 1]");
    tokens.push_back(std::move(tok));
  }
  return CtmFile::from_tokens(std::move(tokens));
}

CtmFile parse_ctm(const std::string& text) {
  std::istringstream in(text);
  return parse_ctm(in);
}

CtmFile read_ctm_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open CTM file: " + path);
  return parse_ctm(in);
}

void write_ctm(const CtmFile& ctm, std::ostream& out) {
  char buf[64];
  for (const WordToken& tok : ctm.tokens) {
    out << tok.recording_id << ' ' << tok.channel << ' ';
    std::snprintf(buf, sizeof(buf), "%.3f %.3f", tok.start, tok.duration);
    out << buf << ' ' << tok.word;
    if (tok.confidence) {
      std::snprintf(buf, sizeof(buf), " %.6f", *tok.confidence);
      out << buf;
    }
    out << '\n';
  }
}

std::string write_ctm(const CtmFile& ctm) {
  std::ostringstream out;
  write_ctm(ctm, out);
  return out.str();
}

void write_ctm_file(const CtmFile& ctm, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write CTM file: " + path);
  write_ctm(ctm, out);
}

}  // namespace asrtk
