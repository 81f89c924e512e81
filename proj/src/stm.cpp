// stm.cpp
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

#include "asrtk/stm.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "asrtk/errors.hpp"
#include "asrtk/io_util.hpp"

namespace asrtk {

std::vector<StmSegment> parse_stm(std::istream& in) {
  std::vector<StmSegment> segments;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    std::vector<std::string> fields = split_fields(line);
    if (fields.empty()) continue;
    if (fields[0].rfind(";;", 0) == 0) continue;
    if (fields.size() < 5)
      throw ParseError("expected at least 5 STM fields, got " + std::to_string(fields.size()),
                       lineno);
    StmSegment seg;
    seg.recording_id = fields[0];
    seg.channel = fields[1];
    seg.speaker = fields[2];
    seg.start = parse_number(fields[3], "start time", lineno);
    seg.end = parse_number(fields[4], "end time", lineno);
    if (seg.start >= seg.end)
      throw ValidationError("line " + std::to_string(lineno) +
                            ": segment start must precede end");
    std::size_t text_begin = 5;
    if (fields.size() > 5 && fields[5].size() >= 2 && fields[5].front() == '<' &&
        fields[5].back() == '>') {
      seg.labels = fields[5].substr(1, fields[5].size() - 2);
      text_begin = 6;
    }
    seg.text.assign(fields.begin() + text_begin, fields.end());
    segments.push_back(std::move(seg));
  }
  return segments;
}

std::vector<StmSegment> parse_stm(const std::string& text) {
  std::istringstream in(text);
  return parse_stm(in);
}

std::vector<StmSegment> read_stm_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open STM file: " + path);
  return parse_stm(in);
}

void write_stm(const std::vector<StmSegment>& segments, std::ostream& out) {
  char buf[64];
  for (const StmSegment& seg : segments) {
    out << seg.recording_id << ' ' << seg.channel << ' ' << seg.speaker << ' ';
    std::snprintf(buf, sizeof(buf), "%.3f %.3f", seg.start, seg.end);
    out << buf;
    if (seg.labels) out << " <" << *seg.labels << '>';
    for (const std::string& w : seg.text) out << ' ' << w;
    out << '\n';
  }
}

std::string write_stm(const std::vector<StmSegment>& segments) {
  std::ostringstream out;
  write_stm(segments, out);
  return out.str();
}

void write_stm_file(const std::vector<StmSegment>& segments, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write STM file: " + path);
  write_stm(segments, out);
}

}  // namespace asrtk
