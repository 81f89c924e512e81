// arpa.cpp
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

#include "asrtk/arpa.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "asrtk/errors.hpp"
#include "asrtk/io_util.hpp"

namespace asrtk {

NgramModel read_arpa(std::istream& in) {
  std::string line;
  std::size_t lineno = 0;

  auto next_line = [&](std::string& out) {
    if (!std::getline(in, out)) return false;
    ++lineno;
    while (!out.empty() && (out.back() == '\r' || out.back() == '\n')) out.pop_back();
    return true;
  };

  // Skip anything before \data\ (ARPA files may carry a free-form preamble).
  bool have_data = false;
  while (next_line(line)) {
    if (line == "\\data\\") {
      have_data = true;
      break;
    }
  }
  if (!have_data) throw ParseError("missing \\data\\ header");

  std::vector<std::size_t> declared;  // declared[n-1] = entry count of order n
  while (next_line(line)) {
    if (line.empty()) break;
    std::vector<std::string> fields = split_fields(line);
    if (fields.size() != 2 || fields[0] != "ngram")
      throw ParseError("expected 'ngram N=count' in header", lineno);
    std::size_t eq = fields[1].find('=');
    if (eq == std::string::npos) throw ParseError("expected 'ngram N=count'", lineno);
    int n = std::atoi(fields[1].substr(0, eq).c_str());
    long long c = std::atoll(fields[1].substr(eq + 1).c_str());
    if (n < 1 || c < 0) throw ParseError("invalid ngram header entry", lineno);
    if (static_cast<std::size_t>(n) > declared.size()) declared.resize(n, 0);
    declared[n - 1] = static_cast<std::size_t>(c);
  }
  if (declared.empty()) throw ParseError("header declares no n-gram orders");

  NgramModel model(static_cast<int>(declared.size()));
  std::vector<std::size_t> seen(declared.size(), 0);
  int section = 0;  // current order, 0 = outside any section
  bool have_end = false;

  while (next_line(line)) {
    if (line.empty()) continue;
    if (line == "\\end\\") {
      have_end = true;
      break;
    }
    if (line.front() == '\\') {
      int n = 0;
      if (std::sscanf(line.c_str(), "\\%d-grams:", &n) == 1 && n >= 1 &&
          n <= model.order()) {
        section = n;
        continue;
      }
      throw ParseError("unrecognized section marker '" + line + "'", lineno);
    }
    if (section == 0) throw ParseError("n-gram entry outside any section", lineno);

    std::vector<std::string> fields = split_fields(line);
    const std::size_t n = static_cast<std::size_t>(section);
    if (fields.size() != n + 1 && fields.size() != n + 2)
      throw ParseError("expected " + std::to_string(n + 1) + " or " +
                           std::to_string(n + 2) + " fields in " + std::to_string(n) +
                           "-gram entry",
                       lineno);
    double logp = parse_number(fields[0], "log10 probability", lineno);
    NgramKey key;
    key.reserve(n);
    for (std::size_t i = 0; i < n; ++i) key.push_back(model.vocab().intern(fields[1 + i]));
    std::optional<double> bow;
    if (fields.size() == n + 2)
      bow = parse_number(fields[n + 1], "back-off weight", lineno);
    model.set_entry(std::move(key), logp, bow);
    ++seen[n - 1];
  }

  if (!have_end) throw ParseError("missing \\end\\ marker");
  for (std::size_t n = 0; n < declared.size(); ++n) {
    if (seen[n] != declared[n])
      throw ParseError("header declares " + std::to_string(declared[n]) + " " +
                       std::to_string(n + 1) + "-grams but section has " +
                       std::to_string(seen[n]));
  }
  return model;
}

NgramModel read_arpa_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open ARPA file: " + path);
  return read_arpa(in);
}

void write_arpa(const NgramModel& model, std::ostream& out) {
  out << "\\data\\\n";
  for (int n = 1; n <= model.order(); ++n)
    out << "ngram " << n << '=' << model.entry_count(n) << '\n';
  out << '\n';

  char buf[32];
  for (int n = 1; n <= model.order(); ++n) {
    out << '\\' << n << "-grams:\n";
    for (const auto* kv : model.sorted_entries(n)) {
      std::snprintf(buf, sizeof(buf), "%.8f", kv->second.log10_prob);
      out << buf;
      for (WordId id : kv->first) out << ' ' << model.vocab().word(id);
      if (kv->second.has_bow) {
        std::snprintf(buf, sizeof(buf), "%.8f", kv->second.log10_bow);
        out << '\t' << buf;
      }
      out << '\n';
    }
    out << '\n';
  }
  out << "\\end\\\n";
}

void write_arpa_file(const NgramModel& model, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write ARPA file: " + path);
  write_arpa(model, out);
}

}  // namespace asrtk
