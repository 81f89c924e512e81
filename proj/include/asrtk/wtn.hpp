// wtn.hpp
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

#ifndef ASRTK_WTN_HPP_
#define ASRTK_WTN_HPP_

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "asrtk/alignment.hpp"
#include "asrtk/ctm.hpp"

namespace asrtk {

// One competing word arc inside a correspondence set. A NULL arc (no word)
// stands for "this system has nothing here".
struct WtnArc {
  std::optional<std::string> word;
  double confidence = 1.0;
  int system_id = 0;
  double start = 0.0;
  double duration = 0.0;

  bool is_null() const { return !word.has_value(); }
  double midpoint() const { return start + duration / 2.0; }
};

// Correspondence set: exactly one arc per merged system.
struct CorrespondenceSet {
  std::vector<WtnArc> arcs;

  // Mean midpoint of the non-NULL arcs; every set holds at least one.
  double representative_midpoint() const;
  bool contains_word(const std::string& w) const;
};

// Word transition network built by iterative alignment of system outputs.
struct Wtn {
  std::vector<CorrespondenceSet> sets;
  std::vector<int> system_ids;  // merge order
  std::string recording_id;
  std::string channel;

  int n_systems() const { return static_cast<int>(system_ids.size()); }
};

struct MergeConfig {
  AlignCosts costs;          // match 0, substitution 4, insertion/deletion 3
  double max_time_gap = 2.0;  // seconds; arcs align only within this window
};

// Builds a single-system WTN: one singleton correspondence set per token, in
// time order. Tokens must be time-sorted and belong to one recording/channel.
Wtn wtn_from_ctm(std::span<const WordToken> tokens, int system_id);

struct MergeOutcome {
  Wtn wtn;
  int alignment_cost = 0;
};

// Aligns hyp tokens against the base WTN (match when the hyp word equals any
// non-NULL arc word in the set and the time midpoints differ by less than
// max_time_gap) and folds them in, inserting NULL arcs so that every set ends
// up with one arc per merged system.
MergeOutcome wtn_merge(const Wtn& base, std::span<const WordToken> hyp, int system_id,
                       const MergeConfig& config = {});

}  // namespace asrtk

#endif  // ASRTK_WTN_HPP_
