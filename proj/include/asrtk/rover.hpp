// rover.hpp
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

#ifndef ASRTK_ROVER_HPP_
#define ASRTK_ROVER_HPP_

#include <string>
#include <vector>

#include "asrtk/ctm.hpp"
#include "asrtk/wtn.hpp"

namespace asrtk {

// Per-correspondence-set voting parameters. With alpha = 1 the vote is pure
// frequency voting; with alpha = 0 it is pure max-confidence voting.
struct VoteConfig {
  double alpha = 1.0;
  double null_confidence = 0.7;
  std::vector<int> tie_break;  // system priority order; empty = merge order
  MergeConfig merge;
  int threads = 0;
};

// One candidate tally inside a set, for trace output.
struct VoteCandidate {
  std::string word;  // empty = NULL
  int count = 0;
  double max_confidence = 0.0;
  double score = 0.0;
};

struct SetTrace {
  std::vector<VoteCandidate> candidates;
  std::string winner;  // empty = NULL won
};

struct RecordingTrace {
  std::string recording_id;
  std::string channel;
  std::vector<SetTrace> sets;
};

// Votes a fully merged WTN down to a word sequence. Winning-word tokens carry
// earliest start / longest duration among the supporting arcs and the vote
// score as confidence.
CtmFile vote(const Wtn& wtn, const VoteConfig& config, RecordingTrace* trace = nullptr);

struct FusionReport {
  std::vector<int> system_order;
  std::vector<std::string> warnings;
  std::vector<RecordingTrace> traces;  // filled only when tracing is requested
};

// Full ROVER fusion: per (recording, channel) group, build a WTN from the
// first system, merge the remaining systems in order, vote. Recordings absent
// from some systems get all-NULL contributions plus a warning.
CtmFile rover_fuse(const std::vector<CtmFile>& systems, const VoteConfig& config,
                   FusionReport* report = nullptr, bool want_trace = false);

// Serial reference implementation; identical output to rover_fuse.
CtmFile rover_fuse_serial(const std::vector<CtmFile>& systems, const VoteConfig& config,
                          FusionReport* report = nullptr, bool want_trace = false);

}  // namespace asrtk

#endif  // ASRTK_ROVER_HPP_
