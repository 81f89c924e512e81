// wer.hpp
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

#ifndef ASRTK_WER_HPP_
#define ASRTK_WER_HPP_

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "asrtk/alignment.hpp"
#include "asrtk/ctm.hpp"
#include "asrtk/stm.hpp"
#include "asrtk/text_norm.hpp"

namespace asrtk {

struct WerReport {
  std::int64_t n_ref = 0;
  std::int64_t n_cor = 0;
  std::int64_t n_sub = 0;
  std::int64_t n_ins = 0;
  std::int64_t n_del = 0;

  // 100 * (sub + ins + del) / n_ref; 0 when n_ref == 0 and no insertions.
  double wer() const;
  void add(const WerReport& other);

  bool operator==(const WerReport&) const = default;
};

// Rounds half away from zero at the given number of decimals (display only;
// reports carry full precision).
double round_display(double value, int decimals = 2);

struct ScoreConfig {
  AlignCosts costs;
  std::string non_scored_marker = kNonScoredMarker;
  int threads = 0;  // <= 0: default worker count
};

struct RecordingScore {
  WerReport counts;
  bool ref_missing = false;  // hypothesis recording absent from the references
};

struct ScoreResult {
  WerReport total;
  std::map<std::string, RecordingScore> per_recording;
  std::vector<std::string> warnings;
};

// Scores a hypothesis CTM against STM references. Hypothesis tokens are
// assigned to the reference segment containing their time midpoint; tokens
// falling in no segment count as insertions against the nearest segment.
// Reference tokens equal to the non-scored marker may be skipped or matched
// at zero cost and are excluded from all counts. Inputs are expected to be
// normalized consistently.
ScoreResult score_wer(const std::vector<StmSegment>& refs, const CtmFile& hyp,
                      const ScoreConfig& config = {});

// Serial reference implementation; identical results to score_wer.
ScoreResult score_wer_serial(const std::vector<StmSegment>& refs, const CtmFile& hyp,
                             const ScoreConfig& config = {});

}  // namespace asrtk

#endif  // ASRTK_WER_HPP_
