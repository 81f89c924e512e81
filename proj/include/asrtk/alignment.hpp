// alignment.hpp
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

#ifndef ASRTK_ALIGNMENT_HPP_
#define ASRTK_ALIGNMENT_HPP_

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace asrtk {

enum class EditOp { kCorrect, kSubstitution, kInsertion, kDeletion };

struct AlignmentOp {
  EditOp kind;
  std::optional<std::string> ref_word;  // set for CORRECT/SUB/DEL
  std::optional<std::string> hyp_word;  // set for CORRECT/SUB/INS
};

// Scoring-tool convention weights. The weighted costs shape the alignment;
// WER counts stay unit-cost.
struct AlignCosts {
  int substitution = 4;
  int insertion = 3;
  int deletion = 3;
};

struct Alignment {
  std::vector<AlignmentOp> ops;
  int total_cost = 0;
};

// Global minimum-edit-cost alignment of hyp against ref. Ties are broken
// preferring CORRECT > SUBSTITUTION > DELETION > INSERTION so results are
// reproducible byte-for-byte.
Alignment align_words(std::span<const std::string> ref, std::span<const std::string> hyp,
                      const AlignCosts& costs = {});

// Variant with optionally-deletable reference positions (ref_optional[i]
// non-zero): such a ref word may be skipped, or matched against any hyp word,
// at zero cost. Used for non-scored markers. An empty mask means none.
Alignment align_words(std::span<const std::string> ref, std::span<const std::string> hyp,
                      const AlignCosts& costs, std::span<const char> ref_optional);

}  // namespace asrtk

#endif  // ASRTK_ALIGNMENT_HPP_
