// confusion.hpp
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

#ifndef ASRTK_CONFUSION_HPP_
#define ASRTK_CONFUSION_HPP_

#include <optional>
#include <span>
#include <string>
#include <vector>

namespace asrtk {

// Linear confusion network: per slot, a set of competing words (or epsilon)
// with non-negative weights. Weights need not sum to 1.
struct ConfusionSlot {
  struct Alternative {
    std::optional<std::string> word;  // nullopt = epsilon (emit nothing)
    double weight = 1.0;
  };
  std::vector<Alternative> alternatives;
};

struct ConfusionNetwork {
  std::vector<ConfusionSlot> slots;
};

struct OraclePath {
  std::vector<std::string> words;
  int edit_cost = 0;
};

// Slot-wise word choice minimizing unit-cost Levenshtein distance to ref,
// computed by DP over (slot index, ref position). Epsilon choices emit
// nothing. Throws ValidationError on empty networks or empty slots.
OraclePath oracle_path(const ConfusionNetwork& net, std::span<const std::string> ref);

}  // namespace asrtk

#endif  // ASRTK_CONFUSION_HPP_
