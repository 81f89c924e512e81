// confusion.cpp
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

#include "asrtk/confusion.hpp"

#include <algorithm>
#include <limits>

#include "asrtk/errors.hpp"

namespace asrtk {
namespace {

constexpr int kInf = std::numeric_limits<int>::max() / 4;

struct Back {
  int pi = -1;
  int pj = -1;
  const std::string* emitted = nullptr;
};

}  // namespace

OraclePath oracle_path(const ConfusionNetwork& net, std::span<const std::string> ref) {
  if (net.slots.empty()) throw ValidationError("confusion network has no slots");
  for (const ConfusionSlot& slot : net.slots) {
    if (slot.alternatives.empty())
      throw ValidationError("confusion network slot has no alternatives");
    for (const auto& alt : slot.alternatives)
      if (alt.weight < 0) throw ValidationError("negative confusion-network weight");
  }

  const int s = static_cast<int>(net.slots.size());
  const int r = static_cast<int>(ref.size());
  const int cols = r + 1;
  std::vector<int> dp((s + 1) * cols, kInf);
  std::vector<Back> back((s + 1) * cols);
  auto at = [cols](int i, int j) { return i * cols + j; };
  dp[at(0, 0)] = 0;

  auto relax = [&](int i, int j, int cost, int pi, int pj, const std::string* emitted) {
    if (cost < dp[at(i, j)]) {
      dp[at(i, j)] = cost;
      back[at(i, j)] = {pi, pj, emitted};
    }
  };

  for (int i = 0; i <= s; ++i) {
    for (int j = 0; j <= r; ++j) {
      // Deletion of ref[j-1] stays within the slot layer.
      if (j > 0 && dp[at(i, j - 1)] < kInf)
        relax(i, j, dp[at(i, j - 1)] + 1, i, j - 1, nullptr);
      const int base = dp[at(i, j)];
      if (base >= kInf || i == s) continue;
      for (const auto& alt : net.slots[i].alternatives) {
        if (!alt.word) {
          relax(i + 1, j, base, i, j, nullptr);
          continue;
        }
        const std::string* w = &*alt.word;
        if (j < r) relax(i + 1, j + 1, base + (*w == ref[j] ? 0 : 1), i, j, w);
        relax(i + 1, j, base + 1, i, j, w);  // emitted word as insertion
      }
    }
  }

  OraclePath result;
  result.edit_cost = dp[at(s, r)];
  std::vector<const std::string*> emitted;
  int i = s, j = r;
  while (i != 0 || j != 0) {
    const Back& b = back[at(i, j)];
    if (b.emitted) emitted.push_back(b.emitted);
    int pi = b.pi, pj = b.pj;
    i = pi;
    j = pj;
  }
  result.words.reserve(emitted.size());
  for (auto it = emitted.rbegin(); it != emitted.rend(); ++it) result.words.push_back(**it);
  return result;
}

}  // namespace asrtk
