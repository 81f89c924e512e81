// alignment.cpp
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

#include "asrtk/alignment.hpp"

#include <algorithm>
#include <limits>

#include "asrtk/errors.hpp"

namespace asrtk {
namespace {

constexpr int kInf = std::numeric_limits<int>::max() / 4;

}  // namespace

Alignment align_words(std::span<const std::string> ref, std::span<const std::string> hyp,
                      const AlignCosts& costs) {
  return align_words(ref, hyp, costs, {});
}

Alignment align_words(std::span<const std::string> ref, std::span<const std::string> hyp,
                      const AlignCosts& costs, std::span<const char> ref_optional) {
  if (costs.substitution <= 0 || costs.insertion <= 0 || costs.deletion <= 0)
    throw ValidationError("alignment costs must be positive");
  if (!ref_optional.empty() && ref_optional.size() != ref.size())
    throw ValidationError("ref_optional mask size mismatch");

  const std::size_t m = ref.size();
  const std::size_t n = hyp.size();
  auto optional_ref = [&](std::size_t i) {
    return !ref_optional.empty() && ref_optional[i] != 0;
  };

  // dp[i][j]: min cost aligning ref[0..i) with hyp[0..j), row-major.
  std::vector<int> dp((m + 1) * (n + 1), kInf);
  auto at = [n](std::size_t i, std::size_t j) { return i * (n + 1) + j; };
  dp[at(0, 0)] = 0;
  for (std::size_t i = 1; i <= m; ++i)
    dp[at(i, 0)] = dp[at(i - 1, 0)] + (optional_ref(i - 1) ? 0 : costs.deletion);
  for (std::size_t j = 1; j <= n; ++j) dp[at(0, j)] = dp[at(0, j - 1)] + costs.insertion;
  for (std::size_t i = 1; i <= m; ++i) {
    const bool opt = optional_ref(i - 1);
    for (std::size_t j = 1; j <= n; ++j) {
      int diag_cost;
      if (opt)
        diag_cost = 0;  // marker absorbs the hyp word
      else
        diag_cost = ref[i - 1] == hyp[j - 1] ? 0 : costs.substitution;
      int best = dp[at(i - 1, j - 1)] + diag_cost;
      best = std::min(best, dp[at(i - 1, j)] + (opt ? 0 : costs.deletion));
      best = std::min(best, dp[at(i, j - 1)] + costs.insertion);
      dp[at(i, j)] = best;
    }
  }

  // Backtrace, preferring CORRECT > SUBSTITUTION > DELETION > INSERTION at
  // equal cost.
  Alignment result;
  result.total_cost = dp[at(m, n)];
  std::vector<AlignmentOp> rev;
  std::size_t i = m, j = n;
  while (i > 0 || j > 0) {
    const bool opt = i > 0 && optional_ref(i - 1);
    if (i > 0 && j > 0) {
      int diag_cost = opt ? 0 : (ref[i - 1] == hyp[j - 1] ? 0 : costs.substitution);
      if (dp[at(i, j)] == dp[at(i - 1, j - 1)] + diag_cost) {
        EditOp kind = (!opt && ref[i - 1] == hyp[j - 1]) ? EditOp::kCorrect
                                                         : EditOp::kSubstitution;
        rev.push_back({kind, ref[i - 1], hyp[j - 1]});
        --i;
        --j;
        continue;
      }
    }
    if (i > 0 && dp[at(i, j)] == dp[at(i - 1, j)] + (opt ? 0 : costs.deletion)) {
      rev.push_back({EditOp::kDeletion, ref[i - 1], std::nullopt});
      --i;
      continue;
    }
    rev.push_back({EditOp::kInsertion, std::nullopt, hyp[j - 1]});
    --j;
  }
  result.ops.assign(rev.rbegin(), rev.rend());
  return result;
}

}  // namespace asrtk
