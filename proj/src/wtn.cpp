// wtn.cpp
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

#include "asrtk/wtn.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "asrtk/errors.hpp"

namespace asrtk {

double CorrespondenceSet::representative_midpoint() const {
  double sum = 0.0;
  int n = 0;
  for (const WtnArc& arc : arcs) {
    if (!arc.is_null()) {
      sum += arc.midpoint();
      ++n;
    }
  }
  return n > 0 ? sum / n : 0.0;
}

bool CorrespondenceSet::contains_word(const std::string& w) const {
  for (const WtnArc& arc : arcs)
    if (!arc.is_null() && *arc.word == w) return true;
  return false;
}

namespace {

// Wtn invariant: sets ordered by representative time. The merge DP preserves
// the relative order of both inputs, but averaging arc times across systems
// can still produce local inversions, so the order is re-established here.
void sort_sets_by_time(Wtn& wtn) {
  std::stable_sort(wtn.sets.begin(), wtn.sets.end(),
                   [](const CorrespondenceSet& a, const CorrespondenceSet& b) {
                     return a.representative_midpoint() < b.representative_midpoint();
                   });
}

}  // namespace

Wtn wtn_from_ctm(std::span<const WordToken> tokens, int system_id) {
  Wtn wtn;
  wtn.system_ids = {system_id};
  if (!tokens.empty()) {
    wtn.recording_id = tokens.front().recording_id;
    wtn.channel = tokens.front().channel;
  }
  wtn.sets.reserve(tokens.size());
  for (const WordToken& tok : tokens) {
    CorrespondenceSet set;
    set.arcs.push_back(
        {tok.word, tok.confidence_or_default(), system_id, tok.start, tok.duration});
    wtn.sets.push_back(std::move(set));
  }
  sort_sets_by_time(wtn);
  return wtn;
}

namespace {

constexpr int kInf = std::numeric_limits<int>::max() / 4;

WtnArc null_arc(int system_id) {
  WtnArc arc;
  arc.word = std::nullopt;
  arc.confidence = 0.0;
  arc.system_id = system_id;
  return arc;
}

}  // namespace

MergeOutcome wtn_merge(const Wtn& base, std::span<const WordToken> hyp, int system_id,
                       const MergeConfig& config) {
  for (int id : base.system_ids)
    if (id == system_id) throw ValidationError("system already merged into WTN");

  const std::size_t b = base.sets.size();
  const std::size_t h = hyp.size();

  std::vector<double> set_mid(b);
  for (std::size_t i = 0; i < b; ++i) set_mid[i] = base.sets[i].representative_midpoint();

  // dp sized (b+1) x (h+1); diagonal moves are barred outside the time window.
  std::vector<int> dp((b + 1) * (h + 1), kInf);
  auto at = [h](std::size_t i, std::size_t j) { return i * (h + 1) + j; };
  dp[at(0, 0)] = 0;
  for (std::size_t i = 1; i <= b; ++i) dp[at(i, 0)] = dp[at(i - 1, 0)] + config.costs.deletion;
  for (std::size_t j = 1; j <= h; ++j) dp[at(0, j)] = dp[at(0, j - 1)] + config.costs.insertion;

  auto diag_cost = [&](std::size_t i, std::size_t j) -> int {
    if (std::abs(set_mid[i - 1] - hyp[j - 1].midpoint()) >= config.max_time_gap) return kInf;
    return base.sets[i - 1].contains_word(hyp[j - 1].word) ? 0 : config.costs.substitution;
  };

  for (std::size_t i = 1; i <= b; ++i) {
    for (std::size_t j = 1; j <= h; ++j) {
      int best = kInf;
      int dc = diag_cost(i, j);
      if (dc < kInf) best = dp[at(i - 1, j - 1)] + dc;
      best = std::min(best, dp[at(i - 1, j)] + config.costs.deletion);
      best = std::min(best, dp[at(i, j - 1)] + config.costs.insertion);
      dp[at(i, j)] = best;
    }
  }

  // Backtrace with the match > deletion > insertion preference.
  std::vector<CorrespondenceSet> rev_sets;
  std::size_t i = b, j = h;
  while (i > 0 || j > 0) {
    if (i > 0 && j > 0) {
      int dc = diag_cost(i, j);
      if (dc < kInf && dp[at(i, j)] == dp[at(i - 1, j - 1)] + dc) {
        CorrespondenceSet set = base.sets[i - 1];
        const WordToken& tok = hyp[j - 1];
        set.arcs.push_back(
            {tok.word, tok.confidence_or_default(), system_id, tok.start, tok.duration});
        rev_sets.push_back(std::move(set));
        --i;
        --j;
        continue;
      }
    }
    if (i > 0 && dp[at(i, j)] == dp[at(i - 1, j)] + config.costs.deletion) {
      CorrespondenceSet set = base.sets[i - 1];
      set.arcs.push_back(null_arc(system_id));
      rev_sets.push_back(std::move(set));
      --i;
      continue;
    }
    CorrespondenceSet set;
    for (int id : base.system_ids) set.arcs.push_back(null_arc(id));
    const WordToken& tok = hyp[j - 1];
    set.arcs.push_back(
        {tok.word, tok.confidence_or_default(), system_id, tok.start, tok.duration});
    rev_sets.push_back(std::move(set));
    --j;
  }

  MergeOutcome outcome;
  outcome.alignment_cost = dp[at(b, h)];
  outcome.wtn.system_ids = base.system_ids;
  outcome.wtn.system_ids.push_back(system_id);
  outcome.wtn.recording_id = base.recording_id;
  outcome.wtn.channel = base.channel;
  if (outcome.wtn.recording_id.empty() && !hyp.empty()) {
    outcome.wtn.recording_id = hyp.front().recording_id;
    outcome.wtn.channel = hyp.front().channel;
  }
  outcome.wtn.sets.assign(std::make_move_iterator(rev_sets.rbegin()),
                          std::make_move_iterator(rev_sets.rend()));
  sort_sets_by_time(outcome.wtn);
  return outcome;
}

}  // namespace asrtk
