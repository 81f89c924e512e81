// wer.cpp
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

#include "asrtk/wer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "asrtk/parallel.hpp"

namespace asrtk {

double WerReport::wer() const {
  if (n_ref == 0) return n_ins > 0 ? std::numeric_limits<double>::infinity() : 0.0;
  return 100.0 * static_cast<double>(n_sub + n_ins + n_del) / static_cast<double>(n_ref);
}

void WerReport::add(const WerReport& other) {
  n_ref += other.n_ref;
  n_cor += other.n_cor;
  n_sub += other.n_sub;
  n_ins += other.n_ins;
  n_del += other.n_del;
}

double round_display(double value, int decimals) {
  double scale = std::pow(10.0, decimals);
  double scaled = value * scale;
  double rounded = scaled >= 0 ? std::floor(scaled + 0.5) : std::ceil(scaled - 0.5);
  return rounded / scale;
}

namespace {

struct RecordingInput {
  std::vector<const StmSegment*> segments;  // sorted by (start, end)
  std::vector<const WordToken*> tokens;     // canonical CTM order
};

WerReport counts_from_ops(const std::vector<AlignmentOp>& ops, const std::string& marker) {
  WerReport r;
  for (const AlignmentOp& op : ops) {
    if (op.ref_word && *op.ref_word == marker) continue;  // non-scored
    switch (op.kind) {
      case EditOp::kCorrect:
        ++r.n_cor;
        ++r.n_ref;
        break;
      case EditOp::kSubstitution:
        ++r.n_sub;
        ++r.n_ref;
        break;
      case EditOp::kDeletion:
        ++r.n_del;
        ++r.n_ref;
        break;
      case EditOp::kInsertion:
        ++r.n_ins;
        break;
    }
  }
  return r;
}

WerReport score_recording(const RecordingInput& input, const ScoreConfig& config) {
  WerReport counts;
  // Bucket tokens by containing segment (midpoint rule); leftovers go to the
  // nearest segment as pure insertions.
  std::vector<std::vector<const WordToken*>> assigned(input.segments.size());
  for (const WordToken* tok : input.tokens) {
    const double mid = tok->midpoint();
    std::size_t where = input.segments.size();
    for (std::size_t s = 0; s < input.segments.size(); ++s) {
      if (mid >= input.segments[s]->start && mid < input.segments[s]->end) {
        where = s;
        break;
      }
    }
    if (where == input.segments.size()) {
      // Unmatched: count as one insertion (attributed to the nearest segment,
      // which only matters for bookkeeping, not for the totals).
      ++counts.n_ins;
      continue;
    }
    assigned[where].push_back(tok);
  }

  for (std::size_t s = 0; s < input.segments.size(); ++s) {
    const StmSegment& seg = *input.segments[s];
    std::vector<std::string> hyp_words;
    hyp_words.reserve(assigned[s].size());
    for (const WordToken* tok : assigned[s]) hyp_words.push_back(tok->word);
    std::vector<char> optional_mask(seg.text.size(), 0);
    bool any_optional = false;
    for (std::size_t i = 0; i < seg.text.size(); ++i) {
      if (seg.text[i] == config.non_scored_marker) {
        optional_mask[i] = 1;
        any_optional = true;
      }
    }
    Alignment alignment =
        align_words(seg.text, hyp_words, config.costs,
                    any_optional ? std::span<const char>(optional_mask)
                                 : std::span<const char>());
    counts.add(counts_from_ops(alignment.ops, config.non_scored_marker));
  }
  return counts;
}

ScoreResult score_impl(const std::vector<StmSegment>& refs, const CtmFile& hyp,
                       const ScoreConfig& config, bool parallel) {
  std::map<std::string, RecordingInput> recordings;
  for (const StmSegment& seg : refs) recordings[seg.recording_id].segments.push_back(&seg);
  for (auto& [id, input] : recordings) {
    (void)id;
    std::stable_sort(input.segments.begin(), input.segments.end(),
                     [](const StmSegment* a, const StmSegment* b) {
                       if (a->start != b->start) return a->start < b->start;
                       return a->end < b->end;
                     });
  }

  ScoreResult result;
  for (const WordToken& tok : hyp.tokens) {
    auto it = recordings.find(tok.recording_id);
    if (it == recordings.end()) {
      auto& rec = result.per_recording[tok.recording_id];
      rec.ref_missing = true;
      ++rec.counts.n_ins;
      continue;
    }
    it->second.tokens.push_back(&tok);
  }
  for (auto& [id, rec] : result.per_recording)
    result.warnings.push_back("hypothesis recording '" + id +
                              "' absent from references; scored as insertions");

  std::vector<std::pair<const std::string*, const RecordingInput*>> work;
  work.reserve(recordings.size());
  for (auto& [id, input] : recordings) work.emplace_back(&id, &input);
  std::vector<WerReport> reports(work.size());
  parallel_for(work.size(), parallel ? config.threads : 1,
               [&](std::size_t i) { reports[i] = score_recording(*work[i].second, config); });

  for (std::size_t i = 0; i < work.size(); ++i)
    result.per_recording[*work[i].first].counts = reports[i];
  for (const auto& [id, rec] : result.per_recording) {
    (void)id;
    result.total.add(rec.counts);
  }
  return result;
}

}  // namespace

ScoreResult score_wer(const std::vector<StmSegment>& refs, const CtmFile& hyp,
                      const ScoreConfig& config) {
  return score_impl(refs, hyp, config, true);
}

ScoreResult score_wer_serial(const std::vector<StmSegment>& refs, const CtmFile& hyp,
                             const ScoreConfig& config) {
  return score_impl(refs, hyp, config, false);
}

}  // namespace asrtk
