// rover.cpp
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

#include "asrtk/rover.hpp"

#include <algorithm>
#include <map>
#include <utility>

#include "asrtk/errors.hpp"
#include "asrtk/parallel.hpp"

namespace asrtk {
namespace {

struct Candidate {
  int count = 0;
  double max_confidence = 0.0;
  int priority = 1 << 30;  // lower wins ties
  double earliest_start = 0.0;
  double longest_duration = 0.0;
};

std::vector<int> priority_by_system(const Wtn& wtn, const VoteConfig& config) {
  // rank[k] = priority of wtn.system_ids[k]; tie_break lists system ids in
  // decreasing priority, unlisted systems follow in merge order.
  std::vector<int> rank(wtn.system_ids.size(), -1);
  int next = 0;
  for (int id : config.tie_break) {
    for (std::size_t k = 0; k < wtn.system_ids.size(); ++k)
      if (wtn.system_ids[k] == id && rank[k] < 0) rank[k] = next++;
  }
  for (std::size_t k = 0; k < wtn.system_ids.size(); ++k)
    if (rank[k] < 0) rank[k] = next++;
  return rank;
}

}  // namespace

CtmFile vote(const Wtn& wtn, const VoteConfig& config, RecordingTrace* trace) {
  if (config.alpha < 0.0 || config.alpha > 1.0)
    throw ValidationError("alpha must lie in [0, 1]");
  if (config.null_confidence < 0.0 || config.null_confidence > 1.0)
    throw ValidationError("null confidence must lie in [0, 1]");

  const int n_systems = wtn.n_systems();
  std::vector<int> rank = priority_by_system(wtn, config);

  if (trace) {
    trace->recording_id = wtn.recording_id;
    trace->channel = wtn.channel;
    trace->sets.clear();
  }

  std::vector<WordToken> tokens;
  for (const CorrespondenceSet& set : wtn.sets) {
    // "" keys the NULL candidate; CTM words are never empty.
    std::map<std::string, Candidate> candidates;
    for (std::size_t k = 0; k < set.arcs.size(); ++k) {
      const WtnArc& arc = set.arcs[k];
      const std::string key = arc.is_null() ? std::string() : *arc.word;
      auto [it, fresh] = candidates.try_emplace(key);
      Candidate& cand = it->second;
      const double conf = arc.is_null() ? config.null_confidence : arc.confidence;
      if (fresh || arc.start < cand.earliest_start) cand.earliest_start = arc.start;
      cand.count += 1;
      cand.max_confidence = std::max(cand.max_confidence, conf);
      cand.longest_duration = std::max(cand.longest_duration, arc.duration);
      cand.priority = std::min(cand.priority, rank[k]);
    }

    const std::string* winner = nullptr;
    double winner_score = 0.0;
    int winner_priority = 0;
    SetTrace set_trace;
    for (const auto& [word, cand] : candidates) {
      double score = config.alpha * (static_cast<double>(cand.count) / n_systems) +
                     (1.0 - config.alpha) * cand.max_confidence;
      if (trace)
        set_trace.candidates.push_back({word, cand.count, cand.max_confidence, score});
      if (!winner || score > winner_score ||
          (score == winner_score && cand.priority < winner_priority)) {
        winner = &word;
        winner_score = score;
        winner_priority = cand.priority;
      }
    }

    if (trace) {
      set_trace.winner = *winner;
      trace->sets.push_back(std::move(set_trace));
    }
    if (winner->empty()) continue;  // NULL wins: emit nothing

    const Candidate& cand = candidates[*winner];
    WordToken tok;
    tok.recording_id = wtn.recording_id;
    tok.channel = wtn.channel;
    tok.word = *winner;
    tok.start = cand.earliest_start;
    tok.duration = cand.longest_duration;
    tok.confidence = std::clamp(winner_score, 0.0, 1.0);
    tokens.push_back(std::move(tok));
  }
  return CtmFile::from_tokens(std::move(tokens));
}

namespace {

struct Group {
  std::string recording_id;
  std::string channel;
  std::vector<std::vector<const WordToken*>> per_system;
};

CtmFile fuse_impl(const std::vector<CtmFile>& systems, const VoteConfig& config,
                  FusionReport* report, bool want_trace, bool parallel) {
  if (systems.size() < 2) throw ValidationError("ROVER fusion requires at least 2 systems");

  std::map<std::pair<std::string, std::string>, Group> groups;
  for (std::size_t s = 0; s < systems.size(); ++s) {
    for (const WordToken& tok : systems[s].tokens) {
      Group& g = groups[{tok.recording_id, tok.channel}];
      if (g.per_system.empty()) {
        g.recording_id = tok.recording_id;
        g.channel = tok.channel;
        g.per_system.resize(systems.size());
      }
      g.per_system[s].push_back(&tok);
    }
  }

  if (report) {
    report->system_order.clear();
    for (std::size_t s = 0; s < systems.size(); ++s)
      report->system_order.push_back(static_cast<int>(s));
    for (const auto& [key, g] : groups) {
      for (std::size_t s = 0; s < systems.size(); ++s) {
        if (g.per_system[s].empty())
          report->warnings.push_back("recording '" + key.first + "' channel '" + key.second +
                                     "' missing from system " + std::to_string(s) +
                                     "; it contributes NULL arcs");
      }
    }
  }

  std::vector<const Group*> ordered;
  ordered.reserve(groups.size());
  for (const auto& [key, g] : groups) ordered.push_back(&g);

  std::vector<std::vector<WordToken>> fused(ordered.size());
  std::vector<RecordingTrace> traces(want_trace ? ordered.size() : 0);
  parallel_for(ordered.size(), parallel ? config.threads : 1, [&](std::size_t gi) {
    const Group& g = *ordered[gi];
    std::vector<WordToken> sys0;
    for (const WordToken* t : g.per_system[0]) sys0.push_back(*t);
    Wtn wtn = wtn_from_ctm(sys0, 0);
    wtn.recording_id = g.recording_id;
    wtn.channel = g.channel;
    for (std::size_t s = 1; s < g.per_system.size(); ++s) {
      std::vector<WordToken> hyp;
      for (const WordToken* t : g.per_system[s]) hyp.push_back(*t);
      wtn = wtn_merge(wtn, hyp, static_cast<int>(s), config.merge).wtn;
    }
    CtmFile voted = vote(wtn, config, want_trace ? &traces[gi] : nullptr);
    fused[gi] = std::move(voted.tokens);
  });

  std::vector<WordToken> all;
  for (auto& part : fused) all.insert(all.end(), part.begin(), part.end());
  if (report && want_trace) report->traces = std::move(traces);
  return CtmFile::from_tokens(std::move(all));
}

}  // namespace

CtmFile rover_fuse(const std::vector<CtmFile>& systems, const VoteConfig& config,
                   FusionReport* report, bool want_trace) {
  return fuse_impl(systems, config, report, want_trace, true);
}

CtmFile rover_fuse_serial(const std::vector<CtmFile>& systems, const VoteConfig& config,
                          FusionReport* report, bool want_trace) {
  return fuse_impl(systems, config, report, want_trace, false);
}

}  // namespace asrtk
