// retrieval.cpp
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

#include "asrtk/retrieval.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "asrtk/alignment.hpp"
#include "asrtk/errors.hpp"
#include "asrtk/parallel.hpp"

namespace asrtk {

using nlohmann::json;

std::vector<std::string> CaptionCorpus::all_words() const {
  std::vector<std::string> words;
  for (const Caption& c : captions) words.insert(words.end(), c.text.begin(), c.text.end());
  return words;
}

double CaptionCorpus::nominal_seconds() const {
  double total = 0.0;
  for (const Caption& c : captions) total += std::max(0.0, c.nominal_end - c.nominal_start);
  return total;
}

NgramModel build_biased_lm(const CaptionCorpus& corpus, int order, Smoothing smoothing) {
  std::vector<Sentence> sentences;
  for (const Caption& c : corpus.captions)
    if (!c.text.empty()) sentences.push_back(c.text);
  if (sentences.empty())
    throw ValidationError("recording '" + corpus.recording_id + "' has no caption text");
  TrainConfig config;
  config.order = order;
  config.smoothing = smoothing;
  config.threads = 1;  // per-recording models are tiny; parallelism is outside
  return train(sentences, config);
}

NBestList rescore_nbest(const NBestList& nbest, const NgramModel& lm,
                        const RetrievalConfig& config) {
  NBestList out;
  out.recording_id = nbest.recording_id;
  out.entries = nbest.entries;
  std::vector<double> rescored(out.entries.size());
  for (std::size_t i = 0; i < out.entries.size(); ++i) {
    std::vector<std::string> words;
    words.reserve(out.entries[i].words.size());
    for (const TimedWord& w : out.entries[i].words) words.push_back(w.word);
    double lm_log10 = lm.sentence_log10(words);
    rescored[i] = config.hyp_weight * out.entries[i].score + config.lm_weight * lm_log10;
  }
  std::vector<std::size_t> index(out.entries.size());
  for (std::size_t i = 0; i < index.size(); ++i) index[i] = i;
  std::stable_sort(index.begin(), index.end(),
                   [&](std::size_t a, std::size_t b) { return rescored[a] > rescored[b]; });
  NBestList sorted;
  sorted.recording_id = out.recording_id;
  sorted.entries.reserve(out.entries.size());
  for (std::size_t i : index) {
    NBestEntry entry = std::move(out.entries[i]);
    entry.score = rescored[i];
    sorted.entries.push_back(std::move(entry));
  }
  return sorted;
}

OracleChoice oracle_select(const NBestList& rescored, const CaptionCorpus& captions) {
  if (rescored.entries.empty())
    throw ValidationError("empty n-best list for recording '" + rescored.recording_id + "'");
  const std::vector<std::string> ref = captions.all_words();
  OracleChoice best;
  bool have = false;
  for (std::size_t i = 0; i < rescored.entries.size(); ++i) {
    std::vector<std::string> hyp;
    hyp.reserve(rescored.entries[i].words.size());
    for (const TimedWord& w : rescored.entries[i].words) hyp.push_back(w.word);
    int cost = align_words(ref, hyp).total_cost;
    if (!have || cost < best.edit_cost) {
      best.words = rescored.entries[i].words;
      best.edit_cost = cost;
      best.entry_index = i;
      have = true;
    }
  }
  return best;
}

std::vector<RetrievedSegment> segment_words(const std::vector<TimedWord>& chosen,
                                            const CaptionCorpus& captions,
                                            const RetrievalConfig& config, int pass_id) {
  std::vector<RetrievedSegment> segments;
  if (chosen.empty()) return segments;

  const std::vector<std::string> ref = captions.all_words();
  std::vector<std::string> hyp;
  hyp.reserve(chosen.size());
  for (const TimedWord& w : chosen) hyp.push_back(w.word);
  Alignment global = align_words(ref, hyp);

  // Per hyp word, the ref position it aligns to (-1 for insertions).
  std::vector<long> hyp_to_ref(hyp.size(), -1);
  {
    std::size_t r = 0, h = 0;
    for (const AlignmentOp& op : global.ops) {
      switch (op.kind) {
        case EditOp::kCorrect:
        case EditOp::kSubstitution:
          hyp_to_ref[h] = static_cast<long>(r);
          ++r;
          ++h;
          break;
        case EditOp::kDeletion:
          ++r;
          break;
        case EditOp::kInsertion:
          ++h;
          break;
      }
    }
  }

  // Split into word runs on time gaps and the segment-length cap.
  std::vector<std::pair<std::size_t, std::size_t>> runs;  // [first, last]
  std::size_t first = 0;
  for (std::size_t i = 1; i <= chosen.size(); ++i) {
    bool split = i == chosen.size();
    if (!split) {
      const TimedWord& prev = chosen[i - 1];
      const TimedWord& cur = chosen[i];
      double gap = cur.start - (prev.start + prev.duration);
      double would_span = cur.start + cur.duration - chosen[first].start;
      split = gap > config.max_segment_gap || would_span > config.max_segment_len;
    }
    if (split) {
      runs.emplace_back(first, i - 1);
      first = i;
    }
  }

  for (auto [h0, h1] : runs) {
    long r_lo = -1, r_hi = -1;
    for (std::size_t h = h0; h <= h1; ++h) {
      if (hyp_to_ref[h] < 0) continue;
      if (r_lo < 0) r_lo = hyp_to_ref[h];
      r_hi = hyp_to_ref[h];
    }
    std::vector<std::string> segment_text;
    for (std::size_t h = h0; h <= h1; ++h) segment_text.push_back(hyp[h]);

    double wer;
    if (r_lo < 0) {
      // Nothing aligned: pure insertion against the captions.
      wer = 100.0 * static_cast<double>(segment_text.size());
    } else {
      std::span<const std::string> span_ref(ref.data() + r_lo, r_hi - r_lo + 1);
      Alignment local = align_words(span_ref, segment_text);
      std::int64_t errors = 0;
      for (const AlignmentOp& op : local.ops)
        if (op.kind != EditOp::kCorrect) ++errors;
      wer = 100.0 * static_cast<double>(errors) / static_cast<double>(span_ref.size());
    }
    if (wer > config.segment_wer_threshold) continue;

    RetrievedSegment seg;
    seg.recording_id = captions.recording_id;
    seg.start = chosen[h0].start;
    seg.end = chosen[h1].start + chosen[h1].duration;
    seg.text = std::move(segment_text);
    seg.segment_wer = wer;
    seg.pass_id = pass_id;
    segments.push_back(std::move(seg));
  }
  return segments;
}

namespace {

PassResult run_pass_impl(const std::vector<NBestList>& nbest,
                         const std::vector<CaptionCorpus>& captions,
                         const RetrievalConfig& config, int pass_id, bool parallel) {
  // The recognizer score must stay subordinate to the biased LM.
  if (config.hyp_weight >= config.lm_weight)
    throw ValidationError("hyp_weight must stay below lm_weight");
  PassResult result;
  result.stats.pass_id = pass_id;

  std::map<std::string, const CaptionCorpus*> caption_index;
  for (const CaptionCorpus& c : captions) caption_index[c.recording_id] = &c;

  for (const CaptionCorpus& c : captions) {
    double secs = c.nominal_seconds();
    result.stats.original_seconds += secs;
    result.stats.per_show[c.recording_id].original_seconds += secs;
  }

  struct Job {
    const NBestList* nbest = nullptr;
    const CaptionCorpus* captions = nullptr;
  };
  std::vector<Job> jobs;
  for (const NBestList& list : nbest) {
    auto it = caption_index.find(list.recording_id);
    if (it == caption_index.end()) {
      result.stats.warnings.push_back("recording '" + list.recording_id +
                                      "' has no captions; skipped");
      continue;
    }
    if (list.entries.empty()) {
      result.stats.warnings.push_back("recording '" + list.recording_id +
                                      "' has an empty n-best list; skipped");
      continue;
    }
    if (it->second->all_words().empty()) {
      result.stats.warnings.push_back("recording '" + list.recording_id +
                                      "' has empty caption text; skipped");
      continue;
    }
    jobs.push_back({&list, it->second});
  }

  std::vector<std::vector<RetrievedSegment>> per_job(jobs.size());
  parallel_for(jobs.size(), parallel ? config.threads : 1, [&](std::size_t i) {
    const Job& job = jobs[i];
    NgramModel lm = build_biased_lm(*job.captions, config.biased_lm_order, config.lm_smoothing);
    NBestList rescored = rescore_nbest(*job.nbest, lm, config);
    OracleChoice choice = oracle_select(rescored, *job.captions);
    per_job[i] = segment_words(choice.words, *job.captions, config, pass_id);
  });

  for (std::vector<RetrievedSegment>& segs : per_job) {
    for (RetrievedSegment& seg : segs) {
      double secs = std::max(0.0, seg.end - seg.start);
      result.stats.retained_seconds += secs;
      result.stats.per_show[seg.recording_id].retained_seconds += secs;
      ++result.stats.segments_retained;
      result.segments.push_back(std::move(seg));
    }
  }
  return result;
}

}  // namespace

PassResult run_pass(const std::vector<NBestList>& nbest,
                    const std::vector<CaptionCorpus>& captions, const RetrievalConfig& config,
                    int pass_id) {
  return run_pass_impl(nbest, captions, config, pass_id, true);
}

PassResult run_pass_serial(const std::vector<NBestList>& nbest,
                           const std::vector<CaptionCorpus>& captions,
                           const RetrievalConfig& config, int pass_id) {
  return run_pass_impl(nbest, captions, config, pass_id, false);
}

MultiPassResult run_two_pass(const std::vector<std::vector<NBestList>>& per_pass_nbest,
                             const std::vector<CaptionCorpus>& captions,
                             const RetrievalConfig& config) {
  if (per_pass_nbest.empty()) throw ValidationError("no n-best inputs given");
  const std::size_t n_passes =
      std::min<std::size_t>(per_pass_nbest.size(), static_cast<std::size_t>(config.passes));
  MultiPassResult result;
  for (std::size_t p = 0; p < n_passes; ++p)
    result.passes.push_back(
        run_pass(per_pass_nbest[p], captions, config, static_cast<int>(p) + 1));
  return result;
}

std::vector<NBestList> read_nbest_jsonl(std::istream& in) {
  std::vector<NBestList> lists;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    json obj = json::parse(line, nullptr, false);
    if (obj.is_discarded()) throw ParseError("invalid JSON object", lineno);
    if (!obj.is_object() || !obj.contains("recording_id") || !obj.contains("entries"))
      throw ParseError("expected {recording_id, entries}", lineno);
    NBestList list;
    list.recording_id = obj["recording_id"].get<std::string>();
    for (const json& e : obj["entries"]) {
      NBestEntry entry;
      entry.score = e.value("score", 0.0);
      if (e.contains("words")) {
        for (const json& w : e["words"]) {
          TimedWord tw;
          tw.word = w.at("w").get<std::string>();
          tw.start = w.value("start", 0.0);
          tw.duration = w.value("dur", 0.0);
          entry.words.push_back(std::move(tw));
        }
      }
      list.entries.push_back(std::move(entry));
    }
    std::stable_sort(list.entries.begin(), list.entries.end(),
                     [](const NBestEntry& a, const NBestEntry& b) { return a.score > b.score; });
    lists.push_back(std::move(list));
  }
  return lists;
}

std::vector<NBestList> read_nbest_jsonl_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open n-best file: " + path);
  return read_nbest_jsonl(in);
}

void write_nbest_jsonl(const std::vector<NBestList>& lists, std::ostream& out) {
  for (const NBestList& list : lists) {
    json entries = json::array();
    for (const NBestEntry& e : list.entries) {
      json words = json::array();
      for (const TimedWord& w : e.words)
        words.push_back({{"w", w.word}, {"start", w.start}, {"dur", w.duration}});
      entries.push_back({{"score", e.score}, {"words", std::move(words)}});
    }
    out << json{{"recording_id", list.recording_id}, {"entries", std::move(entries)}}.dump()
        << '\n';
  }
}

std::vector<CaptionCorpus> captions_from_stm(const std::vector<StmSegment>& segments) {
  std::vector<CaptionCorpus> corpora;
  std::map<std::string, std::size_t> index;
  for (const StmSegment& seg : segments) {
    auto [it, fresh] = index.try_emplace(seg.recording_id, corpora.size());
    if (fresh) corpora.push_back(CaptionCorpus{seg.recording_id, {}});
    corpora[it->second].captions.push_back(Caption{seg.start, seg.end, seg.text});
  }
  for (CaptionCorpus& c : corpora)
    std::stable_sort(c.captions.begin(), c.captions.end(),
                     [](const Caption& a, const Caption& b) {
                       return a.nominal_start < b.nominal_start;
                     });
  return corpora;
}

std::vector<StmSegment> segments_to_stm(const std::vector<RetrievedSegment>& segments,
                                        const std::string& speaker) {
  std::vector<StmSegment> out;
  out.reserve(segments.size());
  for (const RetrievedSegment& seg : segments) {
    StmSegment s;
    s.recording_id = seg.recording_id;
    s.channel = "1";
    s.speaker = speaker;
    s.start = seg.start;
    s.end = seg.end;
    s.text = seg.text;
    out.push_back(std::move(s));
  }
  return out;
}

}  // namespace asrtk
