// retrieval.hpp
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

#ifndef ASRTK_RETRIEVAL_HPP_
#define ASRTK_RETRIEVAL_HPP_

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "asrtk/ngram_train.hpp"
#include "asrtk/stm.hpp"

namespace asrtk {

// Closed captions of one recording, concatenated on the original timeline.
struct Caption {
  double nominal_start = 0.0;
  double nominal_end = 0.0;
  std::vector<std::string> text;
};

struct CaptionCorpus {
  std::string recording_id;
  std::vector<Caption> captions;  // ordered by nominal_start

  std::vector<std::string> all_words() const;
  double nominal_seconds() const;
};

struct TimedWord {
  std::string word;
  double start = 0.0;
  double duration = 0.0;
};

struct NBestEntry {
  std::vector<TimedWord> words;
  double score = 0.0;  // log-domain recognizer score
};

struct NBestList {
  std::string recording_id;
  std::vector<NBestEntry> entries;  // sorted by score, best first
};

struct RetrievalConfig {
  int biased_lm_order = 7;
  double lm_weight = 10.0;
  double hyp_weight = 1.0;  // must stay below lm_weight
  double max_segment_gap = 0.5;   // seconds
  double max_segment_len = 15.0;  // seconds
  double segment_wer_threshold = 10.0;  // percent
  int passes = 2;
  int threads = 0;
  Smoothing lm_smoothing = Smoothing::kWittenBell;
};

struct RetrievedSegment {
  std::string recording_id;
  double start = 0.0;
  double end = 0.0;
  std::vector<std::string> text;  // recognizer words, recognizer timings
  double segment_wer = 0.0;       // vs. the matched caption span
  int pass_id = 1;
};

// Trains the per-recording biased LM on the concatenated caption text.
NgramModel build_biased_lm(const CaptionCorpus& corpus, int order,
                           Smoothing smoothing = Smoothing::kWittenBell);

// Rescales every entry as hyp_weight * score + lm_weight * lm log10 prob and
// re-sorts best first (stable).
NBestList rescore_nbest(const NBestList& nbest, const NgramModel& lm,
                        const RetrievalConfig& config);

struct OracleChoice {
  std::vector<TimedWord> words;
  int edit_cost = 0;
  std::size_t entry_index = 0;  // index into the rescored list
};

// Entry minimizing edit cost against the concatenated captions; ties keep the
// best rescored rank.
OracleChoice oracle_select(const NBestList& rescored, const CaptionCorpus& captions);

// Splits the chosen words at time gaps > max_segment_gap or when a segment
// would exceed max_segment_len, aligns each piece to its caption span from
// the global alignment, and drops pieces whose WER exceeds the threshold.
std::vector<RetrievedSegment> segment_words(const std::vector<TimedWord>& chosen,
                                            const CaptionCorpus& captions,
                                            const RetrievalConfig& config, int pass_id);

struct ShowStats {
  double original_seconds = 0.0;
  double retained_seconds = 0.0;

  double retained_fraction() const {
    return original_seconds > 0 ? retained_seconds / original_seconds : 0.0;
  }
};

struct PassStats {
  int pass_id = 1;
  double original_seconds = 0.0;
  double retained_seconds = 0.0;
  std::size_t segments_retained = 0;
  std::map<std::string, ShowStats> per_show;
  std::vector<std::string> warnings;

  double retained_fraction() const {
    return original_seconds > 0 ? retained_seconds / original_seconds : 0.0;
  }
};

struct PassResult {
  std::vector<RetrievedSegment> segments;
  PassStats stats;
};

// One retrieval pass over matched (nbest, captions) recordings. Recordings
// without captions are skipped with a warning.
PassResult run_pass(const std::vector<NBestList>& nbest,
                    const std::vector<CaptionCorpus>& captions,
                    const RetrievalConfig& config, int pass_id = 1);
PassResult run_pass_serial(const std::vector<NBestList>& nbest,
                           const std::vector<CaptionCorpus>& captions,
                           const RetrievalConfig& config, int pass_id = 1);

struct MultiPassResult {
  std::vector<PassResult> passes;  // one per pass, in order
};

// Runs one pass per n-best set (pass 2 inputs come from a recognizer
// retrained outside this toolkit; a third set is accepted the same way).
MultiPassResult run_two_pass(const std::vector<std::vector<NBestList>>& per_pass_nbest,
                             const std::vector<CaptionCorpus>& captions,
                             const RetrievalConfig& config);

// JSON-lines n-best I/O: one object per recording,
// {"recording_id": ..., "entries": [{"score": s, "words": [{"w": ..,
// "start": .., "dur": ..}, ...]}, ...]}.
std::vector<NBestList> read_nbest_jsonl(std::istream& in);
std::vector<NBestList> read_nbest_jsonl_file(const std::string& path);
void write_nbest_jsonl(const std::vector<NBestList>& lists, std::ostream& out);

// Groups STM segments into per-recording caption corpora (segment text =
// caption text, times = nominal caption times).
std::vector<CaptionCorpus> captions_from_stm(const std::vector<StmSegment>& segments);

// Retained segments as STM spans.
std::vector<StmSegment> segments_to_stm(const std::vector<RetrievedSegment>& segments,
                                        const std::string& speaker = "retrieved");

}  // namespace asrtk

#endif  // ASRTK_RETRIEVAL_HPP_
