// ngram_train.hpp
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

#ifndef ASRTK_NGRAM_TRAIN_HPP_
#define ASRTK_NGRAM_TRAIN_HPP_

#include <cstdint>
#include <iosfwd>
#include <unordered_map>
#include <vector>

#include "asrtk/ngram_model.hpp"

namespace asrtk {

enum class Smoothing {
  kWittenBell,  // default; robust on tiny biased corpora
  kAddK,        // add-k, including k = 0 (maximum likelihood)
};

struct TrainConfig {
  int order = 3;
  Smoothing smoothing = Smoothing::kWittenBell;
  double add_k = 0.0;
  bool prune_singletons = false;  // drop count-1 n-grams above order 2
  int threads = 0;
};

using CountTable = std::unordered_map<NgramKey, std::uint64_t, NgramKeyHash>;

// Accumulates n-gram counts of orders 1..order over <s>/</s>-padded
// sentences. The vocabulary is built serially beforehand, so ids and counts
// are identical for any thread count; the parallel version shards the corpus
// and merges per-shard tables.
std::vector<CountTable> count_ngrams(const std::vector<Sentence>& corpus, int order,
                                     Vocabulary& vocab, int threads);
std::vector<CountTable> count_ngrams_serial(const std::vector<Sentence>& corpus, int order,
                                            Vocabulary& vocab);

// Estimates a back-off model from a sentence corpus. Throws ValidationError
// on an empty corpus or order < 1.
NgramModel train(const std::vector<Sentence>& corpus, const TrainConfig& config = {});

// Whitespace-tokenized non-empty lines.
std::vector<Sentence> read_sentences(std::istream& in);
std::vector<Sentence> read_sentences_file(const std::string& path);

}  // namespace asrtk

#endif  // ASRTK_NGRAM_TRAIN_HPP_
