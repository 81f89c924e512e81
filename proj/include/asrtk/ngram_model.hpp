// ngram_model.hpp
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

#ifndef ASRTK_NGRAM_MODEL_HPP_
#define ASRTK_NGRAM_MODEL_HPP_

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <unordered_map>
#include <vector>

#include "asrtk/vocab.hpp"

namespace asrtk {

using NgramKey = std::vector<WordId>;

struct NgramKeyHash {
  std::size_t operator()(const NgramKey& key) const {
    // FNV-1a over the id bytes.
    std::size_t h = 14695981039346656037ull;
    for (WordId id : key) {
      for (int b = 0; b < 4; ++b) {
        h ^= (id >> (8 * b)) & 0xFF;
        h *= 1099511628211ull;
      }
    }
    return h;
  }
};

struct NgramEntry {
  double log10_prob = 0.0;
  double log10_bow = 0.0;
  bool has_bow = false;
};

// Back-off n-gram model over log10 probabilities. Entries of every order
// below the top carry a back-off weight; conditional probabilities of unseen
// continuations recurse through the back-off chain down to the unigram level.
class NgramModel {
 public:
  // Stored log10 value standing in for probability zero.
  static constexpr double kLog10Floor = -99.0;

  explicit NgramModel(int order);

  int order() const { return order_; }
  Vocabulary& vocab() { return vocab_; }
  const Vocabulary& vocab() const { return vocab_; }

  void set_entry(NgramKey key, double log10_prob, std::optional<double> log10_bow);
  void set_bow(const NgramKey& key, double log10_bow);
  const NgramEntry* find(const NgramKey& key) const;

  std::size_t entry_count(int n) const { return tables_[n - 1].size(); }
  const std::unordered_map<NgramKey, NgramEntry, NgramKeyHash>& table(int n) const {
    return tables_[n - 1];
  }

  // Conditional log10 p(word | context); context longer than order-1 is
  // truncated to its tail. Unseen continuations back off.
  double log10_cond(std::span<const WordId> context, WordId word) const;
  // String variant; words outside the vocabulary map to <unk>.
  double log10_cond(std::span<const std::string> context, const std::string& word) const;

  // Log10 probability of a sentence padded with <s>/</s>, including the
  // sentence-end event.
  double sentence_log10(std::span<const std::string> words) const;

  // Entry pointers at one order, sorted lexicographically by word strings.
  // Deterministic regardless of hash-table state.
  std::vector<const std::pair<const NgramKey, NgramEntry>*> sorted_entries(int n) const;

 private:
  int order_;
  Vocabulary vocab_;
  std::vector<std::unordered_map<NgramKey, NgramEntry, NgramKeyHash>> tables_;
};

struct SequenceScore {
  double log10_prob = 0.0;
  std::size_t n_events = 0;  // words plus one sentence-end per sentence
  std::size_t n_oov = 0;
};

using Sentence = std::vector<std::string>;

SequenceScore score_sentences(const NgramModel& model, const std::vector<Sentence>& sentences);

// 10^(-(1/N) * sum log10 p), N counting words plus sentence-end markers.
double perplexity(const NgramModel& model, const std::vector<Sentence>& sentences);

// Recomputes back-off weights for every stored context of the given length so
// that each context's probabilities sum to one over the vocabulary. Stored
// probabilities at length+1 and the full conditionals below the context
// length must already be in place.
void compute_backoff_weights(NgramModel& model, int context_len);

// Sums p(w | context) over the whole predicted vocabulary (everything except
// <s>). Used by normalization checks.
double context_probability_mass(const NgramModel& model, std::span<const WordId> context);

}  // namespace asrtk

#endif  // ASRTK_NGRAM_MODEL_HPP_
