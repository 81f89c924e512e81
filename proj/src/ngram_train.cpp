// ngram_train.cpp
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

#include "asrtk/ngram_train.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "asrtk/errors.hpp"
#include "asrtk/io_util.hpp"
#include "asrtk/parallel.hpp"

namespace asrtk {
namespace {

void count_sentence(const Sentence& sentence, int order, const Vocabulary& vocab,
                    std::vector<CountTable>& tables) {
  NgramKey ids;
  ids.reserve(sentence.size() + 2);
  ids.push_back(Vocabulary::kBosId);
  for (const std::string& w : sentence) ids.push_back(vocab.find_or_unk(w));
  ids.push_back(Vocabulary::kEosId);

  const std::size_t len = ids.size();
  NgramKey key;
  for (std::size_t i = 0; i < len; ++i) {
    key.clear();
    for (int m = 1; m <= order && i + m <= len; ++m) {
      key.push_back(ids[i + m - 1]);
      ++tables[m - 1][key];
    }
  }
}

void merge_tables(std::vector<CountTable>& into, const std::vector<CountTable>& from) {
  for (std::size_t m = 0; m < into.size(); ++m)
    for (const auto& [key, c] : from[m]) into[m][key] += c;
}

}  // namespace

std::vector<CountTable> count_ngrams_serial(const std::vector<Sentence>& corpus, int order,
                                            Vocabulary& vocab) {
  for (const Sentence& s : corpus)
    for (const std::string& w : s) vocab.intern(w);
  std::vector<CountTable> tables(order);
  for (const Sentence& s : corpus) count_sentence(s, order, vocab, tables);
  return tables;
}

std::vector<CountTable> count_ngrams(const std::vector<Sentence>& corpus, int order,
                                     Vocabulary& vocab, int threads) {
  // The vocabulary pass stays serial so word ids are reproducible.
  for (const Sentence& s : corpus)
    for (const std::string& w : s) vocab.intern(w);

  const int n_shards = std::max(1, std::min<int>(effective_threads(threads),
                                                 static_cast<int>(corpus.size())));
  if (n_shards == 1) {
    std::vector<CountTable> tables(order);
    for (const Sentence& s : corpus) count_sentence(s, order, vocab, tables);
    return tables;
  }

  std::vector<std::vector<CountTable>> shards(n_shards, std::vector<CountTable>(order));
  const std::size_t chunk = (corpus.size() + n_shards - 1) / n_shards;
  parallel_for(n_shards, n_shards, [&](std::size_t shard) {
    const std::size_t begin = shard * chunk;
    const std::size_t end = std::min(corpus.size(), begin + chunk);
    for (std::size_t i = begin; i < end; ++i)
      count_sentence(corpus[i], order, vocab, shards[shard]);
  });

  std::vector<CountTable> merged(order);
  for (const auto& shard : shards) merge_tables(merged, shard);
  return merged;
}

namespace {

using SortedCounts = std::vector<std::pair<NgramKey, std::uint64_t>>;

}  // namespace

NgramModel train(const std::vector<Sentence>& corpus, const TrainConfig& config) {
  if (corpus.empty()) throw ValidationError("training corpus is empty");
  if (config.smoothing == Smoothing::kAddK && config.add_k < 0)
    throw ValidationError("add-k smoothing needs k >= 0");

  NgramModel model(config.order);
  std::vector<CountTable> counts =
      count_ngrams(corpus, config.order, model.vocab(), config.threads);

  if (config.prune_singletons) {
    for (int m = 3; m <= config.order; ++m) {
      CountTable& table = counts[m - 1];
      for (auto it = table.begin(); it != table.end();)
        it = it->second == 1 ? table.erase(it) : std::next(it);
    }
  }

  std::vector<SortedCounts> sorted(config.order);
  for (int m = 1; m <= config.order; ++m) {
    sorted[m - 1].assign(counts[m - 1].begin(), counts[m - 1].end());
    std::sort(sorted[m - 1].begin(), sorted[m - 1].end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
  }

  // Unigram level. <s> is context-only: it gets a floor probability and is
  // excluded from the predicted vocabulary.
  std::uint64_t total = 0;
  std::uint64_t observed_types = 0;
  bool unk_observed = false;
  for (const auto& [key, c] : sorted[0]) {
    if (key[0] == Vocabulary::kBosId) continue;
    total += c;
    ++observed_types;
    if (key[0] == Vocabulary::kUnkId) unk_observed = true;
  }
  const double v_predicted = static_cast<double>(observed_types + (unk_observed ? 0 : 1));
  const double t1 = static_cast<double>(observed_types);

  auto unigram_prob = [&](std::uint64_t c) -> double {
    if (config.smoothing == Smoothing::kWittenBell)
      return (static_cast<double>(c) + t1 / v_predicted) / (static_cast<double>(total) + t1);
    return (static_cast<double>(c) + config.add_k) /
           (static_cast<double>(total) + config.add_k * v_predicted);
  };

  for (const auto& [key, c] : sorted[0]) {
    if (key[0] == Vocabulary::kBosId) {
      model.set_entry(key, NgramModel::kLog10Floor, std::nullopt);
      continue;
    }
    double p = unigram_prob(c);
    model.set_entry(key, p > 0 ? std::log10(p) : NgramModel::kLog10Floor, std::nullopt);
  }
  if (!unk_observed) {
    double p = unigram_prob(0);
    model.set_entry({Vocabulary::kUnkId}, p > 0 ? std::log10(p) : NgramModel::kLog10Floor,
                    std::nullopt);
  }

  // Higher orders, then back-off weights for the contexts just below each.
  for (int m = 2; m <= config.order; ++m) {
    const SortedCounts& grams = sorted[m - 1];
    std::size_t i = 0;
    while (i < grams.size()) {
      std::size_t j = i;
      std::uint64_t c_total = 0;
      while (j < grams.size() &&
             std::equal(grams[j].first.begin(), grams[j].first.end() - 1,
                        grams[i].first.begin(), grams[i].first.end() - 1)) {
        c_total += grams[j].second;
        ++j;
      }
      const double types = static_cast<double>(j - i);
      std::span<const WordId> lower_ctx(grams[i].first.data() + 1, grams[i].first.size() - 2);
      for (std::size_t k = i; k < j; ++k) {
        const NgramKey& key = grams[k].first;
        const double c = static_cast<double>(grams[k].second);
        double p;
        if (config.smoothing == Smoothing::kWittenBell) {
          double p_low = std::pow(10.0, model.log10_cond(lower_ctx, key.back()));
          p = (c + types * p_low) / (static_cast<double>(c_total) + types);
        } else {
          p = (c + config.add_k) / (static_cast<double>(c_total) + config.add_k * v_predicted);
        }
        model.set_entry(key, p > 0 ? std::log10(p) : NgramModel::kLog10Floor, std::nullopt);
      }
      i = j;
    }
    compute_backoff_weights(model, m - 1);
  }
  return model;
}

std::vector<Sentence> read_sentences(std::istream& in) {
  std::vector<Sentence> sentences;
  std::string line;
  while (std::getline(in, line)) {
    Sentence s = split_fields(line);
    if (!s.empty()) sentences.push_back(std::move(s));
  }
  return sentences;
}

std::vector<Sentence> read_sentences_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open text file: " + path);
  return read_sentences(in);
}

}  // namespace asrtk
