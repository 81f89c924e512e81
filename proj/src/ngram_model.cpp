// ngram_model.cpp
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

#include "asrtk/ngram_model.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "asrtk/errors.hpp"

namespace asrtk {

NgramModel::NgramModel(int order) : order_(order) {
  if (order < 1) throw ValidationError("n-gram order must be >= 1");
  tables_.resize(order);
}

void NgramModel::set_entry(NgramKey key, double log10_prob, std::optional<double> log10_bow) {
  if (key.empty() || key.size() > static_cast<std::size_t>(order_))
    throw ValidationError("n-gram key length out of range");
  NgramEntry entry;
  entry.log10_prob = log10_prob;
  if (log10_bow) {
    entry.log10_bow = *log10_bow;
    entry.has_bow = true;
  }
  tables_[key.size() - 1][std::move(key)] = entry;
}

void NgramModel::set_bow(const NgramKey& key, double log10_bow) {
  auto it = tables_[key.size() - 1].find(key);
  if (it == tables_[key.size() - 1].end())
    throw ValidationError("cannot set back-off weight of a missing n-gram");
  it->second.log10_bow = log10_bow;
  it->second.has_bow = true;
}

const NgramEntry* NgramModel::find(const NgramKey& key) const {
  if (key.empty() || key.size() > static_cast<std::size_t>(order_)) return nullptr;
  const auto& table = tables_[key.size() - 1];
  auto it = table.find(key);
  return it == table.end() ? nullptr : &it->second;
}

double NgramModel::log10_cond(std::span<const WordId> context, WordId word) const {
  if (context.size() > static_cast<std::size_t>(order_ - 1))
    context = context.subspan(context.size() - (order_ - 1));

  double bow_acc = 0.0;
  std::size_t start = 0;
  NgramKey key;
  while (true) {
    key.assign(context.begin() + static_cast<std::ptrdiff_t>(start), context.end());
    key.push_back(word);
    if (const NgramEntry* e = find(key)) return bow_acc + e->log10_prob;
    if (start == context.size()) break;  // unigram level missed
    key.pop_back();  // the current context
    if (const NgramEntry* c = find(key); c && c->has_bow) bow_acc += c->log10_bow;
    ++start;
  }
  if (word != Vocabulary::kUnkId) {
    if (const NgramEntry* unk = find({Vocabulary::kUnkId})) return bow_acc + unk->log10_prob;
  }
  return bow_acc + kLog10Floor;
}

double NgramModel::log10_cond(std::span<const std::string> context,
                              const std::string& word) const {
  NgramKey ctx;
  ctx.reserve(context.size());
  for (const std::string& w : context) ctx.push_back(vocab_.find_or_unk(w));
  return log10_cond(ctx, vocab_.find_or_unk(word));
}

double NgramModel::sentence_log10(std::span<const std::string> words) const {
  NgramKey ids;
  ids.reserve(words.size() + 2);
  ids.push_back(Vocabulary::kBosId);
  for (const std::string& w : words) ids.push_back(vocab_.find_or_unk(w));
  ids.push_back(Vocabulary::kEosId);

  double total = 0.0;
  for (std::size_t i = 1; i < ids.size(); ++i)
    total += log10_cond(std::span<const WordId>(ids.data(), i), ids[i]);
  return total;
}

std::vector<const std::pair<const NgramKey, NgramEntry>*> NgramModel::sorted_entries(
    int n) const {
  std::vector<const std::pair<const NgramKey, NgramEntry>*> out;
  out.reserve(tables_[n - 1].size());
  for (const auto& kv : tables_[n - 1]) out.push_back(&kv);
  std::sort(out.begin(), out.end(), [this](const auto* a, const auto* b) {
    const NgramKey& ka = a->first;
    const NgramKey& kb = b->first;
    for (std::size_t i = 0; i < ka.size() && i < kb.size(); ++i) {
      if (ka[i] != kb[i]) return vocab_.word(ka[i]) < vocab_.word(kb[i]);
    }
    return ka.size() < kb.size();
  });
  return out;
}

SequenceScore score_sentences(const NgramModel& model, const std::vector<Sentence>& sentences) {
  SequenceScore score;
  for (const Sentence& sentence : sentences) {
    score.log10_prob += model.sentence_log10(sentence);
    score.n_events += sentence.size() + 1;
    for (const std::string& w : sentence)
      if (!model.vocab().contains(w)) ++score.n_oov;
  }
  return score;
}

double perplexity(const NgramModel& model, const std::vector<Sentence>& sentences) {
  SequenceScore score = score_sentences(model, sentences);
  if (score.n_events == 0) throw ValidationError("perplexity of empty text is undefined");
  return std::pow(10.0, -score.log10_prob / static_cast<double>(score.n_events));
}

void compute_backoff_weights(NgramModel& model, int context_len) {
  if (context_len < 1 || context_len >= model.order()) return;

  // Sorted continuation lists per context, deterministic summation order.
  std::map<NgramKey, std::vector<WordId>> continuations;
  for (const auto& [key, entry] : model.table(context_len + 1)) {
    (void)entry;
    NgramKey ctx(key.begin(), key.end() - 1);
    continuations[ctx].push_back(key.back());
  }
  for (auto& [ctx, words] : continuations) {
    (void)ctx;
    std::sort(words.begin(), words.end());
  }

  std::vector<NgramKey> contexts;
  contexts.reserve(model.table(context_len).size());
  for (const auto& [key, entry] : model.table(context_len)) {
    (void)entry;
    contexts.push_back(key);
  }
  std::sort(contexts.begin(), contexts.end());

  for (const NgramKey& ctx : contexts) {
    double seen_here = 0.0;
    double seen_lower = 0.0;
    auto it = continuations.find(ctx);
    if (it != continuations.end()) {
      NgramKey key = ctx;
      key.push_back(0);
      std::span<const WordId> lower_ctx(ctx.data() + 1, ctx.size() - 1);
      for (WordId w : it->second) {
        key.back() = w;
        seen_here += std::pow(10.0, model.find(key)->log10_prob);
        seen_lower += std::pow(10.0, model.log10_cond(lower_ctx, w));
      }
    }
    double num = 1.0 - seen_here;
    double den = 1.0 - seen_lower;
    if (num < 0.0) num = 0.0;
    double bow;
    if (den <= 1e-15)
      bow = 1.0;  // saturated lower context: no mass can flow either way
    else
      bow = num / den;
    model.set_bow(ctx, bow > 0.0 ? std::log10(bow) : NgramModel::kLog10Floor);
  }
}

double context_probability_mass(const NgramModel& model, std::span<const WordId> context) {
  double mass = 0.0;
  for (WordId w = 0; w < model.vocab().size(); ++w) {
    if (w == Vocabulary::kBosId) continue;
    mass += std::pow(10.0, model.log10_cond(context, w));
  }
  return mass;
}

}  // namespace asrtk
