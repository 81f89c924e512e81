// ngram_interp.cpp
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

#include "asrtk/ngram_interp.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "asrtk/errors.hpp"

namespace asrtk {
namespace {

void validate_components(const std::vector<const NgramModel*>& models) {
  if (models.size() < 2)
    throw ValidationError("interpolation needs at least 2 component models");
  for (const NgramModel* m : models) {
    if (!m) throw ValidationError("null component model");
    if (m->order() != models[0]->order())
      throw ValidationError("component model orders differ");
  }
}

// Per-event component probabilities over the held-out text. Each model maps
// words through its own vocabulary (OOV -> its <unk>).
std::vector<std::vector<double>> event_matrix(const std::vector<const NgramModel*>& models,
                                              const std::vector<Sentence>& heldout) {
  std::vector<std::vector<double>> events;
  for (const Sentence& sentence : heldout) {
    std::vector<std::string> padded;
    padded.reserve(sentence.size() + 2);
    padded.push_back(Vocabulary::kBos);
    padded.insert(padded.end(), sentence.begin(), sentence.end());
    padded.push_back(Vocabulary::kEos);
    for (std::size_t i = 1; i < padded.size(); ++i) {
      std::vector<double> probs(models.size());
      std::span<const std::string> context(padded.data(), i);
      bool any = false;
      for (std::size_t k = 0; k < models.size(); ++k) {
        probs[k] = std::pow(10.0, models[k]->log10_cond(context, padded[i]));
        any = any || probs[k] > 0.0;
      }
      if (any) events.push_back(std::move(probs));
    }
  }
  return events;
}

}  // namespace

InterpolationWeights tune_weights(const std::vector<const NgramModel*>& models,
                                  const std::vector<Sentence>& heldout,
                                  const InterpConfig& config,
                                  std::vector<double>* heldout_log10, int* iterations) {
  validate_components(models);
  if (heldout.empty()) throw ValidationError("held-out text is empty");

  const std::size_t n = models.size();
  std::vector<std::vector<double>> events = event_matrix(models, heldout);
  if (events.empty()) throw ValidationError("held-out text yields no scorable events");

  std::vector<double> weights(n, 1.0 / static_cast<double>(n));
  std::vector<double> counts(n);
  if (heldout_log10) heldout_log10->clear();

  int iter = 0;
  for (; iter < config.max_iterations; ++iter) {
    std::fill(counts.begin(), counts.end(), 0.0);
    double log10_likelihood = 0.0;
    for (const auto& probs : events) {
      double mix = 0.0;
      for (std::size_t k = 0; k < n; ++k) mix += weights[k] * probs[k];
      log10_likelihood += std::log10(mix);
      for (std::size_t k = 0; k < n; ++k) counts[k] += weights[k] * probs[k] / mix;
    }
    if (heldout_log10) heldout_log10->push_back(log10_likelihood);

    double total = 0.0;
    for (double c : counts) total += c;
    double delta = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
      double next = counts[k] / total;
      delta = std::max(delta, std::abs(next - weights[k]));
      weights[k] = next;
    }
    if (delta < config.tolerance) {
      ++iter;
      break;
    }
  }
  if (iterations) *iterations = iter;
  return InterpolationWeights{std::move(weights)};
}

NgramModel merge_models(const std::vector<const NgramModel*>& models,
                        const std::vector<double>& weights, double unk_floor) {
  validate_components(models);
  if (weights.size() != models.size())
    throw ValidationError("one weight per component model required");

  const int order = models[0]->order();
  NgramModel merged(order);
  Vocabulary& vocab = merged.vocab();

  // Union vocabulary, interned in component order for reproducible ids.
  for (const NgramModel* m : models)
    for (WordId id = 0; id < m->vocab().size(); ++id) vocab.intern(m->vocab().word(id));

  // merged id -> component id (OOV -> component <unk>), plus membership.
  const std::size_t n_models = models.size();
  std::vector<std::vector<WordId>> to_comp(n_models, std::vector<WordId>(vocab.size()));
  std::vector<std::vector<char>> in_comp(n_models, std::vector<char>(vocab.size(), 0));
  std::vector<std::vector<WordId>> comp_to_merged(n_models);
  for (std::size_t k = 0; k < n_models; ++k) {
    const Vocabulary& cv = models[k]->vocab();
    for (WordId id = 0; id < vocab.size(); ++id) {
      const std::string& w = vocab.word(id);
      to_comp[k][id] = cv.find_or_unk(w);
      in_comp[k][id] = cv.contains(w) ? 1 : 0;
    }
    comp_to_merged[k].resize(cv.size());
    for (WordId cid = 0; cid < cv.size(); ++cid)
      comp_to_merged[k][cid] = vocab.intern(cv.word(cid));
  }

  // Mixture of an n-gram's conditional probability in merged-id space. A
  // component contributes only for words inside its own vocabulary, so each
  // context's mixture stays a proper distribution over the union.
  NgramKey comp_key;
  auto mixture_prob = [&](const NgramKey& key) {
    double p = 0.0;
    for (std::size_t k = 0; k < n_models; ++k) {
      if (weights[k] == 0.0 || !in_comp[k][key.back()]) continue;
      comp_key.clear();
      for (WordId id : key) comp_key.push_back(to_comp[k][id]);
      std::span<const WordId> ctx(comp_key.data(), comp_key.size() - 1);
      p += weights[k] * std::pow(10.0, models[k]->log10_cond(ctx, comp_key.back()));
    }
    return p;
  };

  // Union n-gram sets per order above 1, in merged ids (std::set gives
  // deterministic iteration). The unigram level covers the whole union
  // vocabulary directly.
  std::vector<std::set<NgramKey>> union_keys(order);
  for (std::size_t k = 0; k < n_models; ++k) {
    for (int n = 2; n <= order; ++n) {
      for (const auto& [key, entry] : models[k]->table(n)) {
        (void)entry;
        NgramKey translated;
        translated.reserve(key.size());
        for (WordId cid : key) translated.push_back(comp_to_merged[k][cid]);
        union_keys[n - 1].insert(std::move(translated));
      }
    }
  }

  // Unigram level: mix, floor <unk>, renormalize so the predicted vocabulary
  // sums to exactly one.
  {
    std::vector<double> raw(vocab.size(), 0.0);
    double z = 0.0;
    for (WordId id = 0; id < vocab.size(); ++id) {
      if (id == Vocabulary::kBosId) continue;
      raw[id] = mixture_prob({id});
      if (id == Vocabulary::kUnkId) raw[id] = std::max(raw[id], unk_floor);
      z += raw[id];
    }
    for (WordId id = 0; id < vocab.size(); ++id) {
      if (id == Vocabulary::kBosId) {
        merged.set_entry({id}, NgramModel::kLog10Floor, std::nullopt);
        continue;
      }
      double p = raw[id] / z;
      merged.set_entry({id}, p > 0 ? std::log10(p) : NgramModel::kLog10Floor, std::nullopt);
    }
  }

  for (int n = 2; n <= order; ++n) {
    for (const NgramKey& key : union_keys[n - 1]) {
      double p = mixture_prob(key);
      merged.set_entry(key, p > 0 ? std::log10(p) : NgramModel::kLog10Floor, std::nullopt);
    }
  }
  for (int len = 1; len < order; ++len) compute_backoff_weights(merged, len);
  return merged;
}

InterpolationResult interpolate(const std::vector<const NgramModel*>& models,
                                const std::vector<Sentence>& heldout,
                                const InterpConfig& config) {
  std::vector<double> trajectory;
  int iterations = 0;
  InterpolationWeights weights = tune_weights(models, heldout, config, &trajectory, &iterations);
  NgramModel merged = merge_models(models, weights.weights, config.unk_floor);
  InterpolationResult result{std::move(merged), std::move(weights), std::move(trajectory),
                             iterations};
  return result;
}

}  // namespace asrtk
