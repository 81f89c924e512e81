// ngram_interp.hpp
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

#ifndef ASRTK_NGRAM_INTERP_HPP_
#define ASRTK_NGRAM_INTERP_HPP_

#include <vector>

#include "asrtk/ngram_model.hpp"

namespace asrtk {

struct InterpolationWeights {
  std::vector<double> weights;  // non-negative, sum to 1
};

struct InterpConfig {
  double tolerance = 1e-6;  // stop when the max weight change drops below
  int max_iterations = 100;
  double unk_floor = 1e-7;  // unigram floor for <unk> before renormalization
};

struct InterpolationResult {
  NgramModel model;
  InterpolationWeights weights;
  // Held-out log10 likelihood after each EM iteration (non-decreasing).
  std::vector<double> heldout_log10;
  int iterations = 0;
};

// Tunes mixture weights on held-out text by EM over the per-word component
// posterior, then builds a standalone merged model realizing the static
// interpolation p(w|h) = sum_i w_i p_i(w|h) over the union of n-grams, with
// back-off weights recomputed so every context normalizes. All component
// models must share the same order.
InterpolationResult interpolate(const std::vector<const NgramModel*>& models,
                                const std::vector<Sentence>& heldout,
                                const InterpConfig& config = {});

// Weight tuning only (EM); also used internally by interpolate().
InterpolationWeights tune_weights(const std::vector<const NgramModel*>& models,
                                  const std::vector<Sentence>& heldout,
                                  const InterpConfig& config,
                                  std::vector<double>* heldout_log10 = nullptr,
                                  int* iterations = nullptr);

// Builds the merged static model for fixed weights.
NgramModel merge_models(const std::vector<const NgramModel*>& models,
                        const std::vector<double>& weights, double unk_floor = 1e-7);

}  // namespace asrtk

#endif  // ASRTK_NGRAM_INTERP_HPP_
