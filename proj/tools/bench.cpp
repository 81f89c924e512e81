// bench.cpp
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
//
// Compares the OpenMP kernels against their serial references on synthetic
// workloads: n-gram count accumulation, batch WER scoring, ROVER fusion and
// WADA-SNR estimation.

#include <chrono>
#include <cstdio>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "asrtk/ctm.hpp"
#include "asrtk/ngram_train.hpp"
#include "asrtk/parallel.hpp"
#include "asrtk/rover.hpp"
#include "asrtk/wada.hpp"
#include "asrtk/wer.hpp"

using namespace asrtk;

namespace {

double seconds_of(const std::function<void()>& fn) {
  auto start = std::chrono::steady_clock::now();
  fn();
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
}

void row(const char* name, double serial_s, double parallel_s, int threads) {
  std::printf("%-24s %10.3f s %10.3f s   x%.2f (%d threads)\n", name, serial_s, parallel_s,
              serial_s / parallel_s, threads);
}

std::vector<Sentence> synth_corpus(std::mt19937& rng, int n_sentences, int vocab,
                                   int max_len) {
  std::uniform_int_distribution<int> len(3, max_len), pick(0, vocab - 1);
  std::vector<Sentence> corpus(static_cast<std::size_t>(n_sentences));
  for (Sentence& s : corpus) {
    s.resize(static_cast<std::size_t>(len(rng)));
    for (std::string& w : s) w = "w" + std::to_string(pick(rng));
  }
  return corpus;
}

CtmFile corrupt(const std::vector<std::string>& truth, const std::string& rec,
                std::mt19937& rng, int vocab) {
  std::uniform_real_distribution<double> u(0.0, 1.0);
  std::uniform_int_distribution<int> pick(0, vocab - 1);
  std::vector<WordToken> tokens;
  for (std::size_t i = 0; i < truth.size(); ++i) {
    double r = u(rng);
    if (r < 0.05) continue;
    std::string w = r < 0.15 ? "w" + std::to_string(pick(rng)) : truth[i];
    tokens.push_back({rec, "1", 0.5 * static_cast<double>(i), 0.4, w, 0.9});
  }
  return CtmFile::from_tokens(std::move(tokens));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Serial vs. OpenMP kernel benchmark"};
  int threads = 0;
  int scale = 1;
  app.add_option("--threads", threads, "worker threads (0 = auto)");
  app.add_option("--scale", scale, "workload multiplier");
  CLI11_PARSE(app, argc, argv);
  threads = effective_threads(threads);

  std::mt19937 rng(4711);
  std::printf("%-24s %12s %12s\n", "kernel", "serial", "parallel");

  {
    auto corpus = synth_corpus(rng, 40000 * scale, 2000, 18);
    std::vector<CountTable> serial_counts, parallel_counts;
    double s = seconds_of([&] {
      Vocabulary v;
      serial_counts = count_ngrams_serial(corpus, 3, v);
    });
    double p = seconds_of([&] {
      Vocabulary v;
      parallel_counts = count_ngrams(corpus, 3, v, threads);
    });
    if (parallel_counts != serial_counts) std::printf("!! count tables differ\n");
    row("ngram-count (order 3)", s, p, threads);
  }

  {
    std::vector<StmSegment> refs;
    std::vector<WordToken> hyp_tokens;
    for (int rec = 0; rec < 150 * scale; ++rec) {
      std::string id = "rec" + std::to_string(rec);
      Sentence truth = synth_corpus(rng, 1, 300, 250)[0];
      refs.push_back({id, "1", "spk", 0.0, 1e6, std::nullopt, truth});
      CtmFile ctm = corrupt(truth, id, rng, 300);
      hyp_tokens.insert(hyp_tokens.end(), ctm.tokens.begin(), ctm.tokens.end());
    }
    CtmFile hyp = CtmFile::from_tokens(std::move(hyp_tokens));
    ScoreConfig config;
    config.threads = threads;
    ScoreResult serial_result, parallel_result;
    double s = seconds_of([&] { serial_result = score_wer_serial(refs, hyp, config); });
    double p = seconds_of([&] { parallel_result = score_wer(refs, hyp, config); });
    if (!(serial_result.total == parallel_result.total)) std::printf("!! WER totals differ\n");
    row("wer-score (150 recs)", s, p, threads);
  }

  {
    std::vector<CtmFile> systems(5);
    for (int rec = 0; rec < 60 * scale; ++rec) {
      Sentence truth = synth_corpus(rng, 1, 300, 200)[0];
      for (auto& system : systems) {
        CtmFile part = corrupt(truth, "rec" + std::to_string(rec), rng, 300);
        system.tokens.insert(system.tokens.end(), part.tokens.begin(), part.tokens.end());
      }
    }
    for (auto& system : systems) system = CtmFile::from_tokens(std::move(system.tokens));
    VoteConfig config;
    config.threads = threads;
    CtmFile serial_fused, parallel_fused;
    double s = seconds_of([&] { serial_fused = rover_fuse_serial(systems, config); });
    double p = seconds_of([&] { parallel_fused = rover_fuse(systems, config); });
    if (!(serial_fused == parallel_fused)) std::printf("!! fused CTMs differ\n");
    row("rover-fuse (5 systems)", s, p, threads);
  }

  {
    std::normal_distribution<double> noise(0.0, 0.1);
    std::vector<AudioBuffer> buffers(64 * static_cast<std::size_t>(scale));
    for (AudioBuffer& b : buffers) {
      b.sample_rate = 16000;
      b.samples.resize(16000 * 10);
      for (float& x : b.samples) x = static_cast<float>(noise(rng));
    }
    std::vector<SnrEstimate> serial_est(buffers.size()), parallel_est(buffers.size());
    double s = seconds_of([&] {
      for (std::size_t i = 0; i < buffers.size(); ++i) serial_est[i] = wada_snr(buffers[i]);
    });
    double p = seconds_of([&] {
      parallel_for(buffers.size(), threads,
                   [&](std::size_t i) { parallel_est[i] = wada_snr(buffers[i]); });
    });
    for (std::size_t i = 0; i < buffers.size(); ++i)
      if (serial_est[i].snr_db != parallel_est[i].snr_db)
        std::printf("!! SNR estimates differ\n");
    row("wada-snr (64 x 10 s)", s, p, threads);
  }

  return 0;
}
