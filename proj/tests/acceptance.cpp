// acceptance.cpp
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
// Acceptance suite. Each criterion prints one PASS/FAIL line; the process
// exits non-zero if any criterion fails. All thresholds are pinned here.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "asrtk/alignment.hpp"
#include "asrtk/arpa.hpp"
#include "asrtk/ctm.hpp"
#include "asrtk/gate.hpp"
#include "asrtk/ngram_interp.hpp"
#include "asrtk/ngram_train.hpp"
#include "asrtk/retrieval.hpp"
#include "asrtk/rover.hpp"
#include "asrtk/stm.hpp"
#include "asrtk/wada.hpp"
#include "asrtk/wer.hpp"
#include "retrieval_fixture.hpp"
#include "test_util.hpp"

using namespace asrtk;
namespace fs = std::filesystem;

namespace {

struct Failures {
  std::vector<std::string> messages;

  void require(bool ok, const std::string& msg) {
    if (!ok) messages.push_back(msg);
  }
  template <typename T>
  std::string str(const T& v) {
    std::ostringstream os;
    os << v;
    return os.str();
  }
};

std::vector<Sentence> random_corpus(std::mt19937& rng, int n_sentences, int vocab,
                                    int max_len) {
  std::uniform_int_distribution<int> len(1, max_len), pick(0, vocab - 1);
  std::vector<Sentence> corpus(static_cast<std::size_t>(n_sentences));
  for (Sentence& s : corpus) {
    s.resize(static_cast<std::size_t>(len(rng)));
    for (std::string& w : s) w = "v" + std::to_string(pick(rng));
  }
  return corpus;
}

void check_model_mass(Failures& f, const NgramModel& model, const std::string& tag) {
  auto check_one = [&](std::span<const WordId> ctx, const std::string& where) {
    double mass = context_probability_mass(model, ctx);
    f.require(std::abs(mass - 1.0) <= 1e-6,
              tag + ": context " + where + " mass " + f.str(mass) + " deviates > 1e-6");
  };
  check_one({}, "<empty>");
  for (int n = 1; n < model.order(); ++n)
    for (const auto* kv : model.sorted_entries(n)) check_one(kv->first, f.str(n) + "-gram");
}

double wer_of(const std::vector<std::string>& truth, const CtmFile& hyp) {
  StmSegment seg;
  seg.recording_id = hyp.tokens.empty() ? "rec" : hyp.tokens.front().recording_id;
  seg.channel = "1";
  seg.speaker = "spk";
  seg.start = 0.0;
  seg.end = 1e9;
  seg.text = truth;
  return score_wer({seg}, hyp).total.wer();
}

// C1: align_words equals exhaustive edit-script enumeration on 1,000 random
// pairs, exactly; under 10 s.
void c1(Failures& f) {
  std::mt19937 rng(10001);
  for (int trial = 0; trial < 1000; ++trial) {
    auto ref = asrtk_test::random_words(rng, 8, 3);
    auto hyp = asrtk_test::random_words(rng, 8, 3);
    int expected = asrtk_test::brute_force_edit_cost(ref, hyp);
    int got = align_words(ref, hyp).total_cost;
    if (got != expected) {
      f.require(false, "pair " + f.str(trial) + ": cost " + f.str(got) + " != oracle " +
                           f.str(expected));
      return;
    }
  }
}

// C2: planted 3 sub + 1 ins + 2 del over 50 reference words scores WER 12.00
// with the exact count quadruple.
void c2(Failures& f) {
  std::vector<std::string> ref_text;
  for (int i = 0; i < 50; ++i) ref_text.push_back("w" + std::to_string(i));
  std::vector<WordToken> hyp;
  double t = 0.0;
  for (int i = 0; i < 50; ++i) {
    if (i == 10 || i == 40) {  // deletions
      t += 1.0;
      continue;
    }
    std::string w = ref_text[static_cast<std::size_t>(i)];
    if (i == 5 || i == 20 || i == 35) w = "sub" + std::to_string(i);
    hyp.push_back({"rec", "1", t, 0.5, w, std::nullopt});
    t += 1.0;
    if (i == 25) hyp.push_back({"rec", "1", t - 0.4, 0.2, "extra", std::nullopt});
  }
  StmSegment seg{"rec", "1", "spk", 0.0, 100.0, std::nullopt, ref_text};
  WerReport r = score_wer({seg}, CtmFile::from_tokens(std::move(hyp))).total;
  f.require(r.n_ref == 50, "n_ref " + f.str(r.n_ref) + " != 50");
  f.require(r.n_sub == 3, "n_sub " + f.str(r.n_sub) + " != 3");
  f.require(r.n_ins == 1, "n_ins " + f.str(r.n_ins) + " != 1");
  f.require(r.n_del == 2, "n_del " + f.str(r.n_del) + " != 2");
  f.require(r.n_cor == 45, "n_cor " + f.str(r.n_cor) + " != 45");
  f.require(r.wer() == 12.0, "wer " + f.str(r.wer()) + " != 12.00 exactly");
}

// C3: unanimity is exact; fusing 5 independent 20 %-WER corruptions of a
// 200-word truth at alpha=1 beats the best single system in >= 90 of 100
// seeds; under 30 s.
void c3(Failures& f) {
  std::mt19937 rng(30303);
  auto truth = asrtk_test::truth_sequence(rng, 120, 30);
  std::vector<WordToken> tokens;
  for (std::size_t i = 0; i < truth.size(); ++i)
    tokens.push_back({"rec", "1", 0.5 * static_cast<double>(i), 0.4, truth[i], 0.8});
  CtmFile base = CtmFile::from_tokens(std::move(tokens));
  for (int n = 2; n <= 5; ++n) {
    std::vector<CtmFile> copies(static_cast<std::size_t>(n), base);
    CtmFile fused = rover_fuse(copies, VoteConfig{});
    bool same = fused.tokens.size() == base.tokens.size();
    for (std::size_t i = 0; same && i < fused.tokens.size(); ++i)
      same = fused.tokens[i].word == base.tokens[i].word &&
             fused.tokens[i].start == base.tokens[i].start &&
             fused.tokens[i].duration == base.tokens[i].duration &&
             fused.tokens[i].recording_id == base.tokens[i].recording_id &&
             fused.tokens[i].channel == base.tokens[i].channel;
    f.require(same, "fusing " + f.str(n) + " identical systems is not verbatim");
  }

  int wins = 0;
  for (int seed = 0; seed < 100; ++seed) {
    std::mt19937 seed_rng(40000 + seed);
    auto words = asrtk_test::truth_sequence(seed_rng, 200, 40);
    std::vector<CtmFile> systems;
    double best = 1e18;
    for (int s = 0; s < 5; ++s) {
      systems.push_back(
          asrtk_test::corrupt_transcript(words, "rec", seed_rng, 0.10, 0.05, 0.05, 40));
      best = std::min(best, wer_of(words, systems.back()));
    }
    VoteConfig config;
    config.alpha = 1.0;
    if (wer_of(words, rover_fuse(systems, config)) < best) ++wins;
  }
  f.require(wins >= 90, "fusion beat the best single system in only " + f.str(wins) +
                            " of 100 seeds (need >= 90)");
}

// C4: wtn_merge alignment cost equals brute force on 200 randomized
// instances of up to 6 words x 3 systems, exactly.
void c4(Failures& f) {
  std::mt19937 rng(40404);
  MergeConfig config;
  int checked = 0;
  for (int trial = 0; trial < 100 && checked < 200; ++trial) {
    auto truth = asrtk_test::truth_sequence(rng, 6, 3);
    Wtn wtn = wtn_from_ctm(
        asrtk_test::corrupt_transcript(truth, "rec", rng, 0.3, 0.15, 0.15, 3).tokens, 0);
    for (int s = 1; s < 3; ++s) {
      CtmFile hyp = asrtk_test::corrupt_transcript(truth, "rec", rng, 0.3, 0.15, 0.15, 3);
      if (hyp.tokens.size() > 6) hyp.tokens.resize(6);
      int expected = asrtk_test::brute_force_merge_cost(wtn, hyp.tokens, 0, 0, config);
      MergeOutcome outcome = wtn_merge(wtn, hyp.tokens, s, config);
      ++checked;
      if (outcome.alignment_cost != expected) {
        f.require(false, "merge cost " + f.str(outcome.alignment_cost) + " != brute force " +
                             f.str(expected));
        return;
      }
      wtn = std::move(outcome.wtn);
    }
  }
  f.require(checked >= 200, "only " + f.str(checked) + " merge instances checked");
}

// C5: trained, interpolated and ARPA-round-tripped models all keep
// per-context probability mass within 1e-6, over >= 20 random corpora with
// orders 1..7.
void c5(Failures& f) {
  std::mt19937 rng(50505);
  std::vector<NgramModel> pool;
  for (int trial = 0; trial < 21; ++trial) {
    int order = 1 + trial % 7;
    TrainConfig config;
    config.order = order;
    config.smoothing = trial % 3 == 1 ? Smoothing::kAddK : Smoothing::kWittenBell;
    config.add_k = trial % 3 == 1 ? 0.4 : 0.0;
    config.prune_singletons = trial % 5 == 0;
    NgramModel model = train(random_corpus(rng, 25, 8, 10), config);
    check_model_mass(f, model, "trained[" + f.str(trial) + "]");

    std::ostringstream arpa;
    write_arpa(model, arpa);
    std::istringstream in(arpa.str());
    NgramModel back = read_arpa(in);
    check_model_mass(f, back, "roundtrip[" + f.str(trial) + "]");
    if (order <= 3 && config.smoothing == Smoothing::kWittenBell)
      pool.push_back(std::move(model));
  }
  // interpolated models over same-order pairs from the pool
  int mixes = 0;
  for (std::size_t i = 0; i + 1 < pool.size() && mixes < 4; ++i) {
    for (std::size_t j = i + 1; j < pool.size() && mixes < 4; ++j) {
      if (pool[i].order() != pool[j].order()) continue;
      InterpolationResult r =
          interpolate({&pool[i], &pool[j]}, random_corpus(rng, 8, 8, 10));
      check_model_mass(f, r.model, "interpolated[" + f.str(mixes) + "]");
      ++mixes;
    }
  }
  f.require(mixes >= 2, "too few interpolated models checked");
}

// C6: EM held-out log-likelihood never decreases, and the disjoint-vocabulary
// case converges to weight >= 0.999 on the matching model.
void c6(Failures& f) {
  std::mt19937 rng(60606);
  for (int trial = 0; trial < 10; ++trial) {
    NgramModel m1 = train(random_corpus(rng, 20, 10, 8), {.order = 2});
    NgramModel m2 = train(random_corpus(rng, 20, 10, 8), {.order = 2});
    InterpolationResult r = interpolate({&m1, &m2}, random_corpus(rng, 8, 10, 8));
    for (std::size_t i = 1; i < r.heldout_log10.size(); ++i)
      f.require(r.heldout_log10[i] >= r.heldout_log10[i - 1] - 1e-9,
                "held-out log-likelihood decreased at iteration " + f.str(i));
  }

  std::vector<Sentence> c1 = {{"a", "b", "c", "d"}, {"b", "c", "a"}, {"d", "a", "b"}};
  std::vector<Sentence> c2 = {{"x", "y", "z"}, {"z", "y", "x"}, {"x", "x", "y"}};
  NgramModel m1 = train(c1, {.order = 1});
  NgramModel m2 = train(c2, {.order = 1});
  std::vector<Sentence> heldout = {{"a", "b", "c"}, {"d", "b", "a"}, {"c", "c", "d"}};
  InterpolationResult r = interpolate({&m1, &m2}, heldout);
  f.require(r.weights.weights[0] >= 0.999,
            "disjoint-vocabulary weight " + f.str(r.weights.weights[0]) + " < 0.999");
}

// C7: uniform unigram over V outcomes has perplexity V within 1e-9 for
// V in {2, 10, 100}.
void c7(Failures& f) {
  for (int v : {2, 10, 100}) {
    Sentence s;
    for (int i = 0; i < v - 1; ++i) s.push_back("u" + std::to_string(i));
    NgramModel model = train({s}, {.order = 1, .smoothing = Smoothing::kAddK, .add_k = 0.0});
    double ppl = perplexity(model, {s});
    f.require(std::abs(ppl - v) <= 1e-9,
              "V=" + f.str(v) + ": perplexity " + f.str(ppl) + " deviates > 1e-9");
  }
}

// C8: planted 10-recording retrieval fixture: >= 90 % of planted segments
// retained at wer <= 10 %, timings from hypothesis tokens within 0.1 s, and
// an improved second pass never reduces retention; under 60 s.
void c8(Failures& f) {
  std::mt19937 rng(80808);
  auto corpus = asrtk_test::make_planted_corpus(rng, 10);
  RetrievalConfig config;  // threshold 10 %, gap 0.5 s, order 7
  MultiPassResult result =
      run_two_pass({corpus.nbest_pass1, corpus.nbest_pass2}, corpus.captions, config);
  const PassResult& p1 = result.passes[0];
  const PassResult& p2 = result.passes[1];

  double planted = static_cast<double>(corpus.total_segments);
  double retained = static_cast<double>(p1.stats.segments_retained);
  // "planted segments" = segments whose captions were left intact
  f.require(retained >= 0.9 * planted, "retained " + f.str(retained) + " of " +
                                           f.str(planted) + " planted segments (< 90 %)");
  for (const RetrievedSegment& seg : p1.segments)
    f.require(seg.segment_wer <= config.segment_wer_threshold,
              "retained segment with wer " + f.str(seg.segment_wer));

  double max_boundary_error = 0.0;
  for (const auto& rec : corpus.recordings) {
    std::vector<const RetrievedSegment*> mine;
    for (const RetrievedSegment& seg : p1.segments)
      if (seg.recording_id == rec.captions.recording_id) mine.push_back(&seg);
    std::size_t expected = rec.n_segments - rec.corrupted_segments.size();
    if (mine.size() != expected) {
      f.require(false, rec.captions.recording_id + ": " + f.str(mine.size()) +
                           " segments retained, expected " + f.str(expected));
      continue;
    }
    std::size_t k = 0;
    for (std::size_t s = 0; s < rec.n_segments; ++s) {
      if (rec.corrupted_segments.count(s)) continue;
      max_boundary_error = std::max(
          max_boundary_error, std::abs(mine[k]->start - rec.true_spans[s].first));
      max_boundary_error =
          std::max(max_boundary_error, std::abs(mine[k]->end - rec.true_spans[s].second));
      ++k;
    }
  }
  f.require(max_boundary_error <= 0.1,
            "max boundary error " + f.str(max_boundary_error) + " s > 0.1 s");
  f.require(p2.stats.segments_retained >= p1.stats.segments_retained,
            "second pass reduced retention");
  f.require(p2.stats.retained_seconds >= p1.stats.retained_seconds - 1e-9,
            "second pass reduced retained time");
}

// C9: WADA-SNR mean absolute error within 2.5 dB at each true SNR in
// {-5, 0, 5, 10, 20} dB (10 trials, 5 s @ 16 kHz), and scale invariance to
// 1e-6 dB under x0.01 and x100 gain.
void c9(Failures& f) {
  std::mt19937 rng(90909);
  for (double true_snr : {-5.0, 0.0, 5.0, 10.0, 20.0}) {
    double err_sum = 0.0;
    for (int trial = 0; trial < 10; ++trial) {
      SnrEstimate est = wada_snr(asrtk_test::speech_plus_noise(rng, true_snr, 5.0));
      err_sum += std::abs(est.snr_db - true_snr);
    }
    double mae = err_sum / 10.0;
    f.require(mae <= 2.5,
              "true SNR " + f.str(true_snr) + " dB: MAE " + f.str(mae) + " dB > 2.5 dB");
  }

  AudioBuffer audio = asrtk_test::speech_plus_noise(rng, 7.0, 5.0);
  double base = wada_snr(audio).snr_db;
  for (double gain : {0.01, 100.0}) {
    AudioBuffer scaled = audio;
    for (float& s : scaled.samples) s = static_cast<float>(s * gain);
    double got = wada_snr(scaled).snr_db;
    f.require(std::abs(got - base) <= 1e-6, "gain x" + f.str(gain) + ": SNR moved by " +
                                                f.str(std::abs(got - base)) + " dB > 1e-6");
  }
}

// C10: gating accounting on 200 synthetic files: cleaned_fraction for
// (-5, 8) equals the exact in-range fraction of the per-file estimates, and
// (-inf, inf) yields 100 %.
void c10(Failures& f) {
  std::mt19937 rng(101010);
  fs::path in_dir = fs::temp_directory_path() / "asrtk_acceptance_gate_in";
  fs::path out_dir = fs::temp_directory_path() / "asrtk_acceptance_gate_out";
  fs::remove_all(in_dir);
  fs::remove_all(out_dir);
  fs::create_directories(in_dir);

  const double labels[] = {-15, -10, -6, -3, 0, 3, 6, 9, 12, 20};
  std::vector<std::string> files;
  for (int i = 0; i < 200; ++i) {
    double label = labels[i % 10];
    fs::path p = in_dir / ("f" + std::to_string(i) + ".wav");
    write_wav16_file(asrtk_test::speech_plus_noise(rng, label, 0.5), p.string());
    files.push_back(p.string());
  }

  DispatchConfig config;
  config.range = parse_gate_range("-5:8");
  config.command_template = "cp {in} {out}";
  config.output_dir = out_dir.string();
  config.workers = 4;
  GateReport report = enhance_dispatch(files, config);

  std::size_t in_range = 0;
  for (const GateFileResult& r : report.files) {
    bool expected = config.range.low < r.snr_db && r.snr_db < config.range.high;
    if (expected) ++in_range;
    f.require(r.gated == expected, r.id + ": gate decision disagrees with its estimate");
  }
  double expected_fraction = 100.0 * static_cast<double>(in_range) / 200.0;
  f.require(report.cleaned_fraction == expected_fraction,
            "cleaned_fraction " + f.str(report.cleaned_fraction) + " != exact " +
                f.str(expected_fraction));
  f.require(in_range > 0 && in_range < 200, "range failed to split the synthetic set");

  config.range = parse_gate_range("-inf:inf");
  GateReport all = enhance_dispatch(files, config);
  f.require(all.cleaned_fraction == 100.0,
            "(-inf, inf) cleaned_fraction " + f.str(all.cleaned_fraction) + " != 100");

  fs::remove_all(in_dir);
  fs::remove_all(out_dir);
}

// C11: CTM, STM and ARPA parse -> write -> parse identity on all fixtures.
void c11(Failures& f) {
  std::mt19937 rng(111111);
  // Values are put on the serialization grid with a single correctly-rounded
  // division, the same operation the parser performs.
  std::uniform_int_distribution<long> ms(0, 500000);     // 3-decimal seconds
  std::uniform_int_distribution<long> micro(0, 1000000); // 6-decimal confidence
  for (int fixture = 0; fixture < 5; ++fixture) {
    std::uniform_int_distribution<int> len(1, 10), conf(0, 1);
    std::vector<WordToken> tokens;
    for (int i = 0; i < 200; ++i) {
      WordToken tok;
      tok.recording_id = "rec" + std::to_string(i % 7);
      tok.channel = i % 2 ? "1" : "2";
      tok.start = static_cast<double>(ms(rng)) / 1000.0;
      tok.duration = static_cast<double>(ms(rng) % 1000) / 1000.0;
      tok.word = "w" + std::to_string(len(rng));
      if (conf(rng)) tok.confidence = static_cast<double>(micro(rng)) / 1000000.0;
      tokens.push_back(std::move(tok));
    }
    CtmFile ctm = CtmFile::from_tokens(std::move(tokens));
    CtmFile back = parse_ctm(write_ctm(ctm));
    f.require(back == ctm, "CTM fixture " + f.str(fixture) + " round-trip differs");
  }

  // STM fixtures
  for (int fixture = 0; fixture < 5; ++fixture) {
    std::uniform_int_distribution<int> words(0, 6), lab(0, 1);
    std::vector<StmSegment> segments;
    for (int i = 0; i < 100; ++i) {
      StmSegment seg;
      seg.recording_id = "rec" + std::to_string(i % 5);
      seg.channel = "1";
      seg.speaker = "spk" + std::to_string(i % 3);
      long start_ms = ms(rng);
      seg.start = static_cast<double>(start_ms) / 1000.0;
      seg.end = static_cast<double>(start_ms + 1000 + ms(rng) % 1000) / 1000.0;
      if (lab(rng)) seg.labels = "o,f0,male";
      int n = words(rng);
      for (int w = 0; w < n; ++w) seg.text.push_back("palabra" + std::to_string(w));
      segments.push_back(std::move(seg));
    }
    auto back = parse_stm(write_stm(segments));
    f.require(back == segments, "STM fixture " + f.str(fixture) + " round-trip differs");
  }

  // ARPA fixtures across orders and smoothing
  for (int order : {1, 2, 3, 5, 7}) {
    TrainConfig config;
    config.order = order;
    NgramModel model = train(random_corpus(rng, 30, 10, 10), config);
    std::ostringstream first;
    write_arpa(model, first);
    std::istringstream in(first.str());
    NgramModel back = read_arpa(in);
    bool ok = back.order() == model.order();
    for (int n = 1; ok && n <= model.order(); ++n) {
      ok = back.entry_count(n) == model.entry_count(n);
      if (!ok) break;
      for (const auto* kv : model.sorted_entries(n)) {
        NgramKey key;
        for (WordId id : kv->first)
          key.push_back(back.vocab().find_or_unk(model.vocab().word(id)));
        const NgramEntry* entry = back.find(key);
        if (!entry || std::abs(entry->log10_prob - kv->second.log10_prob) > 1e-4 ||
            (kv->second.has_bow && std::abs(entry->log10_bow - kv->second.log10_bow) > 1e-4)) {
          ok = false;
          break;
        }
      }
    }
    f.require(ok, "ARPA order-" + f.str(order) + " round-trip exceeded 1e-4");
    // serialization is a fixed point
    std::ostringstream second;
    write_arpa(back, second);
    f.require(first.str() == second.str(),
              "ARPA order-" + f.str(order) + " second-generation text differs");
  }
}

struct Criterion {
  const char* id;
  const char* name;
  double time_limit_s;  // 0 = no limit
  std::function<void(Failures&)> fn;
};

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"C01", "edit-distance cost equals exhaustive enumeration (1000 pairs)", 10.0, c1},
      {"C02", "planted WER fixture scores 12.00 with exact counts", 0.0, c2},
      {"C03", "ROVER unanimity exact; 5-system fusion beats best single >= 90/100", 30.0, c3},
      {"C04", "WTN merge cost equals brute force on 200 small instances", 0.0, c4},
      {"C05", "LM per-context mass within 1e-6 (trained/interpolated/round-tripped)", 0.0, c5},
      {"C06", "EM likelihood non-decreasing; disjoint-vocab weight >= 0.999", 0.0, c6},
      {"C07", "uniform unigram perplexity equals V within 1e-9", 0.0, c7},
      {"C08", "transcript retrieval recovers planted segments with true timings", 60.0, c8},
      {"C09", "WADA-SNR within 2.5 dB MAE; scale-invariant to 1e-6 dB", 0.0, c9},
      {"C10", "gating accounting exact; full range cleans 100 %", 0.0, c10},
      {"C11", "CTM/STM/ARPA parse-write-parse identity on all fixtures", 0.0, c11},
  };

  int failed = 0;
  for (const Criterion& c : criteria) {
    Failures f;
    auto start = std::chrono::steady_clock::now();
    try {
      c.fn(f);
    } catch (const std::exception& e) {
      f.messages.push_back(std::string("exception: ") + e.what());
    }
    double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.time_limit_s > 0 && elapsed >= c.time_limit_s)
      f.messages.push_back("runtime " + std::to_string(elapsed) + " s exceeds " +
                           std::to_string(c.time_limit_s) + " s");
    if (f.messages.empty()) {
      std::printf("PASS  %s  %s (%.2f s)\n", c.id, c.name, elapsed);
    } else {
      ++failed;
      std::printf("FAIL  %s  %s (%.2f s)\n", c.id, c.name, elapsed);
      for (const std::string& m : f.messages) std::printf("      - %s\n", m.c_str());
    }
  }
  if (failed > 0) std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
