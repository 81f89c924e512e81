// asrtk_main.cpp
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
// Single binary exposing the toolkit as subcommands: score, rover, lm-train,
// lm-interp, lm-ppl, retrieve, wadasnr, gate, report. Exit codes: 0 success,
// 1 validation/parse errors, 2 configuration errors. Diagnostics go to
// stderr; data goes to stdout or to files.

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "asrtk/arpa.hpp"
#include "asrtk/ctm.hpp"
#include "asrtk/errors.hpp"
#include "asrtk/gate.hpp"
#include "asrtk/ngram_interp.hpp"
#include "asrtk/ngram_train.hpp"
#include "asrtk/retrieval.hpp"
#include "asrtk/rover.hpp"
#include "asrtk/stm.hpp"
#include "asrtk/text_norm.hpp"
#include "asrtk/wada.hpp"
#include "asrtk/wer.hpp"

using nlohmann::json;

namespace {

void emit(const std::string& data, const std::string& path) {
  if (path.empty() || path == "-") {
    std::cout << data;
    if (!data.empty() && data.back() != '\n') std::cout << '\n';
    return;
  }
  std::ofstream out(path);
  if (!out) throw asrtk::IoError("cannot write output file: " + path);
  out << data;
}

json finite_or_null(double v) {
  if (std::isfinite(v)) return v;
  return nullptr;
}

asrtk::NormalizationRules make_rules(bool no_case_fold, bool no_punct_strip,
                                     const std::vector<std::string>& aux_labels) {
  asrtk::NormalizationRules rules;
  rules.case_folding = !no_case_fold;
  rules.punctuation_strip = !no_punct_strip;
  rules.auxiliary_labels.insert(aux_labels.begin(), aux_labels.end());
  return rules;
}

void normalize_stm(std::vector<asrtk::StmSegment>& segments,
                   const asrtk::NormalizationRules& rules) {
  for (asrtk::StmSegment& seg : segments) seg.text = normalize_text(seg.text, rules);
}

// Normalizes hypothesis tokens; tokens that normalize to nothing or to the
// non-scored marker are dropped.
asrtk::CtmFile normalize_ctm(const asrtk::CtmFile& ctm, const asrtk::NormalizationRules& rules) {
  std::vector<asrtk::WordToken> tokens;
  tokens.reserve(ctm.tokens.size());
  for (const asrtk::WordToken& tok : ctm.tokens) {
    std::string w = normalize_token(tok.word, rules);
    if (w.empty() || w == asrtk::kNonScoredMarker) continue;
    asrtk::WordToken copy = tok;
    copy.word = std::move(w);
    tokens.push_back(std::move(copy));
  }
  return asrtk::CtmFile::from_tokens(std::move(tokens));
}

// ---------------------------------------------------------------------------
// score

struct ScoreArgs {
  std::string ref_path, hyp_path;
  std::string json_path = "-";
  std::string tsv_path;
  bool no_case_fold = false, no_punct_strip = false, no_normalize = false;
  std::vector<std::string> aux_labels;
  int workers = 0;
};

json report_to_json(const asrtk::WerReport& r) {
  return json{{"n_ref", r.n_ref}, {"n_cor", r.n_cor},   {"n_sub", r.n_sub},
              {"n_ins", r.n_ins}, {"n_del", r.n_del},   {"wer", finite_or_null(r.wer())}};
}

int run_score(const ScoreArgs& args) {
  std::vector<asrtk::StmSegment> refs = asrtk::read_stm_file(args.ref_path);
  asrtk::CtmFile hyp = asrtk::read_ctm_file(args.hyp_path);
  if (!args.no_normalize) {
    asrtk::NormalizationRules rules =
        make_rules(args.no_case_fold, args.no_punct_strip, args.aux_labels);
    normalize_stm(refs, rules);
    hyp = normalize_ctm(hyp, rules);
  }
  asrtk::ScoreConfig config;
  config.threads = args.workers;
  asrtk::ScoreResult result = asrtk::score_wer(refs, hyp, config);

  json per_recording = json::object();
  for (const auto& [id, rec] : result.per_recording) {
    json j = report_to_json(rec.counts);
    j["ref_missing"] = rec.ref_missing;
    per_recording[id] = std::move(j);
  }
  json summary = report_to_json(result.total);
  summary["per_recording"] = std::move(per_recording);
  summary["warnings"] = result.warnings;
  for (const std::string& w : result.warnings) std::cerr << "warning: " << w << '\n';
  emit(summary.dump(2), args.json_path);

  if (!args.tsv_path.empty()) {
    std::ostringstream tsv;
    tsv << "recording\tn_ref\tn_cor\tn_sub\tn_ins\tn_del\twer\n";
    char buf[32];
    auto row = [&](const std::string& name, const asrtk::WerReport& r) {
      tsv << name << '\t' << r.n_ref << '\t' << r.n_cor << '\t' << r.n_sub << '\t' << r.n_ins
          << '\t' << r.n_del << '\t';
      if (std::isfinite(r.wer())) {
        std::snprintf(buf, sizeof(buf), "%.2f", asrtk::round_display(r.wer()));
        tsv << buf;
      } else {
        tsv << "inf";
      }
      tsv << '\n';
    };
    for (const auto& [id, rec] : result.per_recording) row(id, rec.counts);
    row("TOTAL", result.total);
    emit(tsv.str(), args.tsv_path);
  }
  return 0;
}

// ---------------------------------------------------------------------------
// rover

struct RoverArgs {
  std::vector<std::string> systems;
  std::string out_path;
  std::string trace_path;
  double alpha = 1.0;
  double null_conf = 0.7;
  double max_time_gap = 2.0;
  int workers = 0;
};

int run_rover(const RoverArgs& args) {
  if (args.systems.size() < 2)
    throw asrtk::ValidationError("rover needs at least 2 systems (--systems)");
  std::vector<asrtk::CtmFile> systems;
  systems.reserve(args.systems.size());
  for (const std::string& path : args.systems) systems.push_back(asrtk::read_ctm_file(path));

  asrtk::VoteConfig config;
  config.alpha = args.alpha;
  config.null_confidence = args.null_conf;
  config.merge.max_time_gap = args.max_time_gap;
  config.threads = args.workers;

  asrtk::FusionReport report;
  const bool want_trace = !args.trace_path.empty();
  asrtk::CtmFile fused = asrtk::rover_fuse(systems, config, &report, want_trace);
  for (const std::string& w : report.warnings) std::cerr << "warning: " << w << '\n';

  std::ostringstream out;
  out << ";; rover fusion of " << args.systems.size() << " systems, merge order:";
  for (const std::string& path : args.systems) out << ' ' << path;
  out << '\n';
  asrtk::write_ctm(fused, out);
  emit(out.str(), args.out_path);

  if (want_trace) {
    json traces = json::array();
    for (const asrtk::RecordingTrace& rt : report.traces) {
      json sets = json::array();
      for (const asrtk::SetTrace& st : rt.sets) {
        json cands = json::array();
        for (const asrtk::VoteCandidate& c : st.candidates)
          cands.push_back({{"word", c.word},
                           {"count", c.count},
                           {"max_confidence", c.max_confidence},
                           {"score", c.score}});
        sets.push_back({{"candidates", std::move(cands)}, {"winner", st.winner}});
      }
      traces.push_back({{"recording_id", rt.recording_id},
                        {"channel", rt.channel},
                        {"sets", std::move(sets)}});
    }
    json trace = {{"system_order", args.systems},
                  {"alpha", args.alpha},
                  {"null_confidence", args.null_conf},
                  {"warnings", report.warnings},
                  {"recordings", std::move(traces)}};
    emit(trace.dump(2), args.trace_path);
  }
  return 0;
}

// ---------------------------------------------------------------------------
// language model subcommands

struct LmTrainArgs {
  std::string corpus_path;
  std::string out_path = "-";
  int order = 3;
  std::string smoothing = "wb";
  double add_k = 0.0;
  bool prune_singletons = false;
  int workers = 0;
};

int run_lm_train(const LmTrainArgs& args) {
  asrtk::TrainConfig config;
  config.order = args.order;
  if (args.smoothing == "wb")
    config.smoothing = asrtk::Smoothing::kWittenBell;
  else if (args.smoothing == "addk")
    config.smoothing = asrtk::Smoothing::kAddK;
  else
    throw asrtk::ConfigError("unknown smoothing '" + args.smoothing + "' (wb or addk)");
  config.add_k = args.add_k;
  config.prune_singletons = args.prune_singletons;
  config.threads = args.workers;

  asrtk::NgramModel model = asrtk::train(asrtk::read_sentences_file(args.corpus_path), config);
  std::ostringstream out;
  asrtk::write_arpa(model, out);
  emit(out.str(), args.out_path);
  std::cerr << "trained order-" << model.order() << " model, vocabulary "
            << model.vocab().size() << " words\n";
  return 0;
}

struct LmInterpArgs {
  std::vector<std::string> model_paths;
  std::string heldout_path;
  std::string out_path;
  std::string weights_path = "-";
  double tolerance = 1e-6;
  int max_iterations = 100;
};

int run_lm_interp(const LmInterpArgs& args) {
  if (args.model_paths.size() < 2)
    throw asrtk::ValidationError("lm-interp needs at least 2 ARPA models");
  std::vector<asrtk::NgramModel> models;
  models.reserve(args.model_paths.size());
  for (const std::string& path : args.model_paths)
    models.push_back(asrtk::read_arpa_file(path));
  std::vector<const asrtk::NgramModel*> pointers;
  for (const asrtk::NgramModel& m : models) pointers.push_back(&m);

  asrtk::InterpConfig config;
  config.tolerance = args.tolerance;
  config.max_iterations = args.max_iterations;
  asrtk::InterpolationResult result =
      asrtk::interpolate(pointers, asrtk::read_sentences_file(args.heldout_path), config);

  json weights = {{"models", args.model_paths},
                  {"weights", result.weights.weights},
                  {"iterations", result.iterations},
                  {"heldout_log10", result.heldout_log10}};
  emit(weights.dump(2), args.weights_path);
  if (!args.out_path.empty()) asrtk::write_arpa_file(result.model, args.out_path);
  return 0;
}

struct LmPplArgs {
  std::string model_path;
  std::string text_path;
  std::string json_path = "-";
};

int run_lm_ppl(const LmPplArgs& args) {
  asrtk::NgramModel model = asrtk::read_arpa_file(args.model_path);
  std::vector<asrtk::Sentence> text = asrtk::read_sentences_file(args.text_path);
  asrtk::SequenceScore score = asrtk::score_sentences(model, text);
  double ppl = asrtk::perplexity(model, text);
  json out = {{"perplexity", ppl},
              {"log10_prob", score.log10_prob},
              {"n_events", score.n_events},
              {"n_oov", score.n_oov}};
  emit(out.dump(2), args.json_path);
  return 0;
}

// ---------------------------------------------------------------------------
// retrieve

struct RetrieveArgs {
  std::string captions_path;
  std::vector<std::string> nbest_paths;
  std::string out_stm;
  std::string stats_path = "-";
  std::string label = "train";
  int passes = 0;  // 0 = one pass per --nbest file
  asrtk::RetrievalConfig config;
  bool no_normalize = false;
  std::vector<std::string> aux_labels;
};

int run_retrieve(const RetrieveArgs& args) {
  std::vector<asrtk::StmSegment> caption_stm = asrtk::read_stm_file(args.captions_path);
  if (!args.no_normalize) {
    asrtk::NormalizationRules rules = make_rules(false, false, args.aux_labels);
    normalize_stm(caption_stm, rules);
  }
  std::vector<asrtk::CaptionCorpus> captions = asrtk::captions_from_stm(caption_stm);

  std::vector<std::vector<asrtk::NBestList>> per_pass;
  for (const std::string& path : args.nbest_paths) {
    std::vector<asrtk::NBestList> lists = asrtk::read_nbest_jsonl_file(path);
    if (!args.no_normalize) {
      asrtk::NormalizationRules rules = make_rules(false, false, args.aux_labels);
      for (asrtk::NBestList& list : lists) {
        for (asrtk::NBestEntry& entry : list.entries) {
          std::vector<asrtk::TimedWord> kept;
          for (asrtk::TimedWord& w : entry.words) {
            std::string norm = normalize_token(w.word, rules);
            if (norm.empty() || norm == asrtk::kNonScoredMarker) continue;
            w.word = std::move(norm);
            kept.push_back(std::move(w));
          }
          entry.words = std::move(kept);
        }
      }
    }
    per_pass.push_back(std::move(lists));
  }

  asrtk::RetrievalConfig config = args.config;
  config.passes = args.passes > 0 ? args.passes : static_cast<int>(per_pass.size());
  asrtk::MultiPassResult result = asrtk::run_two_pass(per_pass, captions, config);

  const asrtk::PassResult& final_pass = result.passes.back();
  for (const asrtk::PassResult& pass : result.passes)
    for (const std::string& w : pass.stats.warnings)
      std::cerr << "warning (pass " << pass.stats.pass_id << "): " << w << '\n';

  if (!args.out_stm.empty())
    asrtk::write_stm_file(asrtk::segments_to_stm(final_pass.segments), args.out_stm);

  const double original_hours = final_pass.stats.original_seconds / 3600.0;
  json passes = json::array();
  for (const asrtk::PassResult& pass : result.passes) {
    passes.push_back({{"pass", pass.stats.pass_id},
                      {"retained_hours", pass.stats.retained_seconds / 3600.0},
                      {"retained_fraction", pass.stats.retained_fraction()},
                      {"segments", pass.stats.segments_retained}});
  }
  json per_show = json::object();
  for (const auto& [show, stats] : final_pass.stats.per_show) {
    per_show[show] = {{"original_hours", stats.original_seconds / 3600.0},
                      {"retained_hours", stats.retained_seconds / 3600.0},
                      {"retained_fraction", stats.retained_fraction()}};
  }
  json stats = {{"label", args.label},
                {"original_hours", original_hours},
                {"retained_hours", final_pass.stats.retained_seconds / 3600.0},
                {"retained_fraction", final_pass.stats.retained_fraction()},
                {"passes", std::move(passes)},
                {"per_show", std::move(per_show)}};
  emit(stats.dump(2), args.stats_path);
  return 0;
}

// ---------------------------------------------------------------------------
// wadasnr / gate

struct WadaArgs {
  std::vector<std::string> files;
  std::string json_path = "-";
  int workers = 0;
};

int run_wadasnr(const WadaArgs& args) {
  if (args.files.empty()) throw asrtk::ValidationError("no input audio files");
  std::vector<asrtk::SnrEstimate> estimates = asrtk::wada_snr_batch(args.files, args.workers);
  json files = json::array();
  for (std::size_t i = 0; i < estimates.size(); ++i)
    files.push_back({{"id", estimates[i].recording_id},
                     {"path", args.files[i]},
                     {"snr_db", estimates[i].snr_db},
                     {"statistic_g", estimates[i].statistic_g}});
  emit(json{{"files", std::move(files)}}.dump(2), args.json_path);
  return 0;
}

struct GateArgs {
  std::vector<std::string> files;
  std::string range = "-inf:inf";
  std::string command;
  std::string out_dir;
  std::string json_path = "-";
  int workers = 0;
};

int run_gate(const GateArgs& args) {
  if (args.files.empty()) throw asrtk::ValidationError("no input audio files");
  asrtk::DispatchConfig config;
  config.range = asrtk::parse_gate_range(args.range);
  config.command_template = args.command;
  config.output_dir = args.out_dir;
  config.workers = args.workers;
  asrtk::GateReport report = asrtk::enhance_dispatch(args.files, config);

  json files = json::array();
  for (const asrtk::GateFileResult& r : report.files)
    files.push_back({{"id", r.id},
                     {"path", r.path},
                     {"snr_db", r.snr_db},
                     {"gated", r.gated},
                     {"status", r.status}});
  json out = {{"range", asrtk::format_gate_range(report.range)},
              {"cleaned_fraction", report.cleaned_fraction},
              {"files", std::move(files)}};
  emit(out.dump(2), args.json_path);
  return 0;
}

// ---------------------------------------------------------------------------
// report: renders stats JSON files as TSV or Markdown tables

struct ReportArgs {
  std::vector<std::string> stats_paths;
  std::string format = "tsv";
  std::string out_path = "-";
};

enum class StatsKind { kRetrieval, kGate, kScore };

StatsKind detect_kind(const json& j) {
  if (j.contains("passes") && j.contains("original_hours")) return StatsKind::kRetrieval;
  if (j.contains("cleaned_fraction")) return StatsKind::kGate;
  if (j.contains("wer") && j.contains("n_ref")) return StatsKind::kScore;
  throw asrtk::ValidationError("stats file matches no known schema");
}

std::string render_table(const std::vector<std::vector<std::string>>& rows, bool markdown) {
  std::ostringstream out;
  if (markdown) {
    for (std::size_t r = 0; r < rows.size(); ++r) {
      out << '|';
      for (const std::string& cell : rows[r]) out << ' ' << cell << " |";
      out << '\n';
      if (r == 0) {
        out << '|';
        for (std::size_t c = 0; c < rows[0].size(); ++c) out << " --- |";
        out << '\n';
      }
    }
  } else {
    for (const auto& row : rows) {
      for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "\t" : "") << row[c];
      out << '\n';
    }
  }
  return out.str();
}

std::string fmt2(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.2f", asrtk::round_display(v));
  return buf;
}

int run_report(const ReportArgs& args) {
  if (args.stats_paths.empty()) throw asrtk::ValidationError("no stats files given");
  std::vector<json> stats;
  std::vector<StatsKind> kinds;
  for (const std::string& path : args.stats_paths) {
    std::ifstream in(path);
    if (!in) throw asrtk::IoError("cannot open stats file: " + path);
    json j = json::parse(in, nullptr, false);
    if (j.is_discarded()) throw asrtk::ValidationError("invalid JSON in " + path);
    kinds.push_back(detect_kind(j));
    stats.push_back(std::move(j));
  }
  for (StatsKind k : kinds)
    if (k != kinds[0])
      throw asrtk::ValidationError("stats files mix different schemas in one report");

  const bool md = args.format == "md";
  if (!md && args.format != "tsv")
    throw asrtk::ConfigError("unknown report format '" + args.format + "' (tsv or md)");

  std::vector<std::vector<std::string>> rows;
  switch (kinds[0]) {
    case StatsKind::kRetrieval: {
      std::size_t max_passes = 0;
      for (const json& j : stats) max_passes = std::max(max_passes, j["passes"].size());
      std::vector<std::string> header = {"split", "Original [h]"};
      for (std::size_t p = 1; p <= max_passes; ++p)
        header.push_back(std::to_string(p) + "-pass [h]");
      rows.push_back(header);
      for (const json& j : stats) {
        std::vector<std::string> row = {j.value("label", "?"),
                                        fmt2(j["original_hours"].get<double>())};
        for (std::size_t p = 0; p < max_passes; ++p) {
          if (p < j["passes"].size())
            row.push_back(fmt2(j["passes"][p]["retained_hours"].get<double>()));
          else
            row.push_back("-");
        }
        rows.push_back(std::move(row));
      }
      break;
    }
    case StatsKind::kGate: {
      rows.push_back({"SNR range", "Cleaned Samples [%]", "files", "gated"});
      for (const json& j : stats) {
        std::size_t gated = 0;
        for (const json& f : j["files"])
          if (f["gated"].get<bool>()) ++gated;
        rows.push_back({j.value("range", "?"), fmt2(j["cleaned_fraction"].get<double>()),
                        std::to_string(j["files"].size()), std::to_string(gated)});
      }
      break;
    }
    case StatsKind::kScore: {
      rows.push_back({"system", "n_ref", "cor", "sub", "ins", "del", "WER [%]"});
      for (std::size_t i = 0; i < stats.size(); ++i) {
        const json& j = stats[i];
        std::string wer = j["wer"].is_null() ? "inf" : fmt2(j["wer"].get<double>());
        rows.push_back({asrtk::file_stem(args.stats_paths[i]),
                        std::to_string(j["n_ref"].get<long long>()),
                        std::to_string(j["n_cor"].get<long long>()),
                        std::to_string(j["n_sub"].get<long long>()),
                        std::to_string(j["n_ins"].get<long long>()),
                        std::to_string(j["n_del"].get<long long>()), wer});
      }
      break;
    }
  }
  emit(render_table(rows, md), args.out_path);
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Broadcast-TV ASR toolkit: scoring, ROVER fusion, n-gram LMs, "
               "transcript retrieval and SNR-gated enhancement dispatch"};
  app.require_subcommand(1);
  app.set_config("--config")->description("INI config file with one section per subcommand");
  app.allow_config_extras(CLI::config_extras_mode::error);

  ScoreArgs score;
  RoverArgs rover;
  LmTrainArgs lm_train;
  LmInterpArgs lm_interp;
  LmPplArgs lm_ppl;
  RetrieveArgs retrieve;
  WadaArgs wada;
  GateArgs gate;
  ReportArgs report;

  CLI::App* score_cmd = app.add_subcommand("score", "Score a hypothesis CTM against STM references");
  score_cmd->add_option("--ref", score.ref_path, "reference STM file")->required();
  score_cmd->add_option("--hyp", score.hyp_path, "hypothesis CTM file")->required();
  score_cmd->add_option("--json", score.json_path, "JSON summary output ('-' = stdout)")
      ->capture_default_str();
  score_cmd->add_option("--tsv", score.tsv_path, "per-recording TSV output file");
  score_cmd->add_flag("--no-case-fold", score.no_case_fold, "keep case when normalizing");
  score_cmd->add_flag("--no-punct-strip", score.no_punct_strip, "keep punctuation");
  score_cmd->add_flag("--no-normalize", score.no_normalize, "score the raw token strings");
  score_cmd->add_option("--aux-label", score.aux_labels,
                        "token treated as a non-scored auxiliary label (repeatable)");
  score_cmd->add_option("--workers", score.workers, "worker threads (0 = auto)")
      ->envname("ASRTK_WORKERS")->capture_default_str();

  CLI::App* rover_cmd = app.add_subcommand("rover", "ROVER word-level fusion of system CTMs");
  rover_cmd->add_option("--systems", rover.systems, "system CTM files, merge order")
      ->required()->expected(-1);
  rover_cmd->add_option("--out", rover.out_path, "fused CTM output ('-' = stdout)");
  rover_cmd->add_option("--alpha", rover.alpha,
                        "frequency weight vs. confidence, in [0,1]")->capture_default_str();
  rover_cmd->add_option("--null-conf", rover.null_conf, "confidence of NULL arcs")
      ->capture_default_str();
  rover_cmd->add_option("--max-time-gap", rover.max_time_gap,
                        "max midpoint distance for aligning arcs, seconds")
      ->capture_default_str();
  rover_cmd->add_option("--trace", rover.trace_path, "write per-set vote tallies to this JSON");
  rover_cmd->add_option("--workers", rover.workers, "worker threads (0 = auto)")
      ->envname("ASRTK_WORKERS")->capture_default_str();

  CLI::App* lmt_cmd = app.add_subcommand("lm-train", "Train a back-off n-gram model (ARPA out)");
  lmt_cmd->add_option("corpus", lm_train.corpus_path, "training text, one sentence per line")
      ->required();
  lmt_cmd->add_option("--order", lm_train.order, "n-gram order")->capture_default_str();
  lmt_cmd->add_option("--smoothing", lm_train.smoothing, "wb (Witten-Bell) or addk")
      ->capture_default_str();
  lmt_cmd->add_option("--k", lm_train.add_k, "k for addk smoothing")->capture_default_str();
  lmt_cmd->add_flag("--prune-singletons", lm_train.prune_singletons,
                    "drop count-1 n-grams above order 2");
  lmt_cmd->add_option("--out", lm_train.out_path, "ARPA output ('-' = stdout)")
      ->capture_default_str();
  lmt_cmd->add_option("--workers", lm_train.workers, "worker threads (0 = auto)")
      ->envname("ASRTK_WORKERS")->capture_default_str();

  CLI::App* lmi_cmd = app.add_subcommand(
      "lm-interp", "Interpolate ARPA models with EM-tuned weights on held-out text");
  lmi_cmd->add_option("models", lm_interp.model_paths, "component ARPA files")->required()
      ->expected(-1);
  lmi_cmd->add_option("--heldout", lm_interp.heldout_path, "held-out tuning text")->required();
  lmi_cmd->add_option("--out", lm_interp.out_path, "merged ARPA output file");
  lmi_cmd->add_option("--weights-out", lm_interp.weights_path,
                      "weights JSON output ('-' = stdout)")->capture_default_str();
  lmi_cmd->add_option("--tolerance", lm_interp.tolerance, "EM weight-change stop threshold")
      ->capture_default_str();
  lmi_cmd->add_option("--max-iterations", lm_interp.max_iterations, "EM iteration cap")
      ->capture_default_str();

  CLI::App* lmp_cmd = app.add_subcommand("lm-ppl", "Perplexity of text under an ARPA model");
  lmp_cmd->add_option("model", lm_ppl.model_path, "ARPA model")->required();
  lmp_cmd->add_option("text", lm_ppl.text_path, "evaluation text")->required();
  lmp_cmd->add_option("--json", lm_ppl.json_path, "JSON output ('-' = stdout)")
      ->capture_default_str();

  CLI::App* ret_cmd = app.add_subcommand(
      "retrieve", "Recover reliable, re-timed transcript segments from shifted captions");
  ret_cmd->add_option("--captions", retrieve.captions_path, "caption STM (nominal times)")
      ->required();
  ret_cmd->add_option("--nbest", retrieve.nbest_paths,
                      "n-best JSONL per pass (repeat for pass 2, 3)")->required();
  ret_cmd->add_option("--out-stm", retrieve.out_stm, "retained segments STM (final pass)");
  ret_cmd->add_option("--out-stats", retrieve.stats_path, "stats JSON ('-' = stdout)")
      ->capture_default_str();
  ret_cmd->add_option("--label", retrieve.label, "split label used in reports")
      ->capture_default_str();
  ret_cmd->add_option("--order", retrieve.config.biased_lm_order, "biased LM order")
      ->capture_default_str();
  ret_cmd->add_option("--lm-weight", retrieve.config.lm_weight, "biased LM weight")
      ->capture_default_str();
  ret_cmd->add_option("--hyp-weight", retrieve.config.hyp_weight,
                      "recognizer score weight (must stay below --lm-weight)")
      ->capture_default_str();
  ret_cmd->add_option("--max-gap", retrieve.config.max_segment_gap,
                      "segment split gap, seconds")->capture_default_str();
  ret_cmd->add_option("--max-len", retrieve.config.max_segment_len,
                      "max segment length, seconds")->capture_default_str();
  ret_cmd->add_option("--wer-threshold", retrieve.config.segment_wer_threshold,
                      "max per-segment WER percent")->capture_default_str();
  ret_cmd->add_option("--passes", retrieve.passes,
                      "passes to run (0 = one per --nbest file)")->capture_default_str();
  ret_cmd->add_flag("--no-normalize", retrieve.no_normalize, "skip text normalization");
  ret_cmd->add_option("--aux-label", retrieve.aux_labels,
                      "auxiliary label token (repeatable)");
  ret_cmd->add_option("--workers", retrieve.config.threads, "worker threads (0 = auto)")
      ->envname("ASRTK_WORKERS")->capture_default_str();

  CLI::App* wada_cmd = app.add_subcommand("wadasnr", "Blind per-file SNR estimates");
  wada_cmd->add_option("files", wada.files, "WAV files")->required()->expected(-1);
  wada_cmd->add_option("--json", wada.json_path, "JSON output ('-' = stdout)")
      ->capture_default_str();
  wada_cmd->add_option("--workers", wada.workers, "worker threads (0 = auto)")
      ->envname("ASRTK_WORKERS")->capture_default_str();

  CLI::App* gate_cmd = app.add_subcommand(
      "gate", "Route files inside an SNR range to an external enhancement command");
  gate_cmd->add_option("files", gate.files, "WAV files")->required()->expected(-1);
  gate_cmd->add_option("--range", gate.range, "open SNR interval low:high (use -inf/inf)")
      ->capture_default_str();
  gate_cmd->add_option("--cmd", gate.command,
                       "enhancement command with {in} and {out} placeholders")->required();
  gate_cmd->add_option("--out-dir", gate.out_dir, "output directory")->required();
  gate_cmd->add_option("--json", gate.json_path, "report JSON ('-' = stdout)")
      ->capture_default_str();
  gate_cmd->add_option("--workers", gate.workers, "worker threads (0 = auto)")
      ->envname("ASRTK_WORKERS")->capture_default_str();

  CLI::App* report_cmd =
      app.add_subcommand("report", "Render stats JSON files as TSV or Markdown tables");
  report_cmd->add_option("stats", report.stats_paths, "stats JSON files from other subcommands")
      ->required()->expected(-1);
  report_cmd->add_option("--format", report.format, "tsv or md")->capture_default_str();
  report_cmd->add_option("--out", report.out_path, "output file ('-' = stdout)")
      ->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 2;
  }

  try {
    if (score_cmd->parsed()) return run_score(score);
    if (rover_cmd->parsed()) return run_rover(rover);
    if (lmt_cmd->parsed()) return run_lm_train(lm_train);
    if (lmi_cmd->parsed()) return run_lm_interp(lm_interp);
    if (lmp_cmd->parsed()) return run_lm_ppl(lm_ppl);
    if (ret_cmd->parsed()) return run_retrieve(retrieve);
    if (wada_cmd->parsed()) return run_wadasnr(wada);
    if (gate_cmd->parsed()) return run_gate(gate);
    if (report_cmd->parsed()) return run_report(report);
  } catch (const asrtk::ConfigError& e) {
    std::cerr << "configuration error: " << e.what() << '\n';
    return 2;
  } catch (const asrtk::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return 0;
}
