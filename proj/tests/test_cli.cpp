// test_cli.cpp
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
// End-to-end tests of the installed binary (path in $ASRTK_BIN): subcommand
// wiring, exit codes, file outputs.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>

#include <json.hpp>

#include "asrtk/ctm.hpp"
#include "asrtk/stm.hpp"
#include "asrtk/wave.hpp"
#include "retrieval_fixture.hpp"
#include "test_util.hpp"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string binary() {
  const char* bin = std::getenv("ASRTK_BIN");
  REQUIRE_MESSAGE(bin != nullptr, "ASRTK_BIN must point at the asrtk binary");
  return bin;
}

struct RunResult {
  int exit_code = -1;
  std::string out;
  std::string err;
};

fs::path work_dir() {
  static fs::path dir = [] {
    fs::path d = fs::temp_directory_path() / ("asrtk_cli_" + std::to_string(::getpid()));
    fs::remove_all(d);
    fs::create_directories(d);
    return d;
  }();
  return dir;
}

RunResult run(const std::string& args) {
  fs::path out = work_dir() / "stdout.txt";
  fs::path err = work_dir() / "stderr.txt";
  std::string cmd = binary() + " " + args + " > " + out.string() + " 2> " + err.string();
  int rc = std::system(cmd.c_str());
  RunResult result;
  result.exit_code = WEXITSTATUS(rc);
  std::ostringstream o, e;
  o << std::ifstream(out).rdbuf();
  e << std::ifstream(err).rdbuf();
  result.out = o.str();
  result.err = e.str();
  return result;
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream out(path);
  out << content;
}

}  // namespace

TEST_CASE("score: identical content gives wer 0 and exit 0") {
  fs::path dir = work_dir();
  write_file(dir / "ref.stm", "rec1 1 spk 0.0 5.0 buenos dias España\n");
  write_file(dir / "hyp.ctm",
             "rec1 1 0.5 0.4 Buenos\nrec1 1 1.0 0.4 dias\nrec1 1 1.5 0.4 españa,\n");
  RunResult r = run("score --ref " + (dir / "ref.stm").string() + " --hyp " +
                    (dir / "hyp.ctm").string());
  REQUIRE(r.exit_code == 0);
  json j = json::parse(r.out);
  CHECK(j["wer"].get<double>() == doctest::Approx(0.0));
  CHECK(j["n_ref"].get<int>() == 3);
  CHECK(j["n_cor"].get<int>() == 3);
}

TEST_CASE("score: per-recording TSV output") {
  fs::path dir = work_dir();
  write_file(dir / "ref2.stm", "recA 1 spk 0.0 5.0 uno dos\nrecB 1 spk 0.0 5.0 tres\n");
  write_file(dir / "hyp2.ctm", "recA 1 0.5 0.4 uno\nrecA 1 1.0 0.4 xxx\nrecB 1 0.5 0.4 tres\n");
  fs::path tsv = dir / "per_rec.tsv";
  RunResult r = run("score --ref " + (dir / "ref2.stm").string() + " --hyp " +
                    (dir / "hyp2.ctm").string() + " --tsv " + tsv.string());
  REQUIRE(r.exit_code == 0);
  std::ostringstream read;
  read << std::ifstream(tsv).rdbuf();
  std::string table = read.str();
  CHECK(table.find("recA") != std::string::npos);
  CHECK(table.find("recB") != std::string::npos);
  CHECK(table.find("TOTAL") != std::string::npos);
  json j = json::parse(r.out);
  CHECK(j["wer"].get<double>() == doctest::Approx(100.0 / 3.0));
}

TEST_CASE("score: missing file exits 1, bad flag exits 2") {
  CHECK(run("score --ref /nonexistent.stm --hyp /nonexistent.ctm").exit_code == 1);
  CHECK(run("score --bogus-flag x").exit_code == 2);
  CHECK(run("nonsense-subcommand").exit_code == 2);
}

TEST_CASE("rover: single system exits 1, fusion works with three") {
  fs::path dir = work_dir();
  write_file(dir / "s1.ctm", "rec 1 0.0 0.4 casa\nrec 1 0.5 0.4 azul\n");
  write_file(dir / "s2.ctm", "rec 1 0.0 0.4 casa\nrec 1 0.5 0.4 azul\n");
  write_file(dir / "s3.ctm", "rec 1 0.0 0.4 caza\nrec 1 0.5 0.4 azul\n");
  CHECK(run("rover --systems " + (dir / "s1.ctm").string()).exit_code == 1);

  fs::path fused = dir / "fused.ctm";
  fs::path trace = dir / "trace.json";
  RunResult r = run("rover --systems " + (dir / "s1.ctm").string() + " " +
                    (dir / "s2.ctm").string() + " " + (dir / "s3.ctm").string() +
                    " --out " + fused.string() + " --trace " + trace.string());
  REQUIRE(r.exit_code == 0);
  asrtk::CtmFile result = asrtk::read_ctm_file(fused.string());
  REQUIRE(result.tokens.size() == 2);
  CHECK(result.tokens[0].word == "casa");
  CHECK(result.tokens[1].word == "azul");
  json t = json::parse(std::ifstream(trace));
  CHECK(t["system_order"].size() == 3);
  CHECK(t["recordings"].size() == 1);
}

TEST_CASE("lm-train, lm-ppl, lm-interp round trip") {
  fs::path dir = work_dir();
  write_file(dir / "corpus_a.txt", "el gato come\nel perro come\nel gato duerme\n");
  write_file(dir / "corpus_b.txt", "la casa es azul\nla casa es roja\n");
  write_file(dir / "dev.txt", "el gato come\nla casa es azul\n");

  fs::path model_a = dir / "a.arpa";
  fs::path model_b = dir / "b.arpa";
  REQUIRE(run("lm-train " + (dir / "corpus_a.txt").string() + " --order 3 --out " +
              model_a.string()).exit_code == 0);
  REQUIRE(run("lm-train " + (dir / "corpus_b.txt").string() + " --order 3 --out " +
              model_b.string()).exit_code == 0);

  RunResult ppl = run("lm-ppl " + model_a.string() + " " + (dir / "dev.txt").string());
  REQUIRE(ppl.exit_code == 0);
  json pj = json::parse(ppl.out);
  CHECK(pj["perplexity"].get<double>() > 1.0);
  CHECK(pj["n_events"].get<int>() == 9);  // 3+1 and 4+1 events

  fs::path merged = dir / "merged.arpa";
  RunResult mix = run("lm-interp " + model_a.string() + " " + model_b.string() +
                      " --heldout " + (dir / "dev.txt").string() + " --out " + merged.string());
  REQUIRE(mix.exit_code == 0);
  json mj = json::parse(mix.out);
  REQUIRE(mj["weights"].size() == 2);
  double sum = mj["weights"][0].get<double>() + mj["weights"][1].get<double>();
  CHECK(sum == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(fs::exists(merged));

  // merged model must still be loadable and scoreable
  RunResult ppl2 = run("lm-ppl " + merged.string() + " " + (dir / "dev.txt").string());
  CHECK(ppl2.exit_code == 0);
  CHECK(json::parse(ppl2.out)["perplexity"].get<double>() > 1.0);

  // one-model interpolation is a validation error
  CHECK(run("lm-interp " + model_a.string() + " --heldout " + (dir / "dev.txt").string())
            .exit_code == 1);
}

TEST_CASE("lm-train input errors exit 1") {
  fs::path dir = work_dir();
  write_file(dir / "empty.txt", "");
  CHECK(run("lm-train " + (dir / "empty.txt").string()).exit_code == 1);
  CHECK(run("lm-train /no/such/corpus.txt").exit_code == 1);
  // unknown smoothing is a configuration problem
  write_file(dir / "one.txt", "a b\n");
  CHECK(run("lm-train " + (dir / "one.txt").string() + " --smoothing qq").exit_code == 2);
}

TEST_CASE("retrieve: end-to-end on the planted fixture") {
  std::mt19937 rng(2025);
  auto corpus = asrtk_test::make_planted_corpus(rng, 3);
  fs::path dir = work_dir();

  std::vector<asrtk::StmSegment> caption_stm;
  for (const auto& cc : corpus.captions) {
    for (const auto& cap : cc.captions) {
      asrtk::StmSegment seg;
      seg.recording_id = cc.recording_id;
      seg.channel = "1";
      seg.speaker = "captions";
      seg.start = cap.nominal_start;
      seg.end = cap.nominal_end;
      seg.text = cap.text;
      caption_stm.push_back(std::move(seg));
    }
  }
  asrtk::write_stm_file(caption_stm, (dir / "captions.stm").string());
  {
    std::ofstream out(dir / "pass1.jsonl");
    asrtk::write_nbest_jsonl(corpus.nbest_pass1, out);
    std::ofstream out2(dir / "pass2.jsonl");
    asrtk::write_nbest_jsonl(corpus.nbest_pass2, out2);
  }

  fs::path seg_stm = dir / "retained.stm";
  fs::path stats = dir / "stats.json";
  RunResult r = run("retrieve --captions " + (dir / "captions.stm").string() + " --nbest " +
                    (dir / "pass1.jsonl").string() + " --nbest " +
                    (dir / "pass2.jsonl").string() + " --out-stm " + seg_stm.string() +
                    " --out-stats " + stats.string() + " --label dev");
  REQUIRE_MESSAGE(r.exit_code == 0, r.err);

  json sj = json::parse(std::ifstream(stats));
  CHECK(sj["label"] == "dev");
  REQUIRE(sj["passes"].size() == 2);
  CHECK(sj["original_hours"].get<double>() > 0.0);
  double fraction = sj["retained_fraction"].get<double>();
  CHECK(fraction >= 0.9);
  CHECK(fraction < 1.0);
  CHECK(sj["per_show"].size() == 3);

  auto segments = asrtk::read_stm_file(seg_stm.string());
  CHECK(segments.size() == corpus.expected_retained);
}

TEST_CASE("wadasnr and gate end-to-end") {
  std::mt19937 rng(31337);
  fs::path dir = work_dir();
  fs::path audio_dir = dir / "audio";
  fs::create_directories(audio_dir);
  std::vector<std::string> files;
  std::vector<double> snrs = {0.0, 20.0, 40.0};
  for (std::size_t i = 0; i < snrs.size(); ++i) {
    fs::path p = audio_dir / ("a" + std::to_string(i) + ".wav");
    asrtk::write_wav16_file(asrtk_test::speech_plus_noise(rng, snrs[i], 0.5), p.string());
    files.push_back(p.string());
  }
  std::string file_args = files[0] + " " + files[1] + " " + files[2];

  RunResult w = run("wadasnr " + file_args);
  REQUIRE(w.exit_code == 0);
  json wj = json::parse(w.out);
  REQUIRE(wj["files"].size() == 3);
  CHECK(std::abs(wj["files"][0]["snr_db"].get<double>() - 0.0) < 3.0);

  fs::path out_dir = dir / "gated";
  fs::path report = dir / "gate.json";
  RunResult g = run("gate " + file_args + " --range=-5:8 --cmd 'cp {in} {out}' --out-dir " +
                    out_dir.string() + " --json " + report.string());
  REQUIRE_MESSAGE(g.exit_code == 0, g.err);
  json gj = json::parse(std::ifstream(report));
  CHECK(gj["range"] == "-5:8");
  CHECK(gj["cleaned_fraction"].get<double>() == doctest::Approx(100.0 / 3.0));
  for (const auto& f : gj["files"]) CHECK(fs::exists(out_dir / (f["id"].get<std::string>() + ".wav")));

  // missing enhancement command: configuration error
  CHECK(run("gate " + file_args + " --range=-5:8 --cmd 'no-such-cmd-zz {in} {out}' --out-dir " +
            out_dir.string()).exit_code == 2);
  // malformed range: configuration error
  CHECK(run("gate " + file_args + " --range=8:-5 --cmd 'cp {in} {out}' --out-dir " +
            out_dir.string()).exit_code == 2);
}

TEST_CASE("report renders the three stats schemas") {
  fs::path dir = work_dir();

  // score schema
  write_file(dir / "sys1.json",
             R"({"n_ref":100,"n_cor":90,"n_sub":6,"n_ins":2,"n_del":4,"wer":12.0})");
  write_file(dir / "sys2.json",
             R"({"n_ref":100,"n_cor":95,"n_sub":3,"n_ins":1,"n_del":2,"wer":6.0})");
  RunResult r = run("report " + (dir / "sys1.json").string() + " " +
                    (dir / "sys2.json").string());
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.find("WER") != std::string::npos);
  CHECK(r.out.find("12.00") != std::string::npos);
  CHECK(r.out.find("6.00") != std::string::npos);

  // retrieval schema, markdown
  write_file(dir / "ret.json", R"({"label":"train","original_hours":468.0,
    "retained_hours":234.2,"retained_fraction":0.5,
    "passes":[{"pass":1,"retained_hours":99.4,"retained_fraction":0.21,"segments":10},
              {"pass":2,"retained_hours":234.2,"retained_fraction":0.5,"segments":20}],
    "per_show":{}})");
  r = run("report --format md " + (dir / "ret.json").string());
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.find("| train |") != std::string::npos);
  CHECK(r.out.find("1-pass") != std::string::npos);
  CHECK(r.out.find("2-pass") != std::string::npos);
  CHECK(r.out.find("234.20") != std::string::npos);
  CHECK(r.out.find("99.40") != std::string::npos);

  // gate schema
  write_file(dir / "g1.json",
             R"({"range":"-5:8","cleaned_fraction":14.95,"files":[{"id":"x","snr_db":1.0,"gated":true,"status":"enhanced"}]})");
  write_file(dir / "g2.json",
             R"({"range":"-inf:inf","cleaned_fraction":100.0,"files":[{"id":"x","snr_db":1.0,"gated":true,"status":"enhanced"}]})");
  r = run("report " + (dir / "g1.json").string() + " " + (dir / "g2.json").string());
  REQUIRE(r.exit_code == 0);
  CHECK(r.out.find("-5:8") != std::string::npos);
  CHECK(r.out.find("100.00") != std::string::npos);

  // unknown schema: validation error
  write_file(dir / "bad.json", R"({"what":1})");
  CHECK(run("report " + (dir / "bad.json").string()).exit_code == 1);
  // mixed schemas: validation error
  CHECK(run("report " + (dir / "sys1.json").string() + " " + (dir / "g1.json").string())
            .exit_code == 1);
}

TEST_CASE("config file sets defaults, flags win, unknown keys rejected") {
  fs::path dir = work_dir();
  write_file(dir / "ref3.stm", "rec 1 spk 0.0 5.0 hola\n");
  write_file(dir / "hyp3.ctm", "rec 1 0.5 0.4 hola\n");
  write_file(dir / "ok.ini", "[score]\nworkers=2\n");
  RunResult r = run("--config " + (dir / "ok.ini").string() + " score --ref " +
                    (dir / "ref3.stm").string() + " --hyp " + (dir / "hyp3.ctm").string());
  REQUIRE_MESSAGE(r.exit_code == 0, r.err);
  CHECK(json::parse(r.out)["wer"].get<double>() == doctest::Approx(0.0));

  write_file(dir / "bad.ini", "[score]\nnot_a_real_key=1\n");
  CHECK(run("--config " + (dir / "bad.ini").string() + " score --ref " +
            (dir / "ref3.stm").string() + " --hyp " + (dir / "hyp3.ctm").string())
            .exit_code == 2);
}
