// gate.cpp
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

#include "asrtk/gate.hpp"

#include <cstdlib>
#include <filesystem>
#include <limits>

#include "asrtk/errors.hpp"
#include "asrtk/parallel.hpp"

namespace fs = std::filesystem;

namespace asrtk {
namespace {

double parse_bound(std::string_view field) {
  if (field == "-inf") return -std::numeric_limits<double>::infinity();
  if (field == "inf" || field == "+inf") return std::numeric_limits<double>::infinity();
  std::string s(field);
  char* end = nullptr;
  double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || *end != '\0')
    throw ConfigError("cannot parse SNR bound '" + s + "'");
  return v;
}

std::string shell_quote(const std::string& path) {
  std::string out = "'";
  for (char c : path) {
    if (c == '\'')
      out += "'\\''";
    else
      out += c;
  }
  out += "'";
  return out;
}

std::string substitute(const std::string& tmpl, const std::string& in,
                       const std::string& out) {
  std::string cmd = tmpl;
  auto replace_all = [&cmd](const std::string& from, const std::string& to) {
    std::size_t pos = 0;
    while ((pos = cmd.find(from, pos)) != std::string::npos) {
      cmd.replace(pos, from.size(), to);
      pos += to.size();
    }
  };
  replace_all("{in}", shell_quote(in));
  replace_all("{out}", shell_quote(out));
  return cmd;
}

// Checks that the template's executable resolves, via PATH when it carries no
// directory component.
void check_command(const std::string& tmpl) {
  std::size_t begin = tmpl.find_first_not_of(" \t");
  if (begin == std::string::npos) throw ConfigError("empty command template");
  std::size_t end = tmpl.find_first_of(" \t", begin);
  std::string argv0 = tmpl.substr(begin, end == std::string::npos ? end : end - begin);

  auto executable = [](const fs::path& p) {
    std::error_code ec;
    return fs::exists(p, ec) && !fs::is_directory(p, ec);
  };
  if (argv0.find('/') != std::string::npos) {
    if (executable(argv0)) return;
    throw ConfigError("enhancement command not found: " + argv0);
  }
  const char* path_env = std::getenv("PATH");
  std::string path = path_env ? path_env : "";
  std::size_t pos = 0;
  while (pos <= path.size()) {
    std::size_t colon = path.find(':', pos);
    std::string dir = path.substr(pos, colon == std::string::npos ? colon : colon - pos);
    if (!dir.empty() && executable(fs::path(dir) / argv0)) return;
    if (colon == std::string::npos) break;
    pos = colon + 1;
  }
  throw ConfigError("enhancement command not found on PATH: " + argv0);
}

}  // namespace

GateRange parse_gate_range(std::string_view spec) {
  std::size_t colon = spec.find(':');
  if (colon == std::string_view::npos)
    throw ConfigError("SNR range must look like 'low:high', got '" + std::string(spec) + "'");
  GateRange range{parse_bound(spec.substr(0, colon)), parse_bound(spec.substr(colon + 1))};
  if (!(range.low < range.high))
    throw ConfigError("SNR range low bound must be below high bound");
  return range;
}

std::string format_gate_range(const GateRange& range) {
  auto bound = [](double v) -> std::string {
    if (v == -std::numeric_limits<double>::infinity()) return "-inf";
    if (v == std::numeric_limits<double>::infinity()) return "inf";
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
  };
  return bound(range.low) + ":" + bound(range.high);
}

bool gate_decision(const SnrEstimate& est, const GateRange& range) {
  return range.low < est.snr_db && est.snr_db < range.high;
}

GateReport enhance_dispatch(const std::vector<std::string>& files,
                            const DispatchConfig& config) {
  if (config.command_template.find("{in}") == std::string::npos ||
      config.command_template.find("{out}") == std::string::npos)
    throw ConfigError("command template needs {in} and {out} placeholders");
  check_command(config.command_template);
  if (config.output_dir.empty()) throw ConfigError("output directory required");
  fs::create_directories(config.output_dir);

  GateReport report;
  report.range = config.range;
  report.files.resize(files.size());

  parallel_for(files.size(), config.workers, [&](std::size_t i) {
    GateFileResult& r = report.files[i];
    r.path = files[i];
    r.id = file_stem(files[i]);
    const fs::path out_path = fs::path(config.output_dir) / fs::path(files[i]).filename();

    try {
      SnrEstimate est = wada_snr(read_wav_file(files[i]));
      r.snr_db = est.snr_db;
      r.gated = gate_decision(est, config.range);
    } catch (const Error& e) {
      r.status = std::string("error: ") + e.what();
      return;
    }

    std::error_code ec;
    if (!r.gated) {
      fs::copy_file(files[i], out_path, fs::copy_options::overwrite_existing, ec);
      r.status = ec ? "error: copy failed" : "copied";
      return;
    }
    const std::string cmd = substitute(config.command_template, files[i], out_path.string());
    int rc = std::system(cmd.c_str());
    if (rc == 0 && fs::exists(out_path)) {
      r.status = "enhanced";
    } else {
      // Keep the original so the pipeline continues with unenhanced audio.
      fs::copy_file(files[i], out_path, fs::copy_options::overwrite_existing, ec);
      r.status = "enhance_failed";
    }
  });

  std::size_t gated = 0;
  for (const GateFileResult& r : report.files)
    if (r.gated) ++gated;
  report.cleaned_fraction =
      files.empty() ? 0.0 : 100.0 * static_cast<double>(gated) / static_cast<double>(files.size());
  return report;
}

}  // namespace asrtk
