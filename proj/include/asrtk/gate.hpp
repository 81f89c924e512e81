// gate.hpp
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

#ifndef ASRTK_GATE_HPP_
#define ASRTK_GATE_HPP_

#include <string>
#include <string_view>
#include <vector>

#include "asrtk/wada.hpp"

namespace asrtk {

// Open SNR interval; +-infinity allowed on either side.
struct GateRange {
  double low;
  double high;
};

// Parses "low:high"; "-inf"/"inf" spell the unbounded ends, e.g. "-5:8" or
// "-inf:10". Throws ConfigError unless low < high.
GateRange parse_gate_range(std::string_view spec);
std::string format_gate_range(const GateRange& range);

// True iff low < snr_db < high (boundary equality is not gated).
bool gate_decision(const SnrEstimate& est, const GateRange& range);

struct GateFileResult {
  std::string id;
  std::string path;
  double snr_db = 0.0;
  bool gated = false;
  // "enhanced", "copied", "enhance_failed" (original kept) or "error: ...".
  std::string status;
};

struct GateReport {
  std::vector<GateFileResult> files;
  double cleaned_fraction = 0.0;  // percent: 100 * gated / total
  GateRange range{};
};

struct DispatchConfig {
  GateRange range;
  // External command with {in} and {out} placeholders, e.g.
  // "separate-music {in} {out}". Must name a resolvable executable.
  std::string command_template;
  std::string output_dir;
  int workers = 0;
};

// Estimates SNR per file, runs the external command on gated files and copies
// the rest through unchanged. A failing command leaves the original file in
// place and is flagged; a missing executable raises ConfigError before any
// processing starts.
GateReport enhance_dispatch(const std::vector<std::string>& files,
                            const DispatchConfig& config);

}  // namespace asrtk

#endif  // ASRTK_GATE_HPP_
