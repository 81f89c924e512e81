// wada.hpp
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

#ifndef ASRTK_WADA_HPP_
#define ASRTK_WADA_HPP_

#include <string>
#include <vector>

#include "asrtk/wave.hpp"

namespace asrtk {

struct SnrEstimate {
  std::string recording_id;
  double snr_db = 0.0;       // clamped to [-20, 100]
  double statistic_g = 0.0;  // ln E[|x|] - E[ln |x|]
};

// Blind SNR estimate from the waveform amplitude distribution. Computes the
// scale-invariant statistic G = ln(mean(a)) - mean(ln(a)) with a = max(|x|,
// 1e-10) and maps it through a gamma-model lookup table with linear
// interpolation, clamping to [-20, 100] dB. Throws ValidationError for
// all-zero input or less than 0.1 s of audio.
SnrEstimate wada_snr(const AudioBuffer& audio);

// Batch over files; recording ids are the file stems. I/O or signal errors
// are reported by throwing from the offending file.
std::vector<SnrEstimate> wada_snr_batch(const std::vector<std::string>& paths, int threads);
std::vector<SnrEstimate> wada_snr_batch_serial(const std::vector<std::string>& paths);

// File stem ("dir/x.wav" -> "x"); used as the recording id in reports.
std::string file_stem(const std::string& path);

}  // namespace asrtk

#endif  // ASRTK_WADA_HPP_
