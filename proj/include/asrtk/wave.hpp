// wave.hpp
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

#ifndef ASRTK_WAVE_HPP_
#define ASRTK_WAVE_HPP_

#include <iosfwd>
#include <string>
#include <vector>

namespace asrtk {

// Mono audio with samples in [-1, 1]. Multi-channel input is down-mixed by
// averaging before construction.
struct AudioBuffer {
  std::vector<float> samples;
  int sample_rate = 16000;

  double duration_seconds() const {
    return sample_rate > 0 ? static_cast<double>(samples.size()) / sample_rate : 0.0;
  }
};

// Reads RIFF/WAVE PCM: 16-bit integer or 32-bit float samples, any channel
// count and rate (WAVE_FORMAT_EXTENSIBLE accepted when it wraps one of the
// two). Channels are averaged to mono. Throws UnsupportedFormatError for
// other codecs and IoError for truncated or non-RIFF data.
AudioBuffer read_wav(std::istream& in);
AudioBuffer read_wav_file(const std::string& path);

// Writes mono 16-bit PCM.
void write_wav16(const AudioBuffer& audio, std::ostream& out);
void write_wav16_file(const AudioBuffer& audio, const std::string& path);

}  // namespace asrtk

#endif  // ASRTK_WAVE_HPP_
