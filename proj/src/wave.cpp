// wave.cpp
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

#include "asrtk/wave.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>

#include "asrtk/errors.hpp"

namespace asrtk {
namespace {

constexpr std::uint16_t kFormatPcm = 0x0001;
constexpr std::uint16_t kFormatFloat = 0x0003;
constexpr std::uint16_t kFormatExtensible = 0xFFFE;

std::uint32_t read_u32(const std::string& b, std::size_t at) {
  return static_cast<std::uint8_t>(b[at]) | static_cast<std::uint8_t>(b[at + 1]) << 8 |
         static_cast<std::uint8_t>(b[at + 2]) << 16 |
         static_cast<std::uint8_t>(b[at + 3]) << 24;
}

std::uint16_t read_u16(const std::string& b, std::size_t at) {
  return static_cast<std::uint16_t>(static_cast<std::uint8_t>(b[at]) |
                                    static_cast<std::uint8_t>(b[at + 1]) << 8);
}

std::int16_t read_i16(const std::string& b, std::size_t at) {
  return static_cast<std::int16_t>(read_u16(b, at));
}

float read_f32(const std::string& b, std::size_t at) {
  std::uint32_t u = read_u32(b, at);
  float f;
  std::memcpy(&f, &u, sizeof(f));
  return f;
}

void put_u32(std::uint32_t v, std::ostream& out) {
  char b[4] = {static_cast<char>(v), static_cast<char>(v >> 8),
               static_cast<char>(v >> 16), static_cast<char>(v >> 24)};
  out.write(b, 4);
}

void put_u16(std::uint16_t v, std::ostream& out) {
  char b[2] = {static_cast<char>(v), static_cast<char>(v >> 8)};
  out.write(b, 2);
}

}  // namespace

AudioBuffer read_wav(std::istream& in) {
  std::ostringstream buf;
  buf << in.rdbuf();
  const std::string data = buf.str();

  if (data.size() < 12 || data.compare(0, 4, "RIFF") != 0 || data.compare(8, 4, "WAVE") != 0)
    throw IoError("not a RIFF/WAVE stream");

  std::uint16_t format = 0, channels = 0, bits = 0;
  std::uint32_t sample_rate = 0;
  bool have_fmt = false;
  std::size_t data_at = 0, data_size = 0;
  bool have_data = false;

  std::size_t pos = 12;
  while (pos + 8 <= data.size()) {
    std::string id = data.substr(pos, 4);
    std::uint32_t size = read_u32(data, pos + 4);
    std::size_t body = pos + 8;
    if (id == "fmt ") {
      if (size < 16 || body + 16 > data.size()) throw IoError("truncated fmt chunk");
      format = read_u16(data, body);
      channels = read_u16(data, body + 2);
      sample_rate = read_u32(data, body + 4);
      bits = read_u16(data, body + 14);
      if (format == kFormatExtensible) {
        // cbSize(2) validBits(2) channelMask(4) then the sub-format GUID,
        // whose first two bytes hold the actual format code.
        if (size < 40 || body + 26 > data.size())
          throw UnsupportedFormatError("extensible WAVE without sub-format");
        format = read_u16(data, body + 24);
      }
      have_fmt = true;
    } else if (id == "data") {
      data_at = body;
      data_size = size;
      have_data = true;
      if (body + size > data.size()) throw IoError("truncated data chunk");
    }
    pos = body + size + (size & 1);  // chunks are word-aligned
  }

  if (!have_fmt) throw IoError("missing fmt chunk");
  if (!have_data) throw IoError("missing data chunk");
  if (channels == 0 || sample_rate == 0) throw IoError("invalid fmt chunk");

  bool pcm16 = format == kFormatPcm && bits == 16;
  bool float32 = format == kFormatFloat && bits == 32;
  if (!pcm16 && !float32)
    throw UnsupportedFormatError("unsupported WAVE codec (format " + std::to_string(format) +
                                 ", " + std::to_string(bits) + " bits); need 16-bit PCM or 32-bit float");

  const std::size_t bytes_per_sample = bits / 8;
  const std::size_t frame_bytes = bytes_per_sample * channels;
  const std::size_t frames = data_size / frame_bytes;

  AudioBuffer audio;
  audio.sample_rate = static_cast<int>(sample_rate);
  audio.samples.resize(frames);
  const double inv_channels = 1.0 / channels;
  for (std::size_t f = 0; f < frames; ++f) {
    double acc = 0.0;
    std::size_t at = data_at + f * frame_bytes;
    for (std::uint16_t c = 0; c < channels; ++c) {
      if (pcm16)
        acc += read_i16(data, at + c * 2) / 32768.0;
      else
        acc += read_f32(data, at + c * 4);
    }
    audio.samples[f] = static_cast<float>(std::clamp(acc * inv_channels, -1.0, 1.0));
  }
  return audio;
}

AudioBuffer read_wav_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open audio file: " + path);
  return read_wav(in);
}

void write_wav16(const AudioBuffer& audio, std::ostream& out) {
  const std::uint32_t n = static_cast<std::uint32_t>(audio.samples.size());
  const std::uint32_t data_bytes = n * 2;
  out.write("RIFF", 4);
  put_u32(36 + data_bytes, out);
  out.write("WAVE", 4);
  out.write("fmt ", 4);
  put_u32(16, out);
  put_u16(kFormatPcm, out);
  put_u16(1, out);  // mono
  put_u32(static_cast<std::uint32_t>(audio.sample_rate), out);
  put_u32(static_cast<std::uint32_t>(audio.sample_rate) * 2, out);
  put_u16(2, out);
  put_u16(16, out);
  out.write("data", 4);
  put_u32(data_bytes, out);
  for (float s : audio.samples) {
    double v = std::clamp(static_cast<double>(s), -1.0, 1.0);
    auto q = static_cast<std::int16_t>(std::lround(v * 32767.0));
    put_u16(static_cast<std::uint16_t>(q), out);
  }
}

void write_wav16_file(const AudioBuffer& audio, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write audio file: " + path);
  write_wav16(audio, out);
  if (!out.flush()) throw IoError("short write: " + path);
}

}  // namespace asrtk
