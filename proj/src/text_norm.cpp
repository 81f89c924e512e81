// text_norm.cpp
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

#include "asrtk/text_norm.hpp"

#include <cstdint>

namespace asrtk {
namespace {

// Minimal UTF-8 codec. Malformed bytes are passed through as Latin-1 so that
// normalization never throws on dirty subtitle text.
std::vector<char32_t> utf8_decode(std::string_view s) {
  std::vector<char32_t> out;
  out.reserve(s.size());
  std::size_t i = 0;
  while (i < s.size()) {
    unsigned char c = static_cast<unsigned char>(s[i]);
    char32_t cp = 0;
    int extra = 0;
    if (c < 0x80) {
      cp = c;
    } else if ((c >> 5) == 0x6) {
      cp = c & 0x1F;
      extra = 1;
    } else if ((c >> 4) == 0xE) {
      cp = c & 0x0F;
      extra = 2;
    } else if ((c >> 3) == 0x1E) {
      cp = c & 0x07;
      extra = 3;
    } else {
      out.push_back(c);
      ++i;
      continue;
    }
    if (i + extra >= s.size()) {
      out.push_back(c);
      ++i;
      continue;
    }
    bool ok = true;
    char32_t acc = cp;
    for (int k = 1; k <= extra; ++k) {
      unsigned char cc = static_cast<unsigned char>(s[i + k]);
      if ((cc >> 6) != 0x2) {
        ok = false;
        break;
      }
      acc = (acc << 6) | (cc & 0x3F);
    }
    if (!ok) {
      out.push_back(c);
      ++i;
      continue;
    }
    out.push_back(acc);
    i += 1 + extra;
  }
  return out;
}

void utf8_encode(char32_t cp, std::string* out) {
  if (cp < 0x80) {
    out->push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out->push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out->push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out->push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out->push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out->push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out->push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out->push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out->push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out->push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
}

std::string utf8_encode(const std::vector<char32_t>& cps) {
  std::string out;
  out.reserve(cps.size());
  for (char32_t cp : cps) utf8_encode(cp, &out);
  return out;
}

constexpr char32_t kAcute = 0x0301;
constexpr char32_t kGrave = 0x0300;
constexpr char32_t kTilde = 0x0303;
constexpr char32_t kDiaeresis = 0x0308;
constexpr char32_t kCedilla = 0x0327;

// Precomposed forms for the marks that occur in Spanish and Catalan text.
char32_t compose_pair(char32_t base, char32_t mark) {
  switch (mark) {
    case kAcute:
      switch (base) {
        case U'a': return 0x00E1; case U'e': return 0x00E9; case U'i': return 0x00ED;
        case U'o': return 0x00F3; case U'u': return 0x00FA;
        case U'A': return 0x00C1; case U'E': return 0x00C9; case U'I': return 0x00CD;
        case U'O': return 0x00D3; case U'U': return 0x00DA;
        default: return 0;
      }
    case kGrave:
      switch (base) {
        case U'a': return 0x00E0; case U'e': return 0x00E8; case U'o': return 0x00F2;
        case U'A': return 0x00C0; case U'E': return 0x00C8; case U'O': return 0x00D2;
        default: return 0;
      }
    case kTilde:
      switch (base) {
        case U'n': return 0x00F1; case U'N': return 0x00D1;
        default: return 0;
      }
    case kDiaeresis:
      switch (base) {
        case U'u': return 0x00FC; case U'U': return 0x00DC;
        case U'i': return 0x00EF; case U'I': return 0x00CF;
        default: return 0;
      }
    case kCedilla:
      switch (base) {
        case U'c': return 0x00E7; case U'C': return 0x00C7;
        default: return 0;
      }
    default:
      return 0;
  }
}

bool is_combining_mark(char32_t cp) { return cp >= 0x0300 && cp <= 0x036F; }

char32_t fold_case(char32_t cp) {
  if (cp >= U'A' && cp <= U'Z') return cp + 0x20;
  // Latin-1 capitals, skipping the multiplication sign.
  if (cp >= 0x00C0 && cp <= 0x00DE && cp != 0x00D7) return cp + 0x20;
  return cp;
}

bool is_strippable_punct(char32_t cp) {
  if (cp < 0x80) {
    bool alnum = (cp >= U'0' && cp <= U'9') || (cp >= U'a' && cp <= U'z') ||
                 (cp >= U'A' && cp <= U'Z');
    return !alnum;
  }
  // Latin-1 punctuation and symbols (¡ « · » ¿ ...), keeping the ordinal
  // indicators ª/º which appear in Spanish abbreviations.
  if (cp >= 0x00A0 && cp <= 0x00BF) return cp != 0x00AA && cp != 0x00BA;
  if (cp == 0x00D7 || cp == 0x00F7) return true;
  // General punctuation block: dashes, curly quotes, ellipsis.
  if (cp >= 0x2000 && cp <= 0x206F) return true;
  if (is_combining_mark(cp)) return true;
  return false;
}

}  // namespace

std::string compose_nfc(std::string_view token) {
  std::vector<char32_t> cps = utf8_decode(token);
  std::vector<char32_t> out;
  out.reserve(cps.size());
  for (char32_t cp : cps) {
    if (!out.empty() && is_combining_mark(cp)) {
      if (char32_t composed = compose_pair(out.back(), cp)) {
        out.back() = composed;
        continue;
      }
    }
    out.push_back(cp);
  }
  return utf8_encode(out);
}

std::string normalize_token(std::string_view token, const NormalizationRules& rules) {
  std::string composed = compose_nfc(token);
  if (composed == kNonScoredMarker) return composed;
  if (rules.auxiliary_labels.count(composed)) return kNonScoredMarker;

  std::vector<char32_t> cps = utf8_decode(composed);
  std::vector<char32_t> out;
  out.reserve(cps.size());
  for (char32_t cp : cps) {
    if (rules.case_folding) cp = fold_case(cp);
    if (rules.punctuation_strip && is_strippable_punct(cp)) continue;
    out.push_back(cp);
  }
  return utf8_encode(out);
}

std::vector<std::string> normalize_text(const std::vector<std::string>& words,
                                        const NormalizationRules& rules) {
  std::vector<std::string> out;
  out.reserve(words.size());
  for (const std::string& w : words) {
    std::string token = normalize_token(w, rules);
    if (!token.empty()) out.push_back(std::move(token));
  }
  return out;
}

}  // namespace asrtk
