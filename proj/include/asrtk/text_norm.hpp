// text_norm.hpp
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

#ifndef ASRTK_TEXT_NORM_HPP_
#define ASRTK_TEXT_NORM_HPP_

#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

namespace asrtk {

// Reserved token that replaces auxiliary labels (noise, music, overlapped
// speech). It is kept in the token stream for timing bookkeeping but is
// excluded from scoring. Deliberately not angle-bracketed so it cannot be
// confused with the STM label field.
inline constexpr const char* kNonScoredMarker = "%nonscored";

struct NormalizationRules {
  bool case_folding = true;
  bool punctuation_strip = true;
  // Tokens replaced by kNonScoredMarker, matched after NFC composition.
  std::unordered_set<std::string> auxiliary_labels;
  // Diacritics are always preserved; kept as a field so configs can state it.
  bool diacritics_preserved = true;
};

// Composes combining diacritical marks into precomposed codepoints for the
// Spanish/Catalan alphabet (acute, grave, diaeresis, tilde, cedilla) so that
// equal-looking words compare bytewise equal. Already-composed input passes
// through unchanged; the function is idempotent.
std::string compose_nfc(std::string_view token);

// Normalizes one token: NFC composition, auxiliary-label replacement, case
// folding, punctuation stripping. Returns an empty string when the token
// normalizes away entirely.
std::string normalize_token(std::string_view token, const NormalizationRules& rules);

// Normalizes a word list, dropping tokens that normalize to empty.
// Idempotent: normalize(normalize(w)) == normalize(w).
std::vector<std::string> normalize_text(const std::vector<std::string>& words,
                                        const NormalizationRules& rules);

}  // namespace asrtk

#endif  // ASRTK_TEXT_NORM_HPP_
