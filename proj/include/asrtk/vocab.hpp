// vocab.hpp
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

#ifndef ASRTK_VOCAB_HPP_
#define ASRTK_VOCAB_HPP_

#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

namespace asrtk {

using WordId = std::uint32_t;

// Interned word table. Ids are assigned in first-come order, so building the
// vocabulary serially keeps ids deterministic. The unknown, sentence-start
// and sentence-end markers are always present.
class Vocabulary {
 public:
  static constexpr const char* kUnk = "<unk>";
  static constexpr const char* kBos = "<s>";
  static constexpr const char* kEos = "</s>";
  static constexpr WordId kUnkId = 0;
  static constexpr WordId kBosId = 1;
  static constexpr WordId kEosId = 2;

  Vocabulary() {
    intern(kUnk);
    intern(kBos);
    intern(kEos);
  }

  WordId intern(std::string_view word) {
    auto it = ids_.find(std::string(word));
    if (it != ids_.end()) return it->second;
    WordId id = static_cast<WordId>(words_.size());
    words_.emplace_back(word);
    ids_.emplace(words_.back(), id);
    return id;
  }

  // Id of a known word, kUnkId otherwise.
  WordId find_or_unk(std::string_view word) const {
    auto it = ids_.find(std::string(word));
    return it == ids_.end() ? kUnkId : it->second;
  }

  bool contains(std::string_view word) const { return ids_.count(std::string(word)) > 0; }

  const std::string& word(WordId id) const { return words_[id]; }
  std::size_t size() const { return words_.size(); }

 private:
  std::vector<std::string> words_;
  std::unordered_map<std::string, WordId> ids_;
};

}  // namespace asrtk

#endif  // ASRTK_VOCAB_HPP_
