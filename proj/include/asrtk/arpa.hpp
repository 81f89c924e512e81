// arpa.hpp
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

#ifndef ASRTK_ARPA_HPP_
#define ASRTK_ARPA_HPP_

#include <iosfwd>
#include <string>

#include "asrtk/ngram_model.hpp"

namespace asrtk {

// Reads ARPA text (\data\ header, \N-grams: sections, \end\ terminator).
// Throws ParseError on malformed input, on section counts that disagree with
// the header, and on a missing \end\ marker.
NgramModel read_arpa(std::istream& in);
NgramModel read_arpa_file(const std::string& path);

// Writes ARPA text with log10 values at 8 decimals; read(write(m))
// reproduces every probability and back-off weight well within 1e-4.
void write_arpa(const NgramModel& model, std::ostream& out);
void write_arpa_file(const NgramModel& model, const std::string& path);

}  // namespace asrtk

#endif  // ASRTK_ARPA_HPP_
