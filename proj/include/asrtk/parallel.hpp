// parallel.hpp
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

#ifndef ASRTK_PARALLEL_HPP_
#define ASRTK_PARALLEL_HPP_

#include <cstddef>
#include <cstdlib>
#include <exception>
#include <utility>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace asrtk {

// Resolves a requested worker count: values > 0 are taken as-is, anything
// else falls back to the ASRTK_WORKERS environment variable and then to the
// OpenMP default (1 without OpenMP).
inline int effective_threads(int requested) {
  if (requested > 0) return requested;
  if (const char* env = std::getenv("ASRTK_WORKERS")) {
    int n = std::atoi(env);
    if (n > 0) return n;
  }
#ifdef _OPENMP
  return omp_get_max_threads();
#else
  return 1;
#endif
}

// Parallel map over [0, n). fn(i) must be independent per index; results the
// caller collects must be written to per-index slots so that the outcome is
// identical to the serial loop. Exceptions are captured and rethrown on the
// calling thread.
template <typename Fn>
void parallel_for(std::size_t n, int threads, Fn&& fn) {
  threads = effective_threads(threads);
#ifdef _OPENMP
  if (threads > 1 && n > 1) {
    std::exception_ptr error;
#pragma omp parallel for schedule(dynamic) num_threads(threads)
    for (long long i = 0; i < static_cast<long long>(n); ++i) {
      try {
        fn(static_cast<std::size_t>(i));
      } catch (...) {
#pragma omp critical(asrtk_parallel_for_error)
        if (!error) error = std::current_exception();
      }
    }
    if (error) std::rethrow_exception(error);
    return;
  }
#endif
  for (std::size_t i = 0; i < n; ++i) fn(i);
}

}  // namespace asrtk

#endif  // ASRTK_PARALLEL_HPP_
