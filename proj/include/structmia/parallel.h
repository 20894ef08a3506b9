// Copyright 2026 The StructMIA Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     https://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#ifndef STRUCTMIA_PARALLEL_H_
#define STRUCTMIA_PARALLEL_H_

#include <cstddef>
#include <functional>
#include <vector>

namespace structmia {

// Runs fn(i) for every i in [0, n) on up to `workers` threads (workers <= 1
// runs inline). Tasks are handed out dynamically; callers write results into
// slot i so output order never depends on scheduling. If any task throws,
// the exception of the lowest failing index is rethrown after all threads
// join.
void ParallelFor(std::size_t n, int workers,
                 const std::function<void(std::size_t)>& fn);

// Convenience wrapper collecting one value per index.
template <typename T>
std::vector<T> ParallelMap(std::size_t n, int workers,
                           const std::function<T(std::size_t)>& fn) {
  std::vector<T> out(n);
  ParallelFor(n, workers, [&](std::size_t i) { out[i] = fn(i); });
  return out;
}

}  // namespace structmia

#endif  // STRUCTMIA_PARALLEL_H_
