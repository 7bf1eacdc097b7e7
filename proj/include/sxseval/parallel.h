// Copyright 2026 The sxseval Authors.
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

#ifndef SXSEVAL_PARALLEL_H_
#define SXSEVAL_PARALLEL_H_

#include <algorithm>
#include <atomic>
#include <cstddef>
#include <exception>
#include <mutex>
#include <thread>
#include <vector>

namespace sxseval {

// Worker count used by ParallelFor when none is given; 0 means hardware
// concurrency. Set once at startup (the CLI's --threads).
inline std::atomic<size_t>& DefaultThreads() {
  static std::atomic<size_t> threads{0};
  return threads;
}

// Runs fn(i) for i in [0, n) on a bounded pool. Callers write results into
// per-index slots, so output never depends on scheduling. The first
// exception thrown by any fn is rethrown after all workers stop.
template <typename Fn>
void ParallelFor(size_t n, Fn&& fn, size_t max_threads = 0) {
  if (max_threads == 0) max_threads = DefaultThreads().load();
  if (max_threads == 0) max_threads = std::max(1u, std::thread::hardware_concurrency());
  const size_t workers = std::min(n, max_threads);
  if (workers <= 1) {
    for (size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mu;
  auto run = [&] {
    for (size_t i = next++; i < n; i = next++) {
      try {
        fn(i);
      } catch (...) {
        std::lock_guard lock(failure_mu);
        if (!failure) failure = std::current_exception();
        next = n;
      }
    }
  };
  std::vector<std::thread> pool;
  pool.reserve(workers - 1);
  for (size_t t = 1; t < workers; ++t) pool.emplace_back(run);
  run();
  for (std::thread& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
}

}  // namespace sxseval

#endif  // SXSEVAL_PARALLEL_H_
