/* Copyright 2026 The Aquaspec Authors. All Rights Reserved.

Licensed under the Apache License, Version 2.0 (the "License");
you may not use this file except in compliance with the License.
You may obtain a copy of the License at

    http://www.apache.org/licenses/LICENSE-2.0

Unless required by applicable law or agreed to in writing, software
distributed under the License is distributed on an "AS IS" BASIS,
WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
See the License for the specific language governing permissions and
limitations under the License.
==============================================================================*/

#include "aquaspec/numeric.h"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <thread>
#include <vector>

namespace aquaspec {

namespace {

constexpr size_t kPairwiseBlock = 64;

std::atomic<int> g_thread_override{0};

}  // namespace

double PairwiseSum(std::span<const double> values) {
  if (values.size() <= kPairwiseBlock) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const size_t half = values.size() / 2;
  return PairwiseSum(values.first(half)) + PairwiseSum(values.subspan(half));
}

MeanSigma PopulationMeanSigma(std::span<const double> values) {
  MeanSigma out;
  if (values.empty()) return out;
  const double n = static_cast<double>(values.size());
  out.mean = PairwiseSum(values) / n;
  std::vector<double> sq(values.size());
  for (size_t i = 0; i < values.size(); ++i) {
    const double d = values[i] - out.mean;
    sq[i] = d * d;
  }
  out.sigma = std::sqrt(PairwiseSum(sq) / n);
  return out;
}

int ThreadCount() {
  const int forced = g_thread_override.load();
  if (forced > 0) return forced;
  if (const char* env = std::getenv("AQUASPEC_THREADS")) {
    const int n = std::atoi(env);
    if (n > 0) return n;
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

void SetThreadCount(int n) { g_thread_override.store(n > 0 ? n : 0); }

void ParallelRows(int rows, const std::function<void(int)>& body) {
  const int workers = std::min(ThreadCount(), rows);
  if (workers <= 1 || rows < 64) {
    for (int r = 0; r < rows; ++r) body(r);
    return;
  }
  std::atomic<int> next{0};
  std::vector<std::thread> pool;
  pool.reserve(workers);
  for (int w = 0; w < workers; ++w) {
    pool.emplace_back([&] {
      for (int r = next.fetch_add(1); r < rows; r = next.fetch_add(1)) body(r);
    });
  }
  for (auto& t : pool) t.join();
}

}  // namespace aquaspec
