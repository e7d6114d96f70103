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

#ifndef AQUASPEC_NUMERIC_H_
#define AQUASPEC_NUMERIC_H_

#include <functional>
#include <span>

namespace aquaspec {

// Pairwise (cascade) summation. The recursion order depends only on the
// length of the input, so results are reproducible regardless of threading.
double PairwiseSum(std::span<const double> values);

// Population mean and standard deviation, two-pass, pairwise-summed.
struct MeanSigma {
  double mean = 0.0;
  double sigma = 0.0;
};
MeanSigma PopulationMeanSigma(std::span<const double> values);

// Worker count used by the row-parallel kernels. Defaults to the
// AQUASPEC_THREADS environment variable, else hardware concurrency.
int ThreadCount();
void SetThreadCount(int n);  // n <= 0 restores the default

// Runs body(row) for every row in [0, rows). Rows are disjoint so writes
// into per-row output slots need no synchronisation.
void ParallelRows(int rows, const std::function<void(int)>& body);

}  // namespace aquaspec

#endif  // AQUASPEC_NUMERIC_H_
