/*
 * Copyright 2026 The stpbn Authors
 *
 * Licensed under the Apache License, Version 2.0 (the "License");
 * you may not use this file except in compliance with the License.
 * You may obtain a copy of the License at
 *
 *     http://www.apache.org/licenses/LICENSE-2.0
 *
 * Unless required by applicable law or agreed to in writing, software
 * distributed under the License is distributed on an "AS IS" BASIS,
 * WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
 * See the License for the specific language governing permissions and
 * limitations under the License.
 */

#pragma once

// Data-parallel inner loops. Every kernel in `kernels` has a serial twin in
// `reference` with identical results; the reference versions are what the
// tests compare against and what the benchmarks measure the speedup over.

#include <cstdint>
#include <span>
#include <vector>

#include "stpbn/structure_vector.hpp"

namespace stpbn {

/// Worker count for the OpenMP kernels; n <= 0 restores the runtime default.
void set_threads(int n);
int threads();

/// Inputs smaller than this run serially even through `kernels`.
inline constexpr Index kParallelThreshold = Index{1} << 14;

namespace kernels {

/// out[j] = v[delta[j] - 1]; `out` must already have delta.size() positions
/// and the same radix as `v`.
void compose(const StructureVector& v, std::span<const Index> delta, StructureVector& out);

/// M*(i) for every dual id i in [1, k^N], N = delta.size(); requires
/// k^N to fit in 64 bits. Result is 1-based, indexed by id - 1.
std::vector<Index> dual_images(std::span<const Index> delta, unsigned k);

/// Fills out[p] = f(p) for p in [0, out.size()).
template <class F>
void tabulate(std::span<std::uint8_t> out, F&& f) {
  const auto count = static_cast<std::int64_t>(out.size());
  if (out.size() < kParallelThreshold) {
    for (std::size_t p = 0; p < out.size(); ++p) {
      out[p] = f(static_cast<Index>(p));
    }
    return;
  }
#pragma omp parallel for schedule(static)
  for (std::int64_t p = 0; p < count; ++p) {
    out[static_cast<std::size_t>(p)] = f(static_cast<Index>(p));
  }
}

}  // namespace kernels

namespace reference {

void compose(const StructureVector& v, std::span<const Index> delta, StructureVector& out);
std::vector<Index> dual_images(std::span<const Index> delta, unsigned k);

template <class F>
void tabulate(std::span<std::uint8_t> out, F&& f) {
  for (std::size_t p = 0; p < out.size(); ++p) {
    out[p] = f(static_cast<Index>(p));
  }
}

}  // namespace reference
}  // namespace stpbn
