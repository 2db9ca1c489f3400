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

// Parallel kernels against their serial references.

#include <benchmark/benchmark.h>

#include <random>

#include "stpbn/kernels.hpp"

namespace {

using namespace stpbn;

std::vector<Index> random_delta(Index n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::vector<Index> d(n);
  for (auto& x : d) x = 1 + rng() % n;
  return d;
}

StructureVector random_function(unsigned k, unsigned n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  StructureVector v(k, n);
  for (std::size_t j = 0; j < v.size(); ++j) v.set(j, static_cast<std::uint8_t>(rng() % k));
  return v;
}

template <bool Parallel>
void BM_Compose(benchmark::State& state) {
  const auto n = static_cast<unsigned>(state.range(0));
  const unsigned k = static_cast<unsigned>(state.range(1));
  Index size = 1;
  for (unsigned i = 0; i < n; ++i) size *= k;
  const auto delta = random_delta(size, 1);
  const auto v = random_function(k, n, 2);
  StructureVector out(k, n);
  for (auto _ : state) {
    if constexpr (Parallel) {
      kernels::compose(v, delta, out);
    } else {
      reference::compose(v, delta, out);
    }
    benchmark::DoNotOptimize(out);
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(size));
}

template <bool Parallel>
void BM_DualImages(benchmark::State& state) {
  const auto positions = static_cast<Index>(state.range(0));
  const auto delta = random_delta(positions, 3);
  for (auto _ : state) {
    auto images = Parallel ? kernels::dual_images(delta, 2) : reference::dual_images(delta, 2);
    benchmark::DoNotOptimize(images.data());
  }
  state.SetItemsProcessed(state.iterations() * (std::int64_t{1} << positions));
}

template <bool Parallel>
void BM_Tabulate(benchmark::State& state) {
  std::vector<std::uint8_t> out(static_cast<std::size_t>(state.range(0)));
  const auto f = [](Index p) { return static_cast<std::uint8_t>(__builtin_popcountll(p) & 1); };
  for (auto _ : state) {
    if constexpr (Parallel) {
      kernels::tabulate(std::span<std::uint8_t>(out), f);
    } else {
      reference::tabulate(std::span<std::uint8_t>(out), f);
    }
    benchmark::DoNotOptimize(out.data());
  }
  state.SetItemsProcessed(state.iterations() * state.range(0));
}

}  // namespace

BENCHMARK(BM_Compose<false>)->Args({20, 2})->Args({12, 3});
BENCHMARK(BM_Compose<true>)->Args({20, 2})->Args({12, 3});
BENCHMARK(BM_DualImages<false>)->Arg(16)->Arg(20);
BENCHMARK(BM_DualImages<true>)->Arg(16)->Arg(20);
BENCHMARK(BM_Tabulate<false>)->Arg(1 << 20);
BENCHMARK(BM_Tabulate<true>)->Arg(1 << 20);

BENCHMARK_MAIN();
