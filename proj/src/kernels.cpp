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

#include "stpbn/kernels.hpp"

#include <array>

#include <omp.h>

namespace stpbn {

void set_threads(int n) {
  static const int kDefault = omp_get_max_threads();
  omp_set_num_threads(n > 0 ? n : kDefault);
}

int threads() { return omp_get_max_threads(); }

namespace {

void check_compose(const StructureVector& v, std::span<const Index> delta,
                   const StructureVector& out) {
  if (out.size() != delta.size() || out.radix() != v.radix()) {
    throw DimensionError("compose output has the wrong shape");
  }
}

// One output word of a Boolean composition.
inline std::uint64_t compose_word(const StructureVector& v, std::span<const Index> delta,
                                  std::size_t word) {
  const std::size_t first = word * 64;
  const std::size_t last = std::min(delta.size(), first + 64);
  std::uint64_t bits = 0;
  for (std::size_t pos = first; pos < last; ++pos) {
    bits |= static_cast<std::uint64_t>(v[delta[pos] - 1]) << (pos - first);
  }
  return bits;
}

Index dual_count(std::size_t positions, unsigned k) {
  Index count = 0;
  if (!pow_within(k, positions, ~Index{0}, &count)) {
    throw CapExceeded("dual space size k^N does not fit in 64 bits");
  }
  return count;
}

// Image id of one dual function id under the map V ↦ V·M.
inline Index dual_image(Index id, std::span<const Index> delta, unsigned k) {
  const std::size_t n = delta.size();
  std::array<std::uint8_t, 64> digits{};
  Index rest = id - 1;
  for (std::size_t j = n; j-- > 0;) {
    digits[j] = static_cast<std::uint8_t>(rest % k);
    rest /= k;
  }
  Index out = 0;
  for (std::size_t j = 0; j < n; ++j) {
    out = out * k + digits[delta[j] - 1];
  }
  return out + 1;
}

// Boolean fast path: digit j is bit (N-1-j) of id-1.
inline Index dual_image_boolean(Index id, std::span<const Index> delta) {
  const std::size_t n = delta.size();
  const Index bits = id - 1;
  Index out = 0;
  for (std::size_t j = 0; j < n; ++j) {
    out = (out << 1) | ((bits >> (n - delta[j])) & 1u);
  }
  return out + 1;
}

// Below the threshold a parallel region costs more than the loop itself.
void compose_serial(const StructureVector& v, std::span<const Index> delta,
                             StructureVector& out) {
  if (v.boolean()) {
    auto words = out.words();
    for (std::size_t w = 0; w < words.size(); ++w) {
      words[w] = compose_word(v, delta, w);
    }
    return;
  }
  auto bytes = out.bytes();
  const auto src = v.bytes();
  for (std::size_t j = 0; j < delta.size(); ++j) {
    bytes[j] = src[delta[j] - 1];
  }
}

}  // namespace

namespace kernels {

void compose(const StructureVector& v, std::span<const Index> delta, StructureVector& out) {
  check_compose(v, delta, out);
  const bool wide = delta.size() >= kParallelThreshold;
  if (!wide) {
    compose_serial(v, delta, out);
    return;
  }
  if (v.boolean()) {
    auto words = out.words();
    const auto count = static_cast<std::int64_t>(words.size());
#pragma omp parallel for schedule(static)
    for (std::int64_t w = 0; w < count; ++w) {
      words[static_cast<std::size_t>(w)] = compose_word(v, delta, static_cast<std::size_t>(w));
    }
    return;
  }
  auto bytes = out.bytes();
  const auto src = v.bytes();
  const auto count = static_cast<std::int64_t>(delta.size());
#pragma omp parallel for schedule(static)
  for (std::int64_t j = 0; j < count; ++j) {
    bytes[static_cast<std::size_t>(j)] = src[delta[static_cast<std::size_t>(j)] - 1];
  }
}

std::vector<Index> dual_images(std::span<const Index> delta, unsigned k) {
  const Index count = dual_count(delta.size(), k);
  std::vector<Index> out(count);
  const auto total = static_cast<std::int64_t>(count);
  if (count < kParallelThreshold) {
    for (Index i = 0; i < count; ++i) {
      out[i] = k == 2 ? dual_image_boolean(i + 1, delta) : dual_image(i + 1, delta, k);
    }
    return out;
  }
  if (k == 2) {
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < total; ++i) {
      out[static_cast<std::size_t>(i)] = dual_image_boolean(static_cast<Index>(i) + 1, delta);
    }
  } else {
#pragma omp parallel for schedule(static)
    for (std::int64_t i = 0; i < total; ++i) {
      out[static_cast<std::size_t>(i)] = dual_image(static_cast<Index>(i) + 1, delta, k);
    }
  }
  return out;
}

}  // namespace kernels

namespace reference {

void compose(const StructureVector& v, std::span<const Index> delta, StructureVector& out) {
  check_compose(v, delta, out);
  for (std::size_t j = 0; j < delta.size(); ++j) {
    out.set(j, v[delta[j] - 1]);
  }
}

std::vector<Index> dual_images(std::span<const Index> delta, unsigned k) {
  const Index count = dual_count(delta.size(), k);
  std::vector<Index> out(count);
  for (Index i = 0; i < count; ++i) {
    out[i] = dual_image(i + 1, delta, k);
  }
  return out;
}

}  // namespace reference
}  // namespace stpbn
