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

#include <cstdint>
#include <limits>
#include <numeric>

#include "stpbn/error.hpp"

namespace stpbn {

using Index = std::uint64_t;

inline Index checked_mul(Index a, Index b) {
  Index out = 0;
  if (__builtin_mul_overflow(a, b, &out)) {
    throw CapExceeded("index arithmetic overflows 64 bits");
  }
  return out;
}

inline Index checked_add(Index a, Index b) {
  Index out = 0;
  if (__builtin_add_overflow(a, b, &out)) {
    throw CapExceeded("index arithmetic overflows 64 bits");
  }
  return out;
}

inline Index checked_pow(Index base, Index exponent) {
  Index out = 1;
  for (Index i = 0; i < exponent; ++i) {
    out = checked_mul(out, base);
  }
  return out;
}

/// Writes `base^exponent` to `out`; false when it would exceed `limit`.
inline bool pow_within(Index base, Index exponent, Index limit, Index* out) {
  Index acc = 1;
  for (Index i = 0; i < exponent; ++i) {
    if (base != 0 && acc > limit / base) {
      return false;
    }
    acc *= base;
  }
  if (acc > limit) {
    return false;
  }
  *out = acc;
  return true;
}

/// Exponent e with base^e == value, or -1 when value is not a power of base.
inline int exact_log(Index value, Index base) {
  if (base < 2 || value == 0) {
    return -1;
  }
  int e = 0;
  while (value % base == 0) {
    value /= base;
    ++e;
  }
  return value == 1 ? e : -1;
}

inline Index checked_lcm(Index a, Index b) {
  return checked_mul(a / std::gcd(a, b), b);
}

}  // namespace stpbn
