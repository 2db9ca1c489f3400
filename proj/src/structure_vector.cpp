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

#include "stpbn/structure_vector.hpp"

#include <algorithm>
#include <string>
#include <tuple>

#include "stpbn/kernels.hpp"

namespace stpbn {

namespace {

void check_radix(unsigned k) {
  if (k < 2 || k > 255) {
    throw InvalidArgument("radix must lie in [2, 255], got " + std::to_string(k));
  }
}

}  // namespace

StructureVector::StructureVector(unsigned k, unsigned n) : k_(k), n_(n) {
  check_radix(k);
  size_ = static_cast<std::size_t>(checked_pow(k, n));
  if (k == 2) {
    bits_.assign((size_ + 63) / 64, 0);
  } else {
    bytes_.assign(size_, 0);
  }
}

StructureVector StructureVector::from_digits(unsigned k, std::span<const std::uint8_t> digits) {
  check_radix(k);
  const int n = exact_log(digits.size(), k);
  if (n < 0) {
    throw DimensionError("structure vector length " + std::to_string(digits.size()) +
                         " is not a power of " + std::to_string(k));
  }
  StructureVector out(k, static_cast<unsigned>(n));
  for (std::size_t j = 0; j < digits.size(); ++j) {
    out.set(j, digits[j]);
  }
  return out;
}

StructureVector StructureVector::from_structure_matrix(unsigned k, const LogicalMatrix& m) {
  if (m.rows() != k) {
    throw DimensionError("structure matrix must have k rows");
  }
  std::vector<std::uint8_t> digits(m.cols());
  for (std::size_t j = 0; j < digits.size(); ++j) {
    digits[j] = static_cast<std::uint8_t>(k - m.delta()[j]);
  }
  return from_digits(k, digits);
}

void StructureVector::set(std::size_t pos, std::uint8_t digit) {
  if (pos >= size_) {
    throw InvalidArgument("structure vector position out of range");
  }
  if (digit >= k_) {
    throw InvalidArgument("digit " + std::to_string(digit) + " exceeds radix " +
                          std::to_string(k_));
  }
  if (k_ == 2) {
    const auto mask = std::uint64_t{1} << (pos & 63);
    if (digit != 0) {
      bits_[pos >> 6] |= mask;
    } else {
      bits_[pos >> 6] &= ~mask;
    }
  } else {
    bytes_[pos] = digit;
  }
}

std::vector<std::uint8_t> StructureVector::digits() const {
  std::vector<std::uint8_t> out(size_);
  for (std::size_t j = 0; j < size_; ++j) {
    out[j] = (*this)[j];
  }
  return out;
}

LogicalMatrix StructureVector::structure_matrix() const {
  std::vector<Index> delta(size_);
  for (std::size_t j = 0; j < size_; ++j) {
    delta[j] = k_ - (*this)[j];
  }
  return LogicalMatrix(k_, std::move(delta));
}

std::size_t StructureVector::hash() const noexcept {
  // FNV-1a over the packed storage.
  std::uint64_t h = 1469598103934665603ull ^ k_ ^ (std::uint64_t{n_} << 8);
  auto mix = [&h](std::uint64_t x) {
    h ^= x;
    h *= 1099511628211ull;
  };
  for (auto w : bits_) {
    mix(w);
  }
  for (auto b : bytes_) {
    mix(b);
  }
  return static_cast<std::size_t>(h);
}

bool operator<(const StructureVector& a, const StructureVector& b) {
  if (a.k_ != b.k_ || a.n_ != b.n_) {
    return std::tie(a.k_, a.n_) < std::tie(b.k_, b.n_);
  }
  for (std::size_t j = 0; j < a.size_; ++j) {
    if (a[j] != b[j]) {
      return a[j] < b[j];
    }
  }
  return false;
}

StructureVector sv_compose(const StructureVector& v, const LogicalMatrix& m) {
  if (v.size() != m.rows()) {
    throw DimensionError("sv_compose needs v.size == m.rows (" + std::to_string(v.size()) +
                         " vs " + std::to_string(m.rows()) + ")");
  }
  const int n = exact_log(m.cols(), v.radix());
  if (n < 0) {
    throw DimensionError("sv_compose result length is not a power of the radix");
  }
  StructureVector out(v.radix(), static_cast<unsigned>(n));
  kernels::compose(v, m.delta(), out);
  return out;
}

DualFunctionId sv_to_id(const StructureVector& v) {
  DualFunctionId id = 0;
  for (std::size_t j = 0; j < v.size(); ++j) {
    id *= v.radix();
    id += v[j];
  }
  return id + 1;
}

StructureVector sv_from_id(const DualFunctionId& id, unsigned k, unsigned n) {
  StructureVector out(k, n);
  DualFunctionId limit = boost::multiprecision::pow(DualFunctionId(k), static_cast<unsigned>(out.size()));
  if (id < 1 || id > limit) {
    throw InvalidArgument("dual id out of range [1, k^(k^n)]");
  }
  DualFunctionId rest = id - 1;
  for (std::size_t j = out.size(); j-- > 0;) {
    out.set(j, static_cast<std::uint8_t>(static_cast<unsigned>(rest % k)));
    rest /= k;
  }
  return out;
}

std::uint64_t sv_to_id64(const StructureVector& v) {
  Index count = 0;
  if (!pow_within(v.radix(), v.size(), ~Index{0}, &count)) {
    throw CapExceeded("dual id does not fit in 64 bits");
  }
  std::uint64_t id = 0;
  for (std::size_t j = 0; j < v.size(); ++j) {
    id = id * v.radix() + v[j];
  }
  return id + 1;
}

StructureVector sv_from_id64(std::uint64_t id, unsigned k, unsigned n) {
  StructureVector out(k, n);
  Index count = 0;
  if (!pow_within(k, out.size(), ~Index{0}, &count)) {
    throw CapExceeded("dual id does not fit in 64 bits");
  }
  if (id < 1 || id > count) {
    throw InvalidArgument("dual id out of range [1, k^(k^n)]");
  }
  std::uint64_t rest = id - 1;
  for (std::size_t j = out.size(); j-- > 0;) {
    out.set(j, static_cast<std::uint8_t>(rest % k));
    rest /= k;
  }
  return out;
}

std::vector<std::uint8_t> state_values(Index state, unsigned k, unsigned n) {
  const Index total = checked_pow(k, n);
  if (state < 1 || state > total) {
    throw InvalidArgument("state index " + std::to_string(state) + " outside [1, " +
                          std::to_string(total) + "]");
  }
  std::vector<std::uint8_t> values(n);
  Index rest = state - 1;
  for (unsigned i = n; i-- > 0;) {
    values[i] = static_cast<std::uint8_t>(k - 1 - rest % k);
    rest /= k;
  }
  return values;
}

Index state_index(std::span<const std::uint8_t> values, unsigned k) {
  Index idx = 0;
  for (auto v : values) {
    if (v >= k) {
      throw InvalidArgument("variable value exceeds radix");
    }
    idx = checked_add(checked_mul(idx, k), k - 1 - v);
  }
  return idx + 1;
}

}  // namespace stpbn
