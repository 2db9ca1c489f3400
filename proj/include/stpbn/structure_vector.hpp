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

#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <span>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "stpbn/logical_matrix.hpp"

namespace stpbn {

/// Arbitrary-precision position of a logical function in the dual space,
/// in [1, k^(k^n)].
using DualFunctionId = boost::multiprecision::cpp_int;

/// One logical function on k^n states, stored as its value at each state.
///
/// Digit d at position j means the function takes value d/(k-1) at state
/// δ_{k^n}^{j+1}. For k = 2 this is the first row of the structure matrix:
/// digit 1 is true (δ_2^1), digit 0 is false (δ_2^2). Boolean vectors are
/// bit-packed; k-valued vectors use one byte per position.
class StructureVector {
 public:
  StructureVector() = default;
  /// All-zero function (⊥) on k^n states.
  StructureVector(unsigned k, unsigned n);

  /// Infers n from the length, which must be an exact power of k.
  static StructureVector from_digits(unsigned k, std::span<const std::uint8_t> digits);
  static StructureVector from_digits(unsigned k, std::initializer_list<std::uint8_t> digits) {
    return from_digits(k, std::span<const std::uint8_t>(digits.begin(), digits.size()));
  }
  /// Inverse of structure_matrix(): reads a k × k^n logical matrix.
  static StructureVector from_structure_matrix(unsigned k, const LogicalMatrix& m);

  unsigned radix() const noexcept { return k_; }
  unsigned vars() const noexcept { return n_; }
  std::size_t size() const noexcept { return size_; }
  bool boolean() const noexcept { return k_ == 2; }

  std::uint8_t operator[](std::size_t pos) const {
    if (k_ == 2) {
      return static_cast<std::uint8_t>((bits_[pos >> 6] >> (pos & 63)) & 1u);
    }
    return bytes_[pos];
  }
  void set(std::size_t pos, std::uint8_t digit);

  std::vector<std::uint8_t> digits() const;

  /// Packed words (k == 2 only); bit j%64 of word j/64 is position j.
  std::span<const std::uint64_t> words() const noexcept { return bits_; }
  std::span<std::uint64_t> words() noexcept { return bits_; }
  std::span<const std::uint8_t> bytes() const noexcept { return bytes_; }
  std::span<std::uint8_t> bytes() noexcept { return bytes_; }

  /// The k × k^n structure matrix: column j is δ_k^(k - digit_j).
  LogicalMatrix structure_matrix() const;

  std::size_t hash() const noexcept;

  friend bool operator==(const StructureVector&, const StructureVector&) = default;
  /// Lexicographic by digit sequence, which is also dual-id order.
  friend bool operator<(const StructureVector& a, const StructureVector& b);

 private:
  unsigned k_ = 2;
  unsigned n_ = 0;
  std::size_t size_ = 0;
  std::vector<std::uint64_t> bits_;
  std::vector<std::uint8_t> bytes_;
};

struct StructureVectorHash {
  std::size_t operator()(const StructureVector& v) const noexcept { return v.hash(); }
};

/// Dual action V ↦ V·M: result[j] = v[m(j)]. Needs v.size() == m.rows();
/// the result lives on m.cols() states.
StructureVector sv_compose(const StructureVector& v, const LogicalMatrix& m);

/// id = 1 + Σ_j digit_j · k^(N-j), positions 1-based.
DualFunctionId sv_to_id(const StructureVector& v);
StructureVector sv_from_id(const DualFunctionId& id, unsigned k, unsigned n);

/// Machine-word versions for when k^(k^n) fits in 64 bits.
std::uint64_t sv_to_id64(const StructureVector& v);
StructureVector sv_from_id64(std::uint64_t id, unsigned k, unsigned n);

/// State index (1-based) → per-variable values, first variable first.
std::vector<std::uint8_t> state_values(Index state, unsigned k, unsigned n);
/// Per-variable values → state index (1-based); value v maps to δ_k^(k-v).
Index state_index(std::span<const std::uint8_t> values, unsigned k);

}  // namespace stpbn
