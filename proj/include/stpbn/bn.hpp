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
#include <vector>

#include "stpbn/logical_matrix.hpp"

namespace stpbn {

/// Functional-graph decomposition of x(t+1) = M x(t). State indices are
/// 1-based throughout.
struct AttractorReport {
  struct Attractor {
    /// Cycle in dynamic order, starting at its smallest state.
    std::vector<Index> cycle;
    /// Transient states draining into this cycle, ascending.
    std::vector<Index> basin;
  };

  /// Sorted by (cycle length, smallest member).
  std::vector<Attractor> attractors;
  /// Steps from each state to its cycle (0 on cycles), indexed by state - 1.
  std::vector<Index> distance;
  /// Attractor position for each state, indexed by state - 1.
  std::vector<std::size_t> attractor_of;

  std::size_t fixed_point_count() const;
};

struct CanonicalBlock {
  Index cycle_length = 0;
  Index transient_count = 0;
  /// 0-based first position of the block in the canonical order.
  Index offset = 0;
  Index size() const noexcept { return cycle_length + transient_count; }
};

/// x̃ = T x brings M to block-diagonal form M̃ = T M Tᵀ where each block is
/// [A E; 0 B] with A cyclic and B nilpotent.
struct CanonicalForm {
  LogicalMatrix transform;
  LogicalMatrix conjugated;
  std::vector<CanonicalBlock> blocks;
};

Index step(const LogicalMatrix& m, Index state);
/// horizon + 1 states, starting with `state`.
std::vector<Index> trajectory(const LogicalMatrix& m, Index state, std::size_t horizon);

AttractorReport attractors(const LogicalMatrix& m);

CanonicalForm canonical_form(const LogicalMatrix& m);

/// True when `conjugated` has the block structure claimed by `blocks`:
/// blocks tile the state range, each cycle part is the cyclic matrix
/// δ[2,3,...,1] on its range, and every transient state maps either into its
/// own block's cycle part or to a strictly earlier transient of the block.
bool satisfies_canonical_structure(const LogicalMatrix& conjugated,
                                   const std::vector<CanonicalBlock>& blocks);

/// T M Tᵀ for a permutation T: result(T(j)) = T(M(j)).
LogicalMatrix conjugate(const LogicalMatrix& m, const LogicalMatrix& t);

/// Regular-subspace test on the stacked structure matrix M_0 (k^s × k^n):
/// every row index must occur exactly k^(n-s) times.
bool regular_subspace_check(const LogicalMatrix& m0, unsigned k);

}  // namespace stpbn
