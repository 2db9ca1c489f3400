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
#include <span>
#include <vector>

#include "stpbn/logical_matrix.hpp"
#include "stpbn/structure_vector.hpp"

namespace stpbn {

/// Default bound on k^(k^n) for full dual enumeration: 2^24, or the value of
/// the STPBN_CAP_DUAL environment variable when set.
Index default_dual_cap();

struct DualOptions {
  Index cap = default_dual_cap();
  /// When enumeration would exceed `cap`, return only the structurally
  /// computed fixed points instead of throwing CapExceeded.
  bool structural_fallback = false;
};

/// Orbit of one function under V ↦ V·M.
struct DualOrbit {
  StructureVector seed;
  std::vector<StructureVector> transient;
  std::vector<StructureVector> cycle;
};

struct DualAttractorReport {
  /// Ascending by digit sequence.
  std::vector<StructureVector> fixed_points;
  /// Cycles of length >= 2, each rotated to start at its smallest member;
  /// ordered by (length, first member).
  std::vector<std::vector<StructureVector>> cycles;
  /// True when the whole dual space was enumerated; basins are then filled.
  bool enumerated = false;
  /// Transient dual ids of each attractor, fixed points first then cycles,
  /// in the order above. Together with the attractors they partition X*.
  std::vector<std::vector<std::uint64_t>> basins;
};

/// Reduced dynamics z(t+1) = H z(t) on the coordinates z = M_z x.
struct BnRealization {
  std::vector<StructureVector> members;
  LogicalMatrix generator;
  LogicalMatrix dynamics;
};

struct RealizationOptions {
  /// Most members the invariant closure may reach.
  std::size_t closure_cap = std::size_t{1} << 12;
  /// Most columns (k^s) a materialized reduced matrix may have.
  Index coordinate_cap = Index{1} << 24;
};

/// The dual transition matrix M* on all k^(k^n) functions.
LogicalMatrix dual_matrix(const LogicalMatrix& m, unsigned k, Index cap = default_dual_cap());

/// Throws CapExceeded after `max_steps` compositions without repetition.
DualOrbit dual_orbit(const StructureVector& v, const LogicalMatrix& m,
                     std::size_t max_steps = 4096);

/// Exactly the functions constant on every weakly connected component of the
/// state graph; k^components of them, ascending. Throws CapExceeded when
/// that count exceeds `cap`.
std::vector<StructureVector> dual_fixed_points(const LogicalMatrix& m, unsigned k,
                                               Index cap = default_dual_cap());

std::size_t weak_component_count(const LogicalMatrix& m);

DualAttractorReport dual_attractors(const LogicalMatrix& m, unsigned k,
                                    const DualOptions& options = {});

StructureVector negate(const StructureVector& v);
StructureVector and_(const StructureVector& v, const StructureVector& w);
StructureVector or_(const StructureVector& v, const StructureVector& w);
StructureVector top(unsigned k, unsigned n);
StructureVector bottom(unsigned k, unsigned n);

/// Indicator d_i* of state i (1-based).
StructureVector generator(Index i, unsigned k, unsigned n);
/// States whose generators join to v (Boolean only).
std::vector<Index> decompose(const StructureVector& v);

/// Smallest set containing `seeds` closed under V ↦ V·M, in BFS order.
std::vector<StructureVector> invariant_closure(std::span<const StructureVector> seeds,
                                               const LogicalMatrix& m,
                                               std::size_t cap = std::size_t{1} << 12);

/// Khatri-Rao product of the members' structure matrices (k^s × k^n).
LogicalMatrix stack_functions(std::span<const StructureVector> members,
                              Index coordinate_cap = Index{1} << 24);

/// H with G·M = H·G on every column of G; columns of H that G never
/// reaches are set to δ^1. Throws InternalError if G's rows are not
/// invariant under M.
LogicalMatrix solve_reduced_dynamics(const LogicalMatrix& g, const LogicalMatrix& m);

BnRealization bn_min_realization(std::span<const StructureVector> seeds, const LogicalMatrix& m,
                                 const RealizationOptions& options = {});

/// 1-based states where v is nonzero.
std::vector<Index> support(const StructureVector& v);
bool in_dual_subspace(const StructureVector& v, std::span<const Index> part);

/// The same function in the original frame of x̃ = T x, i.e. f∘T.
StructureVector pullback(const StructureVector& v, const LogicalMatrix& t);
/// Opposite convention, f∘Tᵀ.
StructureVector pullback_transposed(const StructureVector& v, const LogicalMatrix& t);

}  // namespace stpbn
