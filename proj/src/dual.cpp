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

#include "stpbn/dual.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>
#include <unordered_map>
#include <unordered_set>

#include "stpbn/bn.hpp"
#include "stpbn/kernels.hpp"

namespace stpbn {

namespace {

unsigned state_vars(const LogicalMatrix& m, unsigned k) {
  if (!m.square()) {
    throw DimensionError("dual analysis needs a square transition matrix");
  }
  const int n = exact_log(m.cols(), k);
  if (n < 0) {
    throw DimensionError("state count " + std::to_string(m.cols()) + " is not a power of " +
                         std::to_string(k));
  }
  return static_cast<unsigned>(n);
}

Index dual_space_size(Index positions, unsigned k, Index cap) {
  Index count = 0;
  if (!pow_within(k, positions, cap, &count)) {
    throw CapExceeded("dual space k^(k^n) = " + std::to_string(k) + "^" +
                      std::to_string(positions) + " exceeds the enumeration cap " +
                      std::to_string(cap));
  }
  return count;
}

void require_same_shape(const StructureVector& v, const StructureVector& w) {
  if (v.radix() != w.radix() || v.size() != w.size()) {
    throw DimensionError("structure vectors of different shapes");
  }
}

}  // namespace

Index default_dual_cap() {
  if (const char* env = std::getenv("STPBN_CAP_DUAL")) {
    char* end = nullptr;
    const auto v = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && v > 0) {
      return v;
    }
  }
  return Index{1} << 24;
}

LogicalMatrix dual_matrix(const LogicalMatrix& m, unsigned k, Index cap) {
  state_vars(m, k);
  const Index count = dual_space_size(m.cols(), k, cap);
  return LogicalMatrix(count, kernels::dual_images(m.delta(), k));
}

DualOrbit dual_orbit(const StructureVector& v, const LogicalMatrix& m, std::size_t max_steps) {
  if (!m.square() || v.size() != m.rows()) {
    throw DimensionError("dual_orbit needs a square matrix matching the vector length");
  }
  std::vector<StructureVector> path{v};
  std::unordered_map<StructureVector, std::size_t, StructureVectorHash> seen{{v, 0}};
  for (std::size_t steps = 0;; ++steps) {
    if (steps >= max_steps) {
      throw CapExceeded("dual orbit did not close within " + std::to_string(max_steps) + " steps");
    }
    auto next = sv_compose(path.back(), m);
    if (auto it = seen.find(next); it != seen.end()) {
      DualOrbit out;
      out.seed = v;
      const auto split = static_cast<std::ptrdiff_t>(it->second);
      out.transient.assign(path.begin(), path.begin() + split);
      out.cycle.assign(path.begin() + split, path.end());
      return out;
    }
    seen.emplace(next, path.size());
    path.push_back(std::move(next));
  }
}

std::size_t weak_component_count(const LogicalMatrix& m) {
  // Each weak component of a functional graph holds exactly one cycle.
  return attractors(m).attractors.size();
}

std::vector<StructureVector> dual_fixed_points(const LogicalMatrix& m, unsigned k, Index cap) {
  const unsigned n = state_vars(m, k);
  const auto report = attractors(m);
  const std::size_t components = report.attractors.size();
  Index count = 0;
  if (!pow_within(k, components, cap, &count)) {
    throw CapExceeded("k^" + std::to_string(components) +
                      " dual fixed points exceed the cap " + std::to_string(cap));
  }
  std::vector<StructureVector> out;
  out.reserve(count);
  std::vector<std::uint8_t> colour(components, 0);
  for (Index c = 0; c < count; ++c) {
    Index rest = c;
    for (std::size_t i = 0; i < components; ++i) {
      colour[i] = static_cast<std::uint8_t>(rest % k);
      rest /= k;
    }
    StructureVector v(k, n);
    for (Index s = 0; s < m.cols(); ++s) {
      v.set(s, colour[report.attractor_of[s]]);
    }
    out.push_back(std::move(v));
  }
  std::sort(out.begin(), out.end());
  return out;
}

DualAttractorReport dual_attractors(const LogicalMatrix& m, unsigned k,
                                    const DualOptions& options) {
  const unsigned n = state_vars(m, k);
  DualAttractorReport out;
  Index count = 0;
  if (!pow_within(k, m.cols(), options.cap, &count)) {
    if (!options.structural_fallback) {
      dual_space_size(m.cols(), k, options.cap);  // throws with the standard message
    }
    out.fixed_points = dual_fixed_points(m, k, options.cap);
    return out;
  }

  const auto star = dual_matrix(m, k, options.cap);
  const auto report = attractors(star);
  out.enumerated = true;
  std::vector<std::vector<std::uint64_t>> cycle_basins;
  for (const auto& a : report.attractors) {
    std::vector<std::uint64_t> basin(a.basin.begin(), a.basin.end());
    if (a.cycle.size() == 1) {
      out.fixed_points.push_back(sv_from_id64(a.cycle.front(), k, n));
      out.basins.push_back(std::move(basin));
    } else {
      std::vector<StructureVector> cycle;
      cycle.reserve(a.cycle.size());
      for (auto id : a.cycle) {
        cycle.push_back(sv_from_id64(id, k, n));
      }
      out.cycles.push_back(std::move(cycle));
      cycle_basins.push_back(std::move(basin));
    }
  }
  for (auto& b : cycle_basins) {
    out.basins.push_back(std::move(b));
  }
  return out;
}

StructureVector negate(const StructureVector& v) {
  StructureVector out = v;
  if (v.boolean()) {
    auto words = out.words();
    for (auto& w : words) {
      w = ~w;
    }
    if (const auto tail = v.size() % 64; tail != 0) {
      words.back() &= (std::uint64_t{1} << tail) - 1;
    }
    return out;
  }
  for (auto& b : out.bytes()) {
    b = static_cast<std::uint8_t>(v.radix() - 1 - b);
  }
  return out;
}

StructureVector and_(const StructureVector& v, const StructureVector& w) {
  require_same_shape(v, w);
  StructureVector out = v;
  if (v.boolean()) {
    for (std::size_t i = 0; i < out.words().size(); ++i) {
      out.words()[i] &= w.words()[i];
    }
    return out;
  }
  for (std::size_t i = 0; i < out.size(); ++i) {
    out.bytes()[i] = std::min(v.bytes()[i], w.bytes()[i]);
  }
  return out;
}

StructureVector or_(const StructureVector& v, const StructureVector& w) {
  require_same_shape(v, w);
  StructureVector out = v;
  if (v.boolean()) {
    for (std::size_t i = 0; i < out.words().size(); ++i) {
      out.words()[i] |= w.words()[i];
    }
    return out;
  }
  for (std::size_t i = 0; i < out.size(); ++i) {
    out.bytes()[i] = std::max(v.bytes()[i], w.bytes()[i]);
  }
  return out;
}

StructureVector top(unsigned k, unsigned n) { return negate(bottom(k, n)); }

StructureVector bottom(unsigned k, unsigned n) { return StructureVector(k, n); }

StructureVector generator(Index i, unsigned k, unsigned n) {
  StructureVector out(k, n);
  if (i < 1 || i > out.size()) {
    throw InvalidArgument("generator index " + std::to_string(i) + " outside [1, " +
                          std::to_string(out.size()) + "]");
  }
  out.set(i - 1, static_cast<std::uint8_t>(k - 1));
  return out;
}

std::vector<Index> decompose(const StructureVector& v) {
  if (!v.boolean()) {
    throw InvalidArgument("join decomposition into generators needs k = 2");
  }
  return support(v);
}

std::vector<StructureVector> invariant_closure(std::span<const StructureVector> seeds,
                                               const LogicalMatrix& m, std::size_t cap) {
  std::vector<StructureVector> members;
  std::unordered_set<StructureVector, StructureVectorHash> seen;
  auto add = [&](StructureVector v) {
    if (seen.insert(v).second) {
      if (members.size() >= cap) {
        throw CapExceeded("invariant closure exceeds " + std::to_string(cap) + " members");
      }
      members.push_back(std::move(v));
    }
  };
  for (const auto& s : seeds) {
    add(s);
  }
  for (std::size_t i = 0; i < members.size(); ++i) {
    add(sv_compose(members[i], m));
  }
  return members;
}

LogicalMatrix stack_functions(std::span<const StructureVector> members, Index coordinate_cap) {
  if (members.empty()) {
    throw InvalidArgument("cannot stack an empty function set");
  }
  const auto& head = members.front();
  for (const auto& v : members) {
    require_same_shape(head, v);
  }
  const unsigned k = head.radix();
  Index rows = 0;
  if (!pow_within(k, members.size(), coordinate_cap, &rows)) {
    throw CapExceeded(std::to_string(members.size()) +
                      " coordinates give more than the coordinate cap of " +
                      std::to_string(coordinate_cap) + " joint values");
  }
  std::vector<Index> delta(head.size(), 0);
  for (const auto& v : members) {
    for (std::size_t j = 0; j < delta.size(); ++j) {
      delta[j] = delta[j] * k + (k - 1 - v[j]);
    }
  }
  for (auto& d : delta) {
    ++d;
  }
  return LogicalMatrix(rows, std::move(delta));
}

LogicalMatrix solve_reduced_dynamics(const LogicalMatrix& g, const LogicalMatrix& m) {
  if (!m.square() || g.cols() != m.rows()) {
    throw DimensionError("reduced dynamics need G (s × N) and a square M (N × N)");
  }
  std::vector<Index> delta(g.rows(), 0);
  for (Index j = 0; j < g.cols(); ++j) {
    const Index col = g.delta()[j] - 1;
    const Index target = g.delta()[m.delta()[j] - 1];
    if (delta[col] != 0 && delta[col] != target) {
      throw InternalError("coordinate set is not invariant: column " + std::to_string(col + 1) +
                          " forced to both " + std::to_string(delta[col]) + " and " +
                          std::to_string(target));
    }
    delta[col] = target;
  }
  for (auto& d : delta) {
    if (d == 0) {
      d = 1;
    }
  }
  return LogicalMatrix(g.rows(), std::move(delta));
}

BnRealization bn_min_realization(std::span<const StructureVector> seeds, const LogicalMatrix& m,
                                 const RealizationOptions& options) {
  BnRealization out;
  out.members = invariant_closure(seeds, m, options.closure_cap);
  out.generator = stack_functions(out.members, options.coordinate_cap);
  out.dynamics = solve_reduced_dynamics(out.generator, m);
  return out;
}

std::vector<Index> support(const StructureVector& v) {
  std::vector<Index> out;
  for (std::size_t j = 0; j < v.size(); ++j) {
    if (v[j] != 0) {
      out.push_back(j + 1);
    }
  }
  return out;
}

bool in_dual_subspace(const StructureVector& v, std::span<const Index> part) {
  const std::unordered_set<Index> allowed(part.begin(), part.end());
  for (std::size_t j = 0; j < v.size(); ++j) {
    if (v[j] != 0 && !allowed.contains(j + 1)) {
      return false;
    }
  }
  return true;
}

StructureVector pullback(const StructureVector& v, const LogicalMatrix& t) {
  if (!t.is_permutation()) {
    throw InvalidArgument("pullback needs a permutation coordinate change");
  }
  return sv_compose(v, t);
}

StructureVector pullback_transposed(const StructureVector& v, const LogicalMatrix& t) {
  return sv_compose(v, transpose_permutation(t));
}

}  // namespace stpbn
