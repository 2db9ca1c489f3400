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

#include "stpbn/bn.hpp"

#include <algorithm>
#include <string>

namespace stpbn {

namespace {

void require_square(const LogicalMatrix& m, const char* what) {
  if (!m.square()) {
    throw DimensionError(std::string(what) + " needs a square transition matrix");
  }
}

}  // namespace

std::size_t AttractorReport::fixed_point_count() const {
  return static_cast<std::size_t>(std::count_if(attractors.begin(), attractors.end(),
                                                [](const Attractor& a) { return a.cycle.size() == 1; }));
}

Index step(const LogicalMatrix& m, Index state) {
  require_square(m, "step");
  if (state < 1 || state > m.cols()) {
    throw InvalidArgument("state " + std::to_string(state) + " outside [1, " +
                          std::to_string(m.cols()) + "]");
  }
  return m.image(state);
}

std::vector<Index> trajectory(const LogicalMatrix& m, Index state, std::size_t horizon) {
  step(m, state);  // validates shape and range
  std::vector<Index> out{state};
  out.reserve(horizon + 1);
  for (std::size_t t = 0; t < horizon; ++t) {
    out.push_back(m.image(out.back()));
  }
  return out;
}

AttractorReport attractors(const LogicalMatrix& m) {
  require_square(m, "attractors");
  const Index n = m.cols();
  const auto next = [&m](Index s) { return m.delta()[s] - 1; };

  enum : std::uint8_t { kWhite, kGray, kBlack };
  std::vector<std::uint8_t> color(n, kWhite);
  constexpr auto kUnset = static_cast<std::size_t>(-1);
  std::vector<std::size_t> owner(n, kUnset);
  std::vector<Index> distance(n, 0);
  std::vector<std::vector<Index>> cycles;
  std::vector<Index> path;

  for (Index start = 0; start < n; ++start) {
    if (color[start] != kWhite) {
      continue;
    }
    path.clear();
    Index s = start;
    while (color[s] == kWhite) {
      color[s] = kGray;
      path.push_back(s);
      s = next(s);
    }
    std::size_t tail = path.size();
    if (color[s] == kGray) {
      // s closes a new cycle inside the current path.
      const auto at = static_cast<std::size_t>(std::find(path.begin(), path.end(), s) - path.begin());
      std::vector<Index> cycle(path.begin() + static_cast<std::ptrdiff_t>(at), path.end());
      const std::size_t id = cycles.size();
      for (auto c : cycle) {
        owner[c] = id;
        distance[c] = 0;
        color[c] = kBlack;
      }
      cycles.push_back(std::move(cycle));
      tail = at;
    }
    for (std::size_t i = tail; i-- > 0;) {
      const Index v = path[i];
      const Index w = next(v);
      owner[v] = owner[w];
      distance[v] = distance[w] + 1;
      color[v] = kBlack;
    }
  }

  // Rotate each cycle to its smallest state, then order attractors.
  for (auto& c : cycles) {
    std::rotate(c.begin(), std::min_element(c.begin(), c.end()), c.end());
  }
  std::vector<std::size_t> order(cycles.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    order[i] = i;
  }
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    if (cycles[a].size() != cycles[b].size()) {
      return cycles[a].size() < cycles[b].size();
    }
    return cycles[a].front() < cycles[b].front();
  });
  std::vector<std::size_t> rank(cycles.size());
  for (std::size_t i = 0; i < order.size(); ++i) {
    rank[order[i]] = i;
  }

  AttractorReport report;
  report.attractors.resize(cycles.size());
  for (std::size_t i = 0; i < cycles.size(); ++i) {
    auto& dst = report.attractors[rank[i]].cycle;
    dst.reserve(cycles[i].size());
    for (auto c : cycles[i]) {
      dst.push_back(c + 1);
    }
  }
  report.attractor_of.resize(n);
  for (Index s = 0; s < n; ++s) {
    report.attractor_of[s] = rank[owner[s]];
    if (distance[s] > 0) {
      report.attractors[rank[owner[s]]].basin.push_back(s + 1);
    }
  }
  report.distance = std::move(distance);
  return report;
}

CanonicalForm canonical_form(const LogicalMatrix& m) {
  const auto report = attractors(m);
  std::vector<Index> order;
  order.reserve(m.cols());
  CanonicalForm out;
  for (const auto& a : report.attractors) {
    CanonicalBlock block;
    block.offset = order.size();
    block.cycle_length = a.cycle.size();
    block.transient_count = a.basin.size();
    order.insert(order.end(), a.cycle.begin(), a.cycle.end());
    auto transients = a.basin;
    std::stable_sort(transients.begin(), transients.end(), [&](Index x, Index y) {
      return report.distance[x - 1] < report.distance[y - 1];
    });
    order.insert(order.end(), transients.begin(), transients.end());
    out.blocks.push_back(block);
  }
  std::vector<Index> t(m.cols());
  for (std::size_t p = 0; p < order.size(); ++p) {
    t[order[p] - 1] = p + 1;
  }
  out.transform = LogicalMatrix(m.cols(), std::move(t));
  out.conjugated = conjugate(m, out.transform);
  return out;
}

bool satisfies_canonical_structure(const LogicalMatrix& conjugated,
                                   const std::vector<CanonicalBlock>& blocks) {
  if (!conjugated.square()) {
    return false;
  }
  Index expected_offset = 0;
  for (const auto& b : blocks) {
    if (b.offset != expected_offset || b.cycle_length == 0) {
      return false;
    }
    for (Index i = 0; i < b.cycle_length; ++i) {
      const Index p = b.offset + i;
      if (conjugated.delta()[p] - 1 != b.offset + (i + 1) % b.cycle_length) {
        return false;
      }
    }
    for (Index p = b.offset + b.cycle_length; p < b.offset + b.size(); ++p) {
      const Index img = conjugated.delta()[p] - 1;
      if (img < b.offset || img >= p) {
        return false;
      }
    }
    expected_offset += b.size();
  }
  return expected_offset == conjugated.cols();
}

LogicalMatrix conjugate(const LogicalMatrix& m, const LogicalMatrix& t) {
  require_square(m, "conjugate");
  if (t.cols() != m.cols()) {
    throw DimensionError("conjugate: transform size differs from the matrix");
  }
  if (!t.is_permutation()) {
    throw InvalidArgument("conjugate needs a permutation matrix");
  }
  std::vector<Index> delta(m.cols());
  for (Index j = 0; j < m.cols(); ++j) {
    delta[t.delta()[j] - 1] = t.delta()[m.delta()[j] - 1];
  }
  return LogicalMatrix(m.rows(), std::move(delta));
}

bool regular_subspace_check(const LogicalMatrix& m0, unsigned k) {
  const int s = exact_log(m0.rows(), k);
  const int n = exact_log(m0.cols(), k);
  if (s < 0 || n < 0) {
    throw DimensionError("regular_subspace_check needs k^s × k^n dimensions");
  }
  if (s > n) {
    throw DimensionError("regular_subspace_check needs s <= n");
  }
  const Index expected = checked_pow(k, static_cast<Index>(n - s));
  std::vector<Index> counts(m0.rows(), 0);
  for (auto i : m0.delta()) {
    ++counts[i - 1];
  }
  return std::all_of(counts.begin(), counts.end(), [&](Index c) { return c == expected; });
}

}  // namespace stpbn
