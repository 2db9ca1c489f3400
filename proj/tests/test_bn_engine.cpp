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

#include <algorithm>
#include <random>
#include <set>

#include "doctest.h"
#include "oracles.hpp"
#include "stpbn/bn.hpp"

using namespace stpbn;

namespace {

const LogicalMatrix kTwoNode(4, {2, 3, 2, 4});
const LogicalMatrix kThreeNode(8, {3, 2, 1, 2, 6, 8, 3, 5});
const LogicalMatrix kCanonical(8, {2, 1, 2, 4, 4, 7, 8, 6});

std::multiset<std::size_t> cycle_lengths(const AttractorReport& r) {
  std::multiset<std::size_t> out;
  for (const auto& a : r.attractors) out.insert(a.cycle.size());
  return out;
}

}  // namespace

TEST_CASE("step and trajectory") {
  CHECK(step(kTwoNode, 1) == 2);
  CHECK(step(kTwoNode, 4) == 4);
  CHECK(trajectory(kThreeNode, 4, 3) == std::vector<Index>{4, 2, 2, 2});
  CHECK(trajectory(kTwoNode, 3, 0) == std::vector<Index>{3});
  CHECK_THROWS_AS(step(kTwoNode, 0), InvalidArgument);
  CHECK_THROWS_AS(step(kTwoNode, 5), InvalidArgument);
  CHECK_THROWS_AS(trajectory(kTwoNode, 9, 2), InvalidArgument);
  CHECK_THROWS_AS(step(LogicalMatrix(2, {1, 1, 1, 1}), 1), DimensionError);
}

TEST_CASE("attractors") {
  SUBCASE("two-node network") {
    const auto r = attractors(kTwoNode);
    REQUIRE(r.attractors.size() == 2);
    CHECK(r.attractors[0].cycle == std::vector<Index>{4});
    CHECK(r.attractors[0].basin.empty());
    CHECK(r.attractors[1].cycle == std::vector<Index>{2, 3});
    CHECK(r.attractors[1].basin == std::vector<Index>{1});
    CHECK(r.fixed_point_count() == 1);
    CHECK(r.distance == std::vector<Index>{1, 0, 0, 0});
  }
  SUBCASE("canonical three-node matrix") {
    const auto r = attractors(kCanonical);
    REQUIRE(r.attractors.size() == 3);
    CHECK(r.attractors[0].cycle == std::vector<Index>{4});
    CHECK(r.attractors[0].basin == std::vector<Index>{5});
    CHECK(r.attractors[1].cycle == std::vector<Index>{1, 2});
    CHECK(r.attractors[1].basin == std::vector<Index>{3});
    CHECK(r.attractors[2].cycle == std::vector<Index>{6, 7, 8});
    CHECK(r.attractors[2].basin.empty());
  }
  SUBCASE("identity") {
    const auto r = attractors(LogicalMatrix::identity(6));
    CHECK(r.attractors.size() == 6);
    CHECK(r.fixed_point_count() == 6);
    for (const auto& a : r.attractors) CHECK(a.basin.empty());
  }
  SUBCASE("cycle order follows the dynamics") {
    const auto r = attractors(LogicalMatrix(3, {3, 1, 2}));
    REQUIRE(r.attractors.size() == 1);
    CHECK(r.attractors[0].cycle == std::vector<Index>{1, 3, 2});
  }
}

TEST_CASE("attractor report invariants on random maps") {
  std::mt19937_64 rng(41);
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 1 + rng() % 40;
    const auto map = oracle::random_map(rng, n);
    const LogicalMatrix m(n, map);
    const auto r = attractors(m);
    std::vector<int> seen(n, 0);
    for (std::size_t a = 0; a < r.attractors.size(); ++a) {
      const auto& att = r.attractors[a];
      for (std::size_t i = 0; i < att.cycle.size(); ++i) {
        ++seen[att.cycle[i] - 1];
        REQUIRE(map[att.cycle[i] - 1] == att.cycle[(i + 1) % att.cycle.size()]);
        REQUIRE(r.distance[att.cycle[i] - 1] == 0);
      }
      REQUIRE(att.cycle.front() == *std::min_element(att.cycle.begin(), att.cycle.end()));
      for (Index s : att.basin) {
        ++seen[s - 1];
        const Index d = r.distance[s - 1];
        REQUIRE(d >= 1);
        const auto path = trajectory(m, s, d);
        const auto on_cycle = [&](Index x) {
          return std::find(att.cycle.begin(), att.cycle.end(), x) != att.cycle.end();
        };
        REQUIRE(on_cycle(path[d]));
        REQUIRE_FALSE(on_cycle(path[d - 1]));
        REQUIRE(r.attractor_of[s - 1] == a);
      }
    }
    for (int c : seen) REQUIRE(c == 1);
    for (std::size_t a = 1; a < r.attractors.size(); ++a) {
      const auto& p = r.attractors[a - 1].cycle;
      const auto& q = r.attractors[a].cycle;
      REQUIRE(std::make_pair(p.size(), p.front()) < std::make_pair(q.size(), q.front()));
    }
  }
}

TEST_CASE("canonical form") {
  SUBCASE("coordinate change of the worked example") {
    const LogicalMatrix t(8, {1, 4, 2, 5, 6, 7, 3, 8});
    CHECK(conjugate(kThreeNode, t) == kCanonical);
  }
  SUBCASE("computed form of the three-node matrix") {
    const auto c = canonical_form(kThreeNode);
    CHECK(c.transform.is_permutation());
    CHECK(conjugate(kThreeNode, c.transform) == c.conjugated);
    CHECK(satisfies_canonical_structure(c.conjugated, c.blocks));
    REQUIRE(c.blocks.size() == 3);
    CHECK(c.blocks[0].cycle_length == 1);
    CHECK(c.blocks[0].transient_count == 1);
    CHECK(c.blocks[1].cycle_length == 2);
    CHECK(c.blocks[1].transient_count == 1);
    CHECK(c.blocks[2].cycle_length == 3);
    CHECK(c.blocks[2].transient_count == 0);
    CHECK(c.blocks[2].offset == 5);
    CHECK(c.transform == LogicalMatrix(8, {3, 1, 4, 2, 6, 7, 5, 8}));
  }
  SUBCASE("already cyclic") {
    const LogicalMatrix cyc(5, {2, 3, 4, 5, 1});
    const auto c = canonical_form(cyc);
    CHECK(c.transform == LogicalMatrix::identity(5));
    CHECK(c.conjugated == cyc);
  }
  SUBCASE("the predicate rejects broken structure") {
    const std::vector<CanonicalBlock> blocks{{1, 1, 0}, {2, 1, 2}, {3, 0, 5}};
    CHECK_FALSE(satisfies_canonical_structure(kCanonical, blocks));
    const std::vector<CanonicalBlock> mine{{2, 1, 0}, {1, 1, 3}, {3, 0, 5}};
    CHECK(satisfies_canonical_structure(kCanonical, mine));
    const std::vector<CanonicalBlock> short_tiling{{2, 1, 0}, {1, 1, 3}};
    CHECK_FALSE(satisfies_canonical_structure(kCanonical, short_tiling));
  }
  SUBCASE("random maps") {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 200; ++trial) {
      const std::size_t n = 1 + rng() % 64;
      const LogicalMatrix m(n, oracle::random_map(rng, n));
      const auto c = canonical_form(m);
      REQUIRE(satisfies_canonical_structure(c.conjugated, c.blocks));
      REQUIRE(conjugate(m, c.transform) == c.conjugated);
      REQUIRE(cycle_lengths(attractors(c.conjugated)) == cycle_lengths(attractors(m)));
    }
  }
}

TEST_CASE("conjugation preserves the cycle structure") {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t n = 1 + rng() % 32;
    const LogicalMatrix m(n, oracle::random_map(rng, n));
    const LogicalMatrix t(n, oracle::random_permutation(rng, n));
    const auto dense = multiply(multiply(t.to_dense(), m.to_dense()), transpose_permutation(t).to_dense());
    const auto c = conjugate(m, t);
    REQUIRE(c.to_dense() == dense);
    REQUIRE(cycle_lengths(attractors(c)) == cycle_lengths(attractors(m)));
  }
  CHECK_THROWS_AS(conjugate(kTwoNode, LogicalMatrix(4, {1, 1, 2, 3})), InvalidArgument);
  CHECK_THROWS_AS(conjugate(kTwoNode, LogicalMatrix::identity(8)), DimensionError);
}

TEST_CASE("regular_subspace_check") {
  CHECK(regular_subspace_check(LogicalMatrix(4, {3, 1, 4, 2}), 2));
  CHECK(regular_subspace_check(LogicalMatrix(2, {1, 1, 2, 2}), 2));
  CHECK_FALSE(regular_subspace_check(LogicalMatrix(2, {1, 1, 1, 2}), 2));
  CHECK_THROWS_AS(regular_subspace_check(LogicalMatrix(3, {1, 1, 2, 2}), 2), DimensionError);
  CHECK_THROWS_AS(regular_subspace_check(LogicalMatrix(4, {1, 2}), 2), DimensionError);

  SUBCASE("agrees with extension search") {
    std::mt19937_64 rng(77);
    struct Shape {
      unsigned k;
      Index rows, cols;
    };
    const Shape shapes[] = {{2, 2, 2}, {2, 2, 4}, {2, 4, 4}, {2, 2, 8},  {2, 4, 8},
                            {2, 8, 8}, {2, 8, 16}, {2, 16, 16}, {3, 3, 9}, {3, 9, 9}};
    for (const auto& sh : shapes) {
      for (int trial = 0; trial < 40; ++trial) {
        oracle::Map m0(sh.cols);
        if (trial % 2 == 0) {
          // Balanced by construction, then shuffled; sometimes perturbed.
          for (Index j = 0; j < sh.cols; ++j) m0[j] = 1 + j % sh.rows;
          std::shuffle(m0.begin(), m0.end(), rng);
          if (trial % 4 == 0) m0[rng() % sh.cols] = 1 + rng() % sh.rows;
        } else {
          std::uniform_int_distribution<Index> pick(1, sh.rows);
          for (auto& x : m0) x = pick(rng);
        }
        const bool expected = oracle::regular_by_extension(m0, sh.rows, sh.cols / sh.rows);
        REQUIRE(regular_subspace_check(LogicalMatrix(sh.rows, m0), sh.k) == expected);
      }
    }
  }
}
