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
#include <cstdlib>
#include <map>
#include <numeric>
#include <random>
#include <set>
#include <string>

#include "doctest.h"
#include "oracles.hpp"
#include "stpbn/bn.hpp"
#include "stpbn/dual.hpp"

using namespace stpbn;

namespace {

const LogicalMatrix kTwoNode(4, {2, 3, 2, 4});
const LogicalMatrix kCanonical(8, {2, 1, 2, 4, 4, 7, 8, 6});

StructureVector sv(const std::string& digits, unsigned k = 2) {
  std::vector<std::uint8_t> d;
  for (char c : digits) d.push_back(static_cast<std::uint8_t>(c - '0'));
  return StructureVector::from_digits(k, d);
}

StructureVector random_sv(std::mt19937_64& rng, unsigned k, unsigned n) {
  StructureVector v(k, n);
  for (std::size_t j = 0; j < v.size(); ++j) v.set(j, static_cast<std::uint8_t>(rng() % k));
  return v;
}

oracle::Map as_map(const LogicalMatrix& m) { return {m.delta().begin(), m.delta().end()}; }

}  // namespace

TEST_CASE("dual_matrix") {
  CHECK(dual_matrix(kTwoNode, 2) ==
        LogicalMatrix(16, {1, 2, 5, 6, 11, 12, 15, 16, 1, 2, 5, 6, 11, 12, 15, 16}));
  CHECK(dual_matrix(LogicalMatrix(2, {2, 1}), 2) == LogicalMatrix(4, {1, 3, 2, 4}));
  CHECK(dual_matrix(LogicalMatrix::identity(4), 2) == LogicalMatrix::identity(16));
  CHECK(dual_matrix(LogicalMatrix::identity(3), 3) == LogicalMatrix::identity(27));
  CHECK_THROWS_AS(dual_matrix(LogicalMatrix::identity(32), 2), CapExceeded);
  CHECK_THROWS_AS(dual_matrix(kTwoNode, 2, 15), CapExceeded);
  CHECK_THROWS_AS(dual_matrix(LogicalMatrix::identity(6), 2), DimensionError);

  SUBCASE("product table of the two-node network") {
    const char* rhs[] = {"0000", "0001", "0100", "0101", "1010", "1011", "1110", "1111",
                         "0000", "0001", "0100", "0101", "1010", "1011", "1110", "1111"};
    for (std::uint64_t id = 1; id <= 16; ++id) {
      CHECK(sv_compose(sv_from_id64(id, 2, 2), kTwoNode) == sv(rhs[id - 1]));
    }
  }

  SUBCASE("column law against brute force") {
    std::mt19937_64 rng(4);
    for (int trial = 0; trial < 30; ++trial) {
      const auto map = oracle::random_map(rng, 4);
      const auto star = dual_matrix(LogicalMatrix(4, map), 2);
      const auto all = oracle::all_functions(2, 4);
      for (std::size_t i = 0; i < all.size(); ++i) {
        const auto image = oracle::compose(all[i], map);
        const auto pos = std::find(all.begin(), all.end(), image) - all.begin();
        REQUIRE(star.image(i + 1) == static_cast<Index>(pos + 1));
      }
    }
  }
}

TEST_CASE("default dual cap honours the environment") {
  CHECK(default_dual_cap() == (Index{1} << 24));
  ::setenv("STPBN_CAP_DUAL", "100", 1);
  CHECK(default_dual_cap() == 100);
  CHECK_THROWS_AS(dual_matrix(kTwoNode, 2, default_dual_cap() / 8), CapExceeded);
  ::unsetenv("STPBN_CAP_DUAL");
  CHECK(default_dual_cap() == (Index{1} << 24));
}

TEST_CASE("dual_orbit") {
  SUBCASE("into the zero fixed point") {
    const auto o = dual_orbit(sv("1000"), kTwoNode);
    CHECK(sv_to_id(o.seed) == 9);
    CHECK(o.transient == std::vector<StructureVector>{sv("1000")});
    CHECK(o.cycle == std::vector<StructureVector>{sv("0000")});
  }
  SUBCASE("pure two-cycle") {
    const auto o = dual_orbit(sv("1010"), kTwoNode);
    CHECK(o.transient.empty());
    CHECK(o.cycle == std::vector<StructureVector>{sv("1010"), sv("0100")});
  }
  SUBCASE("identity") {
    const auto o = dual_orbit(sv("0110"), LogicalMatrix::identity(4));
    CHECK(o.transient.empty());
    CHECK(o.cycle.size() == 1);
  }
  SUBCASE("step budget") {
    // A 5-cycle permutation on 32 states moves an indicator through 5 functions.
    std::vector<Index> perm(32);
    std::iota(perm.begin(), perm.end(), 1);
    std::rotate(perm.begin(), perm.begin() + 1, perm.begin() + 5);
    const LogicalMatrix m(32, perm);
    const auto o = dual_orbit(generator(1, 2, 5), m);
    CHECK(o.cycle.size() == 5);
    CHECK_THROWS_AS(dual_orbit(generator(1, 2, 5), m, 3), CapExceeded);
  }
}

TEST_CASE("dual fixed points") {
  const auto fp = dual_fixed_points(kTwoNode, 2);
  CHECK(fp == std::vector<StructureVector>{sv("0000"), sv("0001"), sv("1110"), sv("1111")});
  CHECK(dual_fixed_points(kCanonical, 2).size() == 8);
  CHECK(weak_component_count(kCanonical) == 3);
  CHECK(dual_fixed_points(LogicalMatrix(4, {2, 3, 4, 1}), 2) ==
        std::vector<StructureVector>{sv("0000"), sv("1111")});
  CHECK(dual_fixed_points(LogicalMatrix(3, {2, 3, 1}), 3).size() == 3);
  CHECK_THROWS_AS(dual_fixed_points(LogicalMatrix::identity(8), 2, 100), CapExceeded);

  SUBCASE("count law against brute force") {
    std::mt19937_64 rng(21);
    for (int trial = 0; trial < 300; ++trial) {
      const unsigned k = trial % 3 == 0 ? 3 : 2;
      const std::size_t n_states = k == 2 ? (trial % 2 ? 4 : 8) : 9;
      const auto map = oracle::random_map(rng, n_states);
      const LogicalMatrix m(n_states, map);
      const auto comps = oracle::weak_components(map);
      const auto fp = dual_fixed_points(m, k);
      REQUIRE(weak_component_count(m) == comps);
      REQUIRE(fp.size() == oracle::ipow(k, comps));
      for (const auto& v : fp) REQUIRE(sv_compose(v, m) == v);
      if (n_states <= 4 || k == 3) {
        const auto brute = oracle::brute_fixed_points(k, map);
        REQUIRE(brute.size() == fp.size());
        for (std::size_t i = 0; i < fp.size(); ++i) REQUIRE(fp[i].digits() == brute[i]);
      }
    }
  }
}

TEST_CASE("dual_attractors") {
  SUBCASE("two-node network") {
    const auto r = dual_attractors(kTwoNode, 2);
    CHECK(r.enumerated);
    CHECK(r.fixed_points == std::vector<StructureVector>{sv("0000"), sv("0001"), sv("1110"), sv("1111")});
    REQUIRE(r.cycles.size() == 2);
    CHECK(r.cycles[0] == std::vector<StructureVector>{sv("0100"), sv("1010")});
    CHECK(r.cycles[1] == std::vector<StructureVector>{sv("0101"), sv("1011")});
    REQUIRE(r.basins.size() == 6);
    CHECK(r.basins[0] == std::vector<std::uint64_t>{9});
    CHECK(r.basins[1] == std::vector<std::uint64_t>{10});
    CHECK(r.basins[2] == std::vector<std::uint64_t>{7});
    CHECK(r.basins[3] == std::vector<std::uint64_t>{8});
    CHECK(r.basins[4] == std::vector<std::uint64_t>{3, 13});
    CHECK(r.basins[5] == std::vector<std::uint64_t>{4, 14});
  }
  SUBCASE("identity") {
    const auto r = dual_attractors(LogicalMatrix::identity(4), 2);
    CHECK(r.fixed_points.size() == 16);
    CHECK(r.cycles.empty());
  }
  SUBCASE("cycle-length multiset of the canonical matrix") {
    const auto r = dual_attractors(kCanonical, 2);
    std::map<std::size_t, std::size_t> lengths;
    lengths[1] = r.fixed_points.size();
    for (const auto& c : r.cycles) ++lengths[c.size()];
    const std::map<std::size_t, std::size_t> golden{{1, 8}, {2, 4}, {3, 8}, {6, 4}};
    CHECK(lengths == golden);
    std::set<std::vector<oracle::Digits>> brute = oracle::dual_cycles(2, as_map(kCanonical));
    std::map<std::size_t, std::size_t> brute_lengths;
    for (const auto& c : brute) ++brute_lengths[c.size()];
    CHECK(brute_lengths == golden);
  }
  SUBCASE("cap handling") {
    CHECK_THROWS_AS(dual_attractors(LogicalMatrix::identity(32), 2), CapExceeded);
    DualOptions opts;
    opts.structural_fallback = true;
    const auto r = dual_attractors(LogicalMatrix(32, std::vector<Index>(32, 1)), 2, opts);
    CHECK_FALSE(r.enumerated);
    CHECK(r.fixed_points.size() == 2);
    CHECK(r.basins.empty());
  }
  SUBCASE("cycles and partition against brute force") {
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 60; ++trial) {
      const unsigned k = trial % 4 == 0 ? 3 : 2;
      const std::size_t n_states = k == 2 ? 8 : 3;
      const auto map = oracle::random_map(rng, n_states);
      const auto r = dual_attractors(LogicalMatrix(n_states, map), k);
      std::set<std::vector<oracle::Digits>> got;
      std::vector<int> cover(oracle::ipow(k, n_states), 0);
      for (std::size_t i = 0; i < r.fixed_points.size(); ++i) {
        got.insert({r.fixed_points[i].digits()});
        ++cover[sv_to_id64(r.fixed_points[i]) - 1];
      }
      for (const auto& c : r.cycles) {
        std::vector<oracle::Digits> cd;
        for (const auto& v : c) {
          cd.push_back(v.digits());
          ++cover[sv_to_id64(v) - 1];
        }
        got.insert(cd);
      }
      for (const auto& b : r.basins) {
        for (auto id : b) ++cover[id - 1];
      }
      REQUIRE(got == oracle::dual_cycles(k, map));
      for (int c : cover) REQUIRE(c == 1);
    }
  }
}

TEST_CASE("homomorphism laws") {
  std::mt19937_64 rng(5);
  for (int trial = 0; trial < 20; ++trial) {
    const LogicalMatrix m(4, oracle::random_map(rng, 4));
    CHECK(sv_compose(top(2, 2), m) == top(2, 2));
    CHECK(sv_compose(bottom(2, 2), m) == bottom(2, 2));
    for (std::uint64_t a = 1; a <= 16; ++a) {
      const auto v = sv_from_id64(a, 2, 2);
      REQUIRE(sv_compose(negate(v), m) == negate(sv_compose(v, m)));
      for (std::uint64_t b = 1; b <= 16; ++b) {
        const auto w = sv_from_id64(b, 2, 2);
        REQUIRE(sv_compose(and_(v, w), m) == and_(sv_compose(v, m), sv_compose(w, m)));
        REQUIRE(sv_compose(or_(v, w), m) == or_(sv_compose(v, m), sv_compose(w, m)));
      }
    }
  }
  for (unsigned k : {2u, 3u}) {
    const unsigned n = k == 2 ? 7 : 3;
    const Index size = oracle::ipow(k, n);
    for (int trial = 0; trial < 10; ++trial) {
      const LogicalMatrix m(size, oracle::random_map(rng, size));
      for (int pair = 0; pair < 100; ++pair) {
        const auto v = random_sv(rng, k, n), w = random_sv(rng, k, n);
        REQUIRE(sv_compose(and_(v, w), m) == and_(sv_compose(v, m), sv_compose(w, m)));
        REQUIRE(sv_compose(or_(v, w), m) == or_(sv_compose(v, m), sv_compose(w, m)));
        REQUIRE(sv_compose(negate(v), m) == negate(sv_compose(v, m)));
      }
    }
  }
}

TEST_CASE("boolean algebra") {
  CHECK(and_(sv("1100"), sv("1010")) == sv("1000"));
  CHECK(or_(sv("1100"), sv("1010")) == sv("1110"));
  CHECK(negate(sv("0000")) == sv("1111"));
  CHECK(negate(sv("012210120", 3)) == sv("210012102", 3));
  CHECK(top(3, 1) == sv("222", 3));
  CHECK_THROWS_AS(and_(sv("10"), sv("1010")), DimensionError);
  std::mt19937_64 rng(9);
  for (int trial = 0; trial < 50; ++trial) {
    const auto v = random_sv(rng, 2, 7);
    REQUIRE(or_(v, negate(v)) == top(2, 7));
    REQUIRE(and_(v, negate(v)) == bottom(2, 7));
    REQUIRE(negate(negate(v)) == v);
  }
}

TEST_CASE("negation duality") {
  for (std::uint64_t code = 0; code < 256; ++code) {
    std::vector<Index> delta(4);
    for (int j = 0; j < 4; ++j) delta[j] = 1 + ((code >> (2 * j)) & 3);
    const LogicalMatrix m(4, delta);
    const auto r = dual_attractors(m, 2);
    std::set<StructureVector> fixed(r.fixed_points.begin(), r.fixed_points.end());
    for (const auto& v : r.fixed_points) REQUIRE(fixed.count(negate(v)) == 1);
    std::set<std::vector<StructureVector>> cycles(r.cycles.begin(), r.cycles.end());
    for (const auto& c : r.cycles) {
      std::vector<StructureVector> neg;
      for (const auto& v : c) neg.push_back(negate(v));
      std::rotate(neg.begin(), std::min_element(neg.begin(), neg.end()), neg.end());
      REQUIRE(cycles.count(neg) == 1);
    }
  }
}

TEST_CASE("generators and decomposition") {
  CHECK(generator(1, 2, 2) == sv("1000"));
  CHECK(generator(3, 3, 1) == sv("002", 3));
  CHECK_THROWS_AS(generator(5, 2, 2), InvalidArgument);
  CHECK(sv_compose(generator(2, 2, 3), kCanonical) == sv("10100000"));
  CHECK(decompose(sv("10001010")) == std::vector<Index>{1, 5, 7});
  CHECK_THROWS_AS(decompose(sv("012", 3)), InvalidArgument);
  std::mt19937_64 rng(13);
  for (int trial = 0; trial < 50; ++trial) {
    const auto v = random_sv(rng, 2, 4);
    StructureVector join = bottom(2, 4);
    StructureVector image_join = bottom(2, 4);
    const LogicalMatrix m(16, oracle::random_map(rng, 16));
    for (Index i : decompose(v)) {
      join = or_(join, generator(i, 2, 4));
      image_join = or_(image_join, sv_compose(generator(i, 2, 4), m));
    }
    REQUIRE(join == v);
    REQUIRE(image_join == sv_compose(v, m));
  }
}

TEST_CASE("invariant closure and realization") {
  const std::vector<StructureVector> pair{sv("1010")};
  CHECK(invariant_closure(pair, kTwoNode) == std::vector<StructureVector>{sv("1010"), sv("0100")});
  const std::vector<StructureVector> fixed{sv("1110")};
  CHECK(invariant_closure(fixed, kTwoNode) == fixed);
  const std::vector<StructureVector> drain{sv("1000")};
  CHECK(invariant_closure(drain, kTwoNode) == std::vector<StructureVector>{sv("1000"), sv("0000")});

  SUBCASE("two-cycle realization swaps the reached coordinates") {
    const auto real = bn_min_realization(pair, kTwoNode);
    CHECK(real.generator.rows() == 4);
    for (Index x0 = 1; x0 <= 4; ++x0) {
      const auto xs = trajectory(kTwoNode, x0, 8);
      const auto zs = trajectory(real.dynamics, real.generator.image(x0), 8);
      for (std::size_t t = 0; t < xs.size(); ++t) REQUIRE(real.generator.image(xs[t]) == zs[t]);
    }
    // z ∈ {δ_4^2 = (1,0), δ_4^3 = (0,1)} are the only reached values and they swap.
    CHECK(real.dynamics.image(2) == 3);
    CHECK(real.dynamics.image(3) == 2);
  }
  SUBCASE("constant coordinate") {
    const std::vector<StructureVector> t{top(2, 2)};
    const auto real = bn_min_realization(t, kTwoNode);
    CHECK(real.generator == LogicalMatrix(2, {1, 1, 1, 1}));
    CHECK(real.dynamics.image(1) == 1);
  }
  SUBCASE("faithfulness on random networks") {
    std::mt19937_64 rng(23);
    for (int trial = 0; trial < 100; ++trial) {
      const unsigned k = trial % 3 == 0 ? 3 : 2;
      const unsigned n = k == 2 ? 3 : 2;
      const Index size = oracle::ipow(k, n);
      const LogicalMatrix m(size, oracle::random_map(rng, size));
      const std::vector<StructureVector> seeds{random_sv(rng, k, n)};
      const auto real = bn_min_realization(seeds, m);
      REQUIRE(lm_mul(real.generator, m) == lm_mul(real.dynamics, real.generator));
      for (Index x0 = 1; x0 <= size; ++x0) {
        const auto xs = trajectory(m, x0, 2 * size);
        const auto zs = trajectory(real.dynamics, real.generator.image(x0), 2 * size);
        for (std::size_t t = 0; t < xs.size(); ++t) REQUIRE(real.generator.image(xs[t]) == zs[t]);
      }
    }
  }
  SUBCASE("indicator of the first invariant block") {
    const std::vector<StructureVector> seeds{sv("11100000")};
    const auto real = bn_min_realization(seeds, kCanonical);
    CHECK(lm_mul(real.generator, kCanonical) == lm_mul(real.dynamics, real.generator));
  }
  SUBCASE("caps") {
    RealizationOptions opts;
    opts.closure_cap = 1;
    CHECK_THROWS_AS(bn_min_realization(pair, kTwoNode, opts), CapExceeded);
    RealizationOptions coords;
    coords.coordinate_cap = 2;
    CHECK_THROWS_AS(bn_min_realization(pair, kTwoNode, coords), CapExceeded);
  }
  SUBCASE("non-invariant input is rejected") {
    const auto g = stack_functions(pair);
    CHECK_THROWS_AS(solve_reduced_dynamics(g, LogicalMatrix(4, {1, 2, 2, 3})), InternalError);
  }
}

TEST_CASE("support, dual subspaces and pullback") {
  CHECK(support(sv("0101")) == std::vector<Index>{2, 4});
  CHECK(support(sv("0000")).empty());
  const std::vector<Index> part{2, 4};
  CHECK(in_dual_subspace(sv("0100"), part));
  CHECK_FALSE(in_dual_subspace(sv("1100"), part));

  SUBCASE("invariant blocks of the canonical matrix") {
    const std::vector<std::vector<Index>> blocks{{1, 2, 3}, {4, 5}, {6, 7, 8}};
    for (std::uint64_t id = 1; id <= 256; ++id) {
      const auto v = sv_from_id64(id, 2, 3);
      for (const auto& b : blocks) {
        if (in_dual_subspace(v, b)) REQUIRE(in_dual_subspace(sv_compose(v, kCanonical), b));
      }
    }
  }

  const LogicalMatrix t(8, {1, 4, 2, 5, 6, 7, 3, 8});
  CHECK(pullback(generator(1, 2, 3), t) == generator(1, 2, 3));
  CHECK(support(pullback(sv("10100000"), t)) == std::vector<Index>{1, 7});
  CHECK(pullback(sv("10100000"), LogicalMatrix::identity(8)) == sv("10100000"));
  CHECK(support(pullback_transposed(sv("10100000"), t)) == std::vector<Index>{1, 2});
  CHECK_THROWS_AS(pullback(sv("10100000"), LogicalMatrix(8, {1, 1, 2, 3, 4, 5, 6, 7})), InvalidArgument);
}

TEST_CASE("lcm join law") {
  const auto two = dual_orbit(sv("01000000"), kCanonical);
  const auto three = dual_orbit(sv("00000100"), kCanonical);
  REQUIRE(two.cycle.size() == 2);
  REQUIRE(three.cycle.size() == 3);
  CHECK(dual_orbit(or_(two.cycle[0], three.cycle[0]), kCanonical).cycle.size() == 6);

  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 50; ++trial) {
    const Index l1 = 1 + rng() % 5, t1 = rng() % 3, l2 = 1 + rng() % 5, t2 = rng() % 3;
    const Index b1 = l1 + t1, size = b1 + l2 + t2;
    std::vector<Index> delta(size);
    for (Index i = 0; i < l1; ++i) delta[i] = 1 + (i + 1) % l1;
    for (Index i = l1; i < b1; ++i) delta[i] = 1 + rng() % i;
    for (Index i = 0; i < l2; ++i) delta[b1 + i] = b1 + 1 + (i + 1) % l2;
    for (Index i = b1 + l2; i < size; ++i) delta[i] = b1 + 1 + rng() % (i - b1);
    const LogicalMatrix m(size, delta);
    const std::vector<Index> block1 = [&] {
      std::vector<Index> b(b1);
      std::iota(b.begin(), b.end(), 1);
      return b;
    }();
    // Dual states live on any size here; embed in the next power of two.
    unsigned n = 0;
    while ((Index{1} << n) < size) ++n;
    std::vector<Index> padded(delta);
    for (Index j = size; j < (Index{1} << n); ++j) padded.push_back(j + 1);
    const LogicalMatrix mp(Index{1} << n, padded);
    StructureVector v1(2, n), v2(2, n);
    for (Index j = 0; j < b1; ++j) v1.set(j, rng() & 1);
    for (Index j = b1; j < size; ++j) v2.set(j, rng() & 1);
    const auto o1 = dual_orbit(v1, mp), o2 = dual_orbit(v2, mp);
    const auto& c1 = o1.cycle.front();
    const auto& c2 = o2.cycle.front();
    REQUIRE(in_dual_subspace(c1, block1));
    const auto joined = dual_orbit(or_(c1, c2), mp);
    REQUIRE(joined.transient.empty());
    REQUIRE(joined.cycle.size() == std::lcm(o1.cycle.size(), o2.cycle.size()));
  }
}
