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

#include <sys/wait.h>

#include <array>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <string>

#include "doctest.h"
#include "stpbn/io.hpp"

using stpbn::Json;

namespace {

struct Run {
  int code = -1;
  std::string out;
};

Run run(const std::string& args, const std::string& env = "") {
  const std::string cmd = env + " " + STPBN_CLI + " " + args + " 2>/dev/null";
  Run r;
  FILE* pipe = popen(cmd.c_str(), "r");
  REQUIRE(pipe != nullptr);
  std::array<char, 4096> buf{};
  std::size_t got = 0;
  while ((got = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) r.out.append(buf.data(), got);
  const int status = pclose(pipe);
  r.code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  return r;
}

std::string data(const std::string& name) { return std::string(STPBN_TEST_DATA) + "/" + name; }

std::size_t count(const std::string& s, const std::string& what) {
  std::size_t n = 0;
  for (auto p = s.find(what); p != std::string::npos; p = s.find(what, p + 1)) ++n;
  return n;
}

}  // namespace

TEST_CASE("cli dual matrix") {
  const auto r = run("dual --delta 4:4:2,3,2,4 --mode matrix");
  REQUIRE(r.code == 0);
  const auto j = Json::parse(r.out);
  CHECK(j["delta"] == Json::array({1, 2, 5, 6, 11, 12, 15, 16, 1, 2, 5, 6, 11, 12, 15, 16}));
  CHECK(run("dual --delta 4:4:2,3,2,4 --mode matrix --format text").out ==
        "M* = δ_16[1,2,5,6,11,12,15,16,1,2,5,6,11,12,15,16]\n");
}

TEST_CASE("cli attractors and canonical form") {
  const auto a = Json::parse(run("attractors --delta 4:4:1,2,3,4").out);
  CHECK(a["fixed_points"] == 4);
  const auto c = Json::parse(run("canonical --delta 8:8:3,2,1,2,6,8,3,5").out);
  REQUIRE(c["blocks"].size() == 3);
  std::multiset<std::pair<int, int>> blocks;
  for (const auto& b : c["blocks"]) blocks.emplace(b["cycle_length"].get<int>(), b["transient_count"].get<int>());
  CHECK(blocks == std::multiset<std::pair<int, int>>{{2, 1}, {1, 1}, {3, 0}});
}

TEST_CASE("cli network files") {
  const auto r = run("assr " + data("two_node.net"));
  REQUIRE(r.code == 0);
  CHECK(Json::parse(r.out)["M"]["delta"] == Json::array({2, 4, 2, 3}));
  const auto bcn = Json::parse(run("assr " + data("example_bcn.json")).out);
  CHECK(bcn["m"] == 1);
  CHECK(bcn["E"]["delta"].size() == 8);
  const auto sim = Json::parse(run("simulate " + data("example_bcn.json") + " --x0 1 --controls 1,2").out);
  CHECK(sim["states"] == Json::array({1, 4, 1}));
  const auto bn = Json::parse(run("simulate --delta 8:8:3,2,1,2,6,8,3,5 --x0 4 --horizon 3").out);
  CHECK(bn["states"] == Json::array({4, 2, 2, 2}));
}

TEST_CASE("cli realizations") {
  const auto bcn = run("realize-bcn " + data("example_bcn.json"));
  REQUIRE(bcn.code == 0);
  const auto j = Json::parse(bcn.out);
  CHECK(j["members"].size() == 18);
  CHECK(j["H"].size() == 2);
  const auto bn = Json::parse(run("realize-bn --delta 4:4:2,3,2,4 --seed 1010").out);
  CHECK(bn["members"].size() == 2);
  const auto dist = run("distributed " + data("two_channel.net") + " --channel 1:1:0,1 --channel 2:2:1,0");
  REQUIRE(dist.code == 0);
  CHECK(Json::parse(dist.out).size() == 2);
  CHECK(run("realize-bcn " + data("ternary.net")).code == 0);
}

TEST_CASE("cli dual modes") {
  const auto fp = Json::parse(run("dual --delta 4:4:2,3,2,4 --mode fixed-points").out);
  CHECK(fp["fixed_points"].size() == 4);
  const auto cyc = Json::parse(run("dual --delta 4:4:2,3,2,4").out);
  CHECK(cyc["cycles"].size() == 2);
  const auto orbit = Json::parse(run("dual --delta 4:4:2,3,2,4 --mode orbit --id 9").out);
  CHECK(orbit["cycle"][0]["id"] == "1");
  CHECK(run("dual --delta 4:4:2,3,2,4 --mode orbit --seed 1010").code == 0);
  CHECK(run("dual --delta 4:4:2,3,2,4 --mode orbit").code == 2);
}

TEST_CASE("cli DOT output agrees with the JSON report") {
  const auto dot = run("attractors --delta 8:8:3,2,1,2,6,8,3,5 --format dot").out;
  CHECK(dot.rfind("digraph", 0) == 0);
  CHECK(count(dot, "[label=") == 8);
  CHECK(count(dot, " -> ") == 8);
  const auto dual = run("dual --delta 4:4:2,3,2,4 --mode matrix --format dot").out;
  const auto j = Json::parse(run("dual --delta 4:4:2,3,2,4 --mode matrix").out);
  CHECK(count(dual, "[label=") == j["cols"].get<std::size_t>());
  CHECK(count(dual, " -> ") == j["delta"].size());
  CHECK(dual.find("label=\"(1,0,1,0)\"") != std::string::npos);
}

TEST_CASE("cli exit codes") {
  CHECK(run("dual --delta 32:32:" + [] {
          std::string s;
          for (int i = 1; i <= 32; ++i) s += (i > 1 ? "," : "") + std::to_string(i);
          return s;
        }()).code == 3);
  CHECK(run("dual --delta 4:4:2,3,2,4 --mode matrix", "STPBN_CAP_DUAL=10").code == 3);
  CHECK(run("dual --delta 4:4:2,3,2,4 --mode matrix --cap-dual 10").code == 3);
  CHECK(run("dual --delta 4:4:2,3,2,4 --mode matrix", "STPBN_CAP_DUAL=100").code == 0);
  CHECK(run("realize-bcn " + data("example_bcn.json") + " --cap-cis 4").code == 3);
  CHECK(run("attractors --delta 4:4:2,3").code == 2);
  CHECK(run("attractors --delta 4:4:2,3,2,9").code == 2);
  CHECK(run("attractors " + data("missing.net")).code == 2);
  CHECK(run("attractors").code == 2);
  CHECK(run("attractors --delta 4:4:1,2,3,4 --format png").code == 2);
  CHECK(run("bogus").code == 2);
  CHECK(run("assr " + data("two_node_dual_edges.txt")).code == 2);
  CHECK(run("realize-bcn --delta 4:4:1,2,3,4").code == 2);
}

TEST_CASE("cli output is deterministic") {
  const std::string args = "realize-bcn " + data("example_bcn.json");
  const auto a = run(args), b = run(args), c = run(args + " --threads 2");
  CHECK(a.out == b.out);
  CHECK(a.out == c.out);
  const std::string path = std::string(STPBN_TEST_OUT) + "/cli_out.json";
  REQUIRE(run("dual --delta 4:4:2,3,2,4 --out " + path).code == 0);
  std::ifstream in(path);
  std::stringstream ss;
  ss << in.rdbuf();
  CHECK(ss.str() == run("dual --delta 4:4:2,3,2,4").out);
}
