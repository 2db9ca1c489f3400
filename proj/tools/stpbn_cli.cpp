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

// stpbn: command-line front end for the logical network library.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "stpbn/bcn.hpp"
#include "stpbn/bn.hpp"
#include "stpbn/dual.hpp"
#include "stpbn/io.hpp"
#include "stpbn/kernels.hpp"
#include "stpbn/logic_dsl.hpp"

namespace {

using namespace stpbn;

enum Exit { kOk = 0, kBadInput = 2, kCap = 3, kInternal = 4 };

struct Options {
  std::string input;
  std::string delta;
  unsigned k = 0;
  std::string format = "json";
  std::string out;
  int threads = 0;
  Index cap_dual = 0;
  std::size_t cap_cis = std::size_t{1} << 12;

  std::string mode = "cycles";
  std::string id;
  std::string seed;
  bool structural = false;

  Index x0 = 1;
  std::size_t horizon = 0;
  std::string controls;

  std::vector<std::string> seeds;
  std::vector<std::string> channels;
};

/// The loaded model: a transition matrix plus what else the source provided.
struct Model {
  unsigned k = 2;
  LogicalMatrix transition;
  std::optional<LogicalMatrix> output;
  std::optional<NetworkModel> network;

  bool square() const { return transition.square(); }
};

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw InvalidArgument("cannot read '" + path + "'");
  }
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

bool ends_with(const std::string& s, const std::string& suffix) {
  return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

Model load(const Options& opt) {
  if (opt.input.empty() == opt.delta.empty()) {
    throw InvalidArgument("give exactly one input: a file or --delta");
  }
  Model model;
  if (!opt.delta.empty()) {
    model.k = opt.k ? opt.k : 2;
    model.transition = parse_delta_string(opt.delta);
    return model;
  }
  const auto text = read_text(opt.input);
  if (ends_with(opt.input, ".json")) {
    Json j;
    try {
      j = Json::parse(text);
    } catch (const Json::parse_error& e) {
      throw InvalidArgument(std::string("invalid JSON: ") + e.what());
    }
    model.k = opt.k ? opt.k : j.value("k", 2u);
    if (j.contains("L")) {
      model.transition = matrix_from_json(j.at("L"));
    } else if (j.contains("M")) {
      model.transition = matrix_from_json(j.at("M"));
    } else {
      model.transition = matrix_from_json(j);
    }
    if (j.contains("E")) {
      model.output = matrix_from_json(j.at("E"));
    }
    return model;
  }
  auto net = parse_network(text);
  if (opt.k && opt.k != net.k) {
    throw InvalidArgument("--k disagrees with the radix declared in the file");
  }
  model.k = net.k;
  model.transition = network_to_assr(net);
  if (net.p() > 0) {
    model.output = network_outputs(net);
  }
  model.network = std::move(net);
  return model;
}

const LogicalMatrix& require_bn(const Model& model) {
  if (!model.square()) {
    throw InvalidArgument("this command needs a network without controls");
  }
  return model.transition;
}

BcnModel require_bcn(const Model& model) {
  if (!model.output) {
    throw InvalidArgument("this command needs an output matrix (E, or output rules)");
  }
  return BcnModel(model.k, model.transition, *model.output);
}

unsigned vars_of(const Model& model) {
  const int n = exact_log(model.transition.rows(), model.k);
  if (n < 0) {
    throw DimensionError("state count is not a power of k");
  }
  return static_cast<unsigned>(n);
}

std::vector<Index> parse_index_list(const std::string& text) {
  std::vector<Index> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) {
      continue;
    }
    std::size_t used = 0;
    unsigned long long v = 0;
    try {
      v = std::stoull(item, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used != item.size()) {
      throw InvalidArgument("bad index '" + item + "'");
    }
    out.push_back(v);
  }
  return out;
}

std::vector<StructureVector> parse_seeds(const Options& opt, unsigned k, unsigned n) {
  std::vector<StructureVector> out;
  for (const auto& s : opt.seeds) {
    auto v = parse_digits(s, k);
    if (v.vars() != n) {
      throw DimensionError("seed '" + s + "' has the wrong length");
    }
    out.push_back(std::move(v));
  }
  return out;
}

/// "controls:outputs:frozen", e.g. "1:2:0,1" (1-based controls and outputs).
Channel parse_channel(const std::string& text, const BcnModel& model) {
  const auto c1 = text.find(':');
  const auto c2 = c1 == std::string::npos ? c1 : text.find(':', c1 + 1);
  if (c2 == std::string::npos) {
    throw InvalidArgument("channel must look like controls:outputs:frozen");
  }
  Channel ch;
  for (auto c : parse_index_list(text.substr(0, c1))) {
    if (c == 0) throw InvalidArgument("channel indices are 1-based");
    ch.controls.push_back(c - 1);
  }
  for (auto y : parse_index_list(text.substr(c1 + 1, c2 - c1 - 1))) {
    if (y == 0) throw InvalidArgument("channel indices are 1-based");
    ch.outputs.push_back(y - 1);
  }
  for (auto v : parse_index_list(text.substr(c2 + 1))) {
    if (v >= model.radix()) throw InvalidArgument("frozen control value exceeds the radix");
    ch.frozen.push_back(static_cast<std::uint8_t>(v));
  }
  if (ch.frozen.empty()) {
    ch.frozen.assign(model.controls(), 0);
  }
  return ch;
}

RealizationOptions realization_options(const Options& opt) {
  RealizationOptions r;
  r.closure_cap = opt.cap_cis;
  return r;
}

Index dual_cap(const Options& opt) { return opt.cap_dual ? opt.cap_dual : default_dual_cap(); }

std::string text_functions(const std::vector<StructureVector>& vs) {
  std::string out;
  for (const auto& v : vs) {
    out += format_digits(v) + "\n";
  }
  return out;
}

void require_format(const Options& opt, std::initializer_list<const char*> allowed) {
  for (const char* f : allowed) {
    if (opt.format == f) return;
  }
  throw InvalidArgument("format '" + opt.format + "' is not available for this command");
}

std::string dump(const Json& j) { return j.dump() + "\n"; }

// --- commands ---------------------------------------------------------------

std::string cmd_assr(const Options& opt) {
  require_format(opt, {"json", "text"});
  const auto model = load(opt);
  const bool control = !model.square();
  if (opt.format == "text") {
    std::string out = std::string(control ? "L = " : "M = ") + format_delta(model.transition) + "\n";
    if (model.output) out += "E = " + format_delta(*model.output) + "\n";
    return out;
  }
  Json j{{"k", model.k}, {"n", vars_of(model)}};
  if (control) {
    j["m"] = exact_log(model.transition.cols() / model.transition.rows(), model.k);
    j["L"] = to_json(model.transition);
  } else {
    j["M"] = to_json(model.transition);
  }
  if (model.output) {
    j["p"] = exact_log(model.output->rows(), model.k);
    j["E"] = to_json(*model.output);
  }
  return dump(j);
}

std::string cmd_simulate(const Options& opt) {
  require_format(opt, {"json", "text"});
  const auto model = load(opt);
  SimulationTrace trace;
  if (model.square() && opt.controls.empty()) {
    const std::size_t horizon = opt.horizon ? opt.horizon : 10;
    trace.states = trajectory(model.transition, opt.x0, horizon);
    if (model.output) {
      for (auto x : trace.states) trace.outputs.push_back(model.output->image(x));
    }
  } else {
    const auto u = parse_index_list(opt.controls);
    const std::size_t horizon = opt.horizon ? opt.horizon : u.size();
    if (model.output) {
      trace = simulate_bcn(require_bcn(model), opt.x0, u, horizon);
    } else {
      const LogicalMatrix e(1, std::vector<Index>(model.transition.rows(), 1));
      trace = simulate_bcn(BcnModel(model.k, model.transition, e), opt.x0, u, horizon);
      trace.outputs.clear();
    }
  }
  if (opt.format == "text") {
    std::string out;
    for (std::size_t t = 0; t < trace.states.size(); ++t) {
      out += std::to_string(t) + " x=δ_" + std::to_string(model.transition.rows()) + "^" +
             std::to_string(trace.states[t]);
      if (!trace.outputs.empty()) {
        out += " y=δ_" + std::to_string(model.output->rows()) + "^" + std::to_string(trace.outputs[t]);
      }
      out += "\n";
    }
    return out;
  }
  Json j{{"states", trace.states}};
  if (!trace.outputs.empty()) j["outputs"] = trace.outputs;
  return dump(j);
}

std::string cmd_attractors(const Options& opt) {
  require_format(opt, {"json", "dot", "text"});
  const auto model = load(opt);
  const auto& m = require_bn(model);
  if (opt.format == "dot") return state_graph_dot(m);
  const auto report = attractors(m);
  if (opt.format == "text") {
    std::string out;
    for (const auto& a : report.attractors) {
      out += a.cycle.size() == 1 ? "fixed point" : "cycle";
      for (auto s : a.cycle) out += " " + std::to_string(s);
      out += " | basin";
      for (auto s : a.basin) out += " " + std::to_string(s);
      out += "\n";
    }
    return out;
  }
  return dump(to_json(report));
}

std::string cmd_canonical(const Options& opt) {
  require_format(opt, {"json", "text"});
  const auto model = load(opt);
  const auto c = canonical_form(require_bn(model));
  if (opt.format == "text") {
    std::string out = "T = " + format_delta(c.transform) + "\nM~ = " + format_delta(c.conjugated) + "\n";
    for (const auto& b : c.blocks) {
      out += "block " + std::to_string(b.cycle_length) + "+" + std::to_string(b.transient_count) + "\n";
    }
    return out;
  }
  return dump(to_json(c));
}

std::string cmd_regular_check(const Options& opt) {
  require_format(opt, {"json", "text"});
  const auto model = load(opt);
  const bool regular = regular_subspace_check(model.transition, model.k);
  if (opt.format == "text") return regular ? "regular\n" : "not regular\n";
  return dump(Json{{"regular", regular}});
}

std::string cmd_dual(const Options& opt) {
  const auto model = load(opt);
  const auto& m = require_bn(model);
  const unsigned n = vars_of(model);
  const Index cap = dual_cap(opt);
  if (opt.mode == "matrix") {
    require_format(opt, {"json", "dot", "text"});
    const auto star = dual_matrix(m, model.k, cap);
    if (opt.format == "dot") return dual_graph_dot(star, model.k, n);
    if (opt.format == "text") return "M* = " + format_delta(star) + "\n";
    return dump(to_json(star));
  }
  require_format(opt, {"json", "text"});
  if (opt.mode == "fixed-points") {
    const auto fp = dual_fixed_points(m, model.k, cap);
    if (opt.format == "text") return text_functions(fp);
    Json list = Json::array();
    for (const auto& v : fp) list.push_back(Json{{"digits", v.digits()}, {"id", sv_to_id(v).str()}});
    return dump(Json{{"components", weak_component_count(m)}, {"fixed_points", list}});
  }
  if (opt.mode == "cycles") {
    DualOptions d;
    d.cap = cap;
    d.structural_fallback = opt.structural;
    const auto report = dual_attractors(m, model.k, d);
    if (opt.format == "text") {
      std::string out = "fixed points:\n" + text_functions(report.fixed_points);
      for (const auto& c : report.cycles) {
        out += "cycle:";
        for (const auto& v : c) out += " " + format_digits(v);
        out += "\n";
      }
      return out;
    }
    return dump(to_json(report));
  }
  if (opt.mode == "orbit") {
    StructureVector seed;
    if (!opt.seed.empty() == !opt.id.empty()) {
      throw InvalidArgument("orbit mode needs exactly one of --id or --seed");
    }
    if (!opt.seed.empty()) {
      seed = parse_digits(opt.seed, model.k);
    } else {
      DualFunctionId id;
      try {
        id = DualFunctionId(opt.id);
      } catch (const std::exception&) {
        throw InvalidArgument("bad dual id '" + opt.id + "'");
      }
      seed = sv_from_id(id, model.k, n);
    }
    const auto orbit = dual_orbit(seed, m);
    if (opt.format == "text") {
      return "transient:\n" + text_functions(orbit.transient) + "cycle:\n" + text_functions(orbit.cycle);
    }
    return dump(to_json(orbit));
  }
  throw InvalidArgument("unknown dual mode '" + opt.mode + "'");
}

std::string cmd_realize_bn(const Options& opt) {
  require_format(opt, {"json", "text"});
  const auto model = load(opt);
  const auto& m = require_bn(model);
  auto seeds = parse_seeds(opt, model.k, vars_of(model));
  if (seeds.empty() && model.output) {
    const BcnModel view(model.k, m, *model.output);
    for (std::size_t j = 1; j <= view.outputs(); ++j) seeds.push_back(view.output_function(j));
  }
  if (seeds.empty()) {
    throw InvalidArgument("realize-bn needs --seed functions or output rules");
  }
  const auto real = bn_min_realization(seeds, m, realization_options(opt));
  if (opt.format == "text") {
    return text_functions(real.members) + "Mz = " + format_delta(real.generator) + "\nH = " +
           format_delta(real.dynamics) + "\n";
  }
  return dump(to_json(real));
}

std::string text_bcn(const BcnRealization& real) {
  std::string out = text_functions(real.members) + "G = " + format_delta(real.g) + "\n";
  for (std::size_t i = 0; i < real.h.size(); ++i) {
    out += "H" + std::to_string(i + 1) + " = " + format_delta(real.h[i]) + "\n";
  }
  return out + "F = " + format_delta(real.f) + "\n";
}

std::string cmd_realize_bcn(const Options& opt) {
  require_format(opt, {"json", "text"});
  const auto model = load(opt);
  const auto bcn = require_bcn(model);
  const auto extra = parse_seeds(opt, model.k, bcn.states());
  const auto real = bcn_min_realization(bcn, extra, realization_options(opt));
  if (opt.format == "text") return text_bcn(real);
  return dump(to_json(real));
}

std::string cmd_distributed(const Options& opt) {
  require_format(opt, {"json", "text"});
  const auto model = load(opt);
  const auto bcn = require_bcn(model);
  std::vector<Channel> channels;
  for (const auto& c : opt.channels) channels.push_back(parse_channel(c, bcn));
  if (channels.empty()) {
    throw InvalidArgument("distributed needs at least one --channel");
  }
  const auto reals = distributed_realization(bcn, channels, realization_options(opt));
  if (opt.format == "text") {
    std::string out;
    for (std::size_t i = 0; i < reals.size(); ++i) {
      out += "channel " + std::to_string(i + 1) + "\n" + text_bcn(reals[i]);
    }
    return out;
  }
  Json list = Json::array();
  for (const auto& r : reals) list.push_back(to_json(r));
  return dump(list);
}

void write(const Options& opt, const std::string& text) {
  if (opt.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(opt.out, std::ios::binary);
  if (!out) {
    throw InvalidArgument("cannot write '" + opt.out + "'");
  }
  out << text;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Logical network analysis via the semi-tensor product"};
  app.require_subcommand(1);
  Options opt;

  const auto common = [&](CLI::App* sub) {
    sub->add_option("input", opt.input, "Network file (.net text or .json matrices)");
    sub->add_option("--delta", opt.delta, "Inline matrix rows:cols:i1,i2,...");
    sub->add_option("--k", opt.k, "Radix of the logic (default 2, or the file's)")
        ->check(CLI::Range(2u, 255u));
    sub->add_option("--format", opt.format, "json, dot or text");
    sub->add_option("--out", opt.out, "Write to this file instead of stdout");
    sub->add_option("--threads", opt.threads, "Worker threads for the parallel kernels")
        ->check(CLI::NonNegativeNumber);
    sub->add_option("--cap-dual", opt.cap_dual, "Most dual functions to enumerate")
        ->check(CLI::PositiveNumber);
    sub->add_option("--cap-cis", opt.cap_cis, "Most members an invariant subspace may reach")
        ->check(CLI::PositiveNumber);
  };

  std::vector<std::pair<CLI::App*, std::string (*)(const Options&)>> commands;
  const auto add = [&](const char* name, const char* help, std::string (*fn)(const Options&)) {
    auto* sub = app.add_subcommand(name, help);
    common(sub);
    commands.emplace_back(sub, fn);
    return sub;
  };

  add("assr", "Algebraic state-space form of a network", cmd_assr);
  auto* sim = add("simulate", "Simulate from an initial state", cmd_simulate);
  sim->add_option("--x0", opt.x0, "Initial state index (1-based)")->check(CLI::PositiveNumber);
  sim->add_option("--horizon", opt.horizon, "Number of steps");
  sim->add_option("--controls", opt.controls, "Control indices per step, e.g. 1,2,1");
  add("attractors", "Fixed points, cycles and basins", cmd_attractors);
  add("canonical", "Block canonical form under a coordinate change", cmd_canonical);
  add("regular-check", "Regular-subspace test on a stacked function matrix", cmd_regular_check);
  auto* dual = add("dual", "Dynamics of logical functions", cmd_dual);
  dual->add_option("--mode", opt.mode, "matrix, fixed-points, cycles or orbit")
      ->check(CLI::IsMember({"matrix", "fixed-points", "cycles", "orbit"}));
  dual->add_option("--id", opt.id, "Dual id of the orbit seed");
  dual->add_option("--seed", opt.seed, "Digits of the orbit seed, e.g. 1010");
  dual->add_flag("--structural", opt.structural, "Report fixed points only when over the cap");
  auto* rbn = add("realize-bn", "Minimum realization of a network", cmd_realize_bn);
  rbn->add_option("--seed", opt.seeds, "Seed function digits (repeatable)");
  auto* rbcn = add("realize-bcn", "Minimum realization of a control network", cmd_realize_bcn);
  rbcn->add_option("--seed", opt.seeds, "Extra observable digits (repeatable)");
  auto* dist = add("distributed", "Per-channel realizations", cmd_distributed);
  dist->add_option("--channel", opt.channels,
                   "controls:outputs:frozen, 1-based indices, e.g. 1:2:0,1 (repeatable)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kBadInput;
  }

  try {
    set_threads(opt.threads);
    for (const auto& [sub, fn] : commands) {
      if (sub->parsed()) {
        write(opt, fn(opt));
      }
    }
    return kOk;
  } catch (const CapExceeded& e) {
    std::fprintf(stderr, "stpbn: cap exceeded: %s\n", e.what());
    return kCap;
  } catch (const InternalError& e) {
    std::fprintf(stderr, "stpbn: internal error: %s\n", e.what());
    return kInternal;
  } catch (const Error& e) {
    std::fprintf(stderr, "stpbn: %s\n", e.what());
    return kBadInput;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "stpbn: internal error: %s\n", e.what());
    return kInternal;
  }
}
