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

#include "stpbn/io.hpp"

#include <charconv>
#include <sstream>

namespace stpbn {

namespace {

Json digits_json(const StructureVector& v) {
  Json out = Json::array();
  for (std::size_t j = 0; j < v.size(); ++j) {
    out.push_back(v[j]);
  }
  return out;
}

Json function_json(const StructureVector& v) {
  return Json{{"digits", digits_json(v)}, {"id", sv_to_id(v).str()}};
}

Json functions_json(std::span<const StructureVector> vs) {
  Json out = Json::array();
  for (const auto& v : vs) {
    out.push_back(function_json(v));
  }
  return out;
}

Index parse_index(std::string_view text, std::string_view what) {
  Index value = 0;
  const auto* first = text.data();
  const auto* last = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(first, last, value);
  if (ec != std::errc() || ptr != last || text.empty()) {
    throw InvalidArgument("bad " + std::string(what) + " '" + std::string(text) + "'");
  }
  return value;
}

}  // namespace

Json to_json(const LogicalMatrix& m) {
  return Json{{"rows", m.rows()}, {"cols", m.cols()},
              {"delta", std::vector<Index>(m.delta().begin(), m.delta().end())}};
}

LogicalMatrix matrix_from_json(const Json& j) {
  try {
    const auto rows = j.at("rows").get<Index>();
    auto delta = j.at("delta").get<std::vector<Index>>();
    if (j.contains("cols") && j.at("cols").get<Index>() != delta.size()) {
      throw DimensionError("\"cols\" does not match the length of \"delta\"");
    }
    return LogicalMatrix(rows, std::move(delta));
  } catch (const Json::exception& e) {
    throw InvalidArgument(std::string("malformed matrix JSON: ") + e.what());
  }
}

Json to_json(const StructureVector& v) {
  return Json{{"k", v.radix()}, {"n", v.vars()}, {"digits", digits_json(v)}};
}

StructureVector vector_from_json(const Json& j) {
  try {
    const auto k = j.at("k").get<unsigned>();
    const auto digits = j.at("digits").get<std::vector<std::uint8_t>>();
    auto v = StructureVector::from_digits(k, digits);
    if (j.contains("n") && j.at("n").get<unsigned>() != v.vars()) {
      throw DimensionError("\"n\" does not match the number of digits");
    }
    return v;
  } catch (const Json::exception& e) {
    throw InvalidArgument(std::string("malformed structure vector JSON: ") + e.what());
  }
}

Json to_json(const AttractorReport& r) {
  Json attractors = Json::array();
  for (const auto& a : r.attractors) {
    attractors.push_back(Json{{"length", a.cycle.size()}, {"cycle", a.cycle}, {"basin", a.basin}});
  }
  return Json{{"attractors", attractors},
              {"fixed_points", r.fixed_point_count()},
              {"distance", r.distance}};
}

Json to_json(const CanonicalForm& c) {
  Json blocks = Json::array();
  for (const auto& b : c.blocks) {
    blocks.push_back(Json{{"cycle_length", b.cycle_length},
                          {"transient_count", b.transient_count},
                          {"offset", b.offset},
                          {"size", b.size()}});
  }
  return Json{{"T", to_json(c.transform)}, {"conjugated", to_json(c.conjugated)},
              {"blocks", blocks}};
}

Json to_json(const DualOrbit& o) {
  return Json{{"seed", function_json(o.seed)},
              {"transient", functions_json(o.transient)},
              {"cycle", functions_json(o.cycle)}};
}

Json to_json(const DualAttractorReport& r) {
  Json cycles = Json::array();
  for (const auto& c : r.cycles) {
    cycles.push_back(functions_json(c));
  }
  Json out{{"enumerated", r.enumerated},
           {"fixed_points", functions_json(r.fixed_points)},
           {"cycles", cycles}};
  if (r.enumerated) {
    out["basins"] = r.basins;
  }
  return out;
}

Json to_json(const BnRealization& r) {
  return Json{{"members", functions_json(r.members)},
              {"Mz", to_json(r.generator)},
              {"H", to_json(r.dynamics)}};
}

Json to_json(const CisResult& r) {
  return Json{{"members", functions_json(r.members)}, {"iterations", r.iterations}};
}

Json to_json(const BcnRealization& r) {
  Json h = Json::array();
  for (const auto& hi : r.h) {
    h.push_back(to_json(hi));
  }
  return Json{{"members", functions_json(r.members)},
              {"output_members", r.output_members},
              {"G", to_json(r.g)},
              {"H", h},
              {"F", to_json(r.f)}};
}

std::string format_delta(const LogicalMatrix& m) {
  std::ostringstream os;
  os << "δ_" << m.rows() << "[";
  for (std::size_t j = 0; j < m.cols(); ++j) {
    os << (j ? "," : "") << m.delta()[j];
  }
  os << "]";
  return os.str();
}

std::string format_digits(const StructureVector& v) {
  std::string out = "(";
  for (std::size_t j = 0; j < v.size(); ++j) {
    if (j) {
      out += ',';
    }
    out += std::to_string(v[j]);
  }
  return out + ")";
}

LogicalMatrix parse_delta_string(std::string_view text) {
  const auto c1 = text.find(':');
  const auto c2 = c1 == std::string_view::npos ? c1 : text.find(':', c1 + 1);
  if (c2 == std::string_view::npos) {
    throw InvalidArgument("inline matrix must look like rows:cols:i1,i2,...");
  }
  const Index rows = parse_index(text.substr(0, c1), "row count");
  const Index cols = parse_index(text.substr(c1 + 1, c2 - c1 - 1), "column count");
  std::vector<Index> delta;
  auto rest = text.substr(c2 + 1);
  while (!rest.empty()) {
    const auto comma = rest.find(',');
    delta.push_back(parse_index(rest.substr(0, comma), "column index"));
    if (comma == std::string_view::npos) {
      break;
    }
    rest.remove_prefix(comma + 1);
  }
  if (delta.size() != cols) {
    throw InvalidArgument("inline matrix declares " + std::to_string(cols) + " columns but lists " +
                          std::to_string(delta.size()));
  }
  return LogicalMatrix(rows, std::move(delta));
}

StructureVector parse_digits(std::string_view text, unsigned k) {
  std::vector<std::uint8_t> digits;
  for (char c : text) {
    if (c == ',' || c == ' ' || c == '(' || c == ')' || c == '[' || c == ']') {
      continue;
    }
    if (c < '0' || c > '9' || static_cast<unsigned>(c - '0') >= k) {
      throw InvalidArgument("bad digit '" + std::string(1, c) + "' for radix " +
                            std::to_string(k));
    }
    digits.push_back(static_cast<std::uint8_t>(c - '0'));
  }
  return StructureVector::from_digits(k, digits);
}

std::string state_graph_dot(const LogicalMatrix& m) {
  if (!m.square()) {
    throw DimensionError("state graph needs a square transition matrix");
  }
  std::ostringstream os;
  os << "digraph states {\n";
  for (Index j = 1; j <= m.cols(); ++j) {
    os << "  s" << j << " [label=\"δ_" << m.cols() << "^" << j << "\"];\n";
  }
  for (Index j = 1; j <= m.cols(); ++j) {
    os << "  s" << j << " -> s" << m.image(j) << ";\n";
  }
  os << "}\n";
  return os.str();
}

std::string dual_graph_dot(const LogicalMatrix& dual, unsigned k, unsigned n) {
  if (!dual.square()) {
    throw DimensionError("dual graph needs a square transition matrix");
  }
  std::ostringstream os;
  os << "digraph dual {\n";
  for (Index i = 1; i <= dual.cols(); ++i) {
    os << "  z" << i << " [label=\"" << format_digits(sv_from_id64(i, k, n)) << "\"];\n";
  }
  for (Index i = 1; i <= dual.cols(); ++i) {
    os << "  z" << i << " -> z" << dual.image(i) << ";\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace stpbn
