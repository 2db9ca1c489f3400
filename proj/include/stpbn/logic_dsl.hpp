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
#include <string>
#include <string_view>
#include <vector>

#include "stpbn/logical_matrix.hpp"
#include "stpbn/structure_vector.hpp"

namespace stpbn {

struct SourcePos {
  std::size_t line = 0;
  std::size_t column = 0;
};

enum class Op : std::uint8_t { Var, Const, Not, And, Or, Xor, Implies, Iff };

/// Expression tree of a logical update or output rule.
struct Expr {
  Op op = Op::Const;
  /// Var: position among the model inputs (controls first, then states).
  std::size_t var = 0;
  /// Const: numerator of the value, in [0, k-1].
  std::uint8_t value = 0;
  std::vector<Expr> args;
  SourcePos pos;

  static Expr variable(std::size_t input, SourcePos pos = {});
  static Expr constant(std::uint8_t value, SourcePos pos = {});
  static Expr unary(Op op, Expr arg, SourcePos pos = {});
  static Expr binary(Op op, Expr lhs, Expr rhs, SourcePos pos = {});

  /// Structural equality; source positions are ignored.
  friend bool operator==(const Expr& a, const Expr& b);
};

/// Parsed network: states x_1..x_n with one update rule each, optional
/// controls u_1..u_m and outputs y_1..y_p.
///
/// Expression inputs are numbered controls first, then states, matching the
/// product order u(t)x(t).
struct NetworkModel {
  unsigned k = 2;
  std::vector<std::string> vars;
  std::vector<std::string> controls;
  std::vector<Expr> updates;
  std::vector<std::string> output_names;
  std::vector<Expr> outputs;

  std::size_t n() const noexcept { return vars.size(); }
  std::size_t m() const noexcept { return controls.size(); }
  std::size_t p() const noexcept { return outputs.size(); }
  std::size_t inputs() const noexcept { return vars.size() + controls.size(); }
  const std::string& input_name(std::size_t input) const;
};

/// Parses the network text format:
///
///     k = 2
///     vars x1, x2
///     controls u1          # optional
///     x1' = x2
///     x2' = !(x1 | x2)
///     y1 = x1 & x2         # optional outputs
///
/// Operators, loosest to tightest: <->, -> (right-assoc), |, ^, &, !.
/// For k > 2 only !, &, | are allowed (complement, min, max). Throws
/// ParseError with the offending line and column.
NetworkModel parse_network(std::string_view text);

/// Parses a single expression over the given input names.
Expr parse_expr(std::string_view text, unsigned k, std::span<const std::string> inputs);

/// Fully parenthesized rendering that parse_expr reads back unchanged.
std::string print_expr(const Expr& e, std::span<const std::string> inputs);

/// Renders a model back to the text format.
std::string print_network(const NetworkModel& model);

std::uint8_t evaluate(const Expr& e, unsigned k, std::span<const std::uint8_t> inputs);

/// Truth table of `e` over `arity` consecutive inputs starting at `first`.
/// Position p holds the value at state δ_{k^arity}^{p+1}.
StructureVector truth_table(const Expr& e, unsigned k, std::size_t first, std::size_t arity);

/// Structure matrix M_f (k × k^inputs) of an update rule over all inputs.
LogicalMatrix expr_to_structure_matrix(const Expr& e, const NetworkModel& model);

/// Transition matrix: M (k^n × k^n) for a BN, L (k^n × k^(m+n)) for a BCN.
LogicalMatrix network_to_assr(const NetworkModel& model);

/// Output matrix E (k^p × k^n), the Khatri-Rao product of the output rules'
/// structure matrices. Throws InvalidArgument if the model has no outputs.
LogicalMatrix network_outputs(const NetworkModel& model);

}  // namespace stpbn
