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

#include "stpbn/logic_dsl.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <map>
#include <optional>
#include <set>
#include <sstream>

#include "stpbn/kernels.hpp"

namespace stpbn {

Expr Expr::variable(std::size_t input, SourcePos pos) {
  Expr e;
  e.op = Op::Var;
  e.var = input;
  e.pos = pos;
  return e;
}

Expr Expr::constant(std::uint8_t value, SourcePos pos) {
  Expr e;
  e.op = Op::Const;
  e.value = value;
  e.pos = pos;
  return e;
}

Expr Expr::unary(Op op, Expr arg, SourcePos pos) {
  Expr e;
  e.op = op;
  e.args.push_back(std::move(arg));
  e.pos = pos;
  return e;
}

Expr Expr::binary(Op op, Expr lhs, Expr rhs, SourcePos pos) {
  Expr e;
  e.op = op;
  e.args.push_back(std::move(lhs));
  e.args.push_back(std::move(rhs));
  e.pos = pos;
  return e;
}

bool operator==(const Expr& a, const Expr& b) {
  if (a.op != b.op) {
    return false;
  }
  if (a.op == Op::Var) {
    return a.var == b.var;
  }
  if (a.op == Op::Const) {
    return a.value == b.value;
  }
  return a.args == b.args;
}

const std::string& NetworkModel::input_name(std::size_t input) const {
  return input < controls.size() ? controls[input] : vars[input - controls.size()];
}

namespace {

enum class Tok {
  Ident,
  Number,
  Prime,
  Assign,
  Comma,
  Sep,
  Not,
  And,
  Or,
  Xor,
  Implies,
  Iff,
  LParen,
  RParen,
  End
};

struct Token {
  Tok kind;
  std::string text;
  SourcePos pos;
};

const char* describe(Tok t) {
  switch (t) {
    case Tok::Ident: return "identifier";
    case Tok::Number: return "number";
    case Tok::Prime: return "'''";
    case Tok::Assign: return "'='";
    case Tok::Comma: return "','";
    case Tok::Sep: return "end of statement";
    case Tok::Not: return "'!'";
    case Tok::And: return "'&'";
    case Tok::Or: return "'|'";
    case Tok::Xor: return "'^'";
    case Tok::Implies: return "'->'";
    case Tok::Iff: return "'<->'";
    case Tok::LParen: return "'('";
    case Tok::RParen: return "')'";
    case Tok::End: return "end of input";
  }
  return "token";
}

std::vector<Token> lex(std::string_view text) {
  std::vector<Token> out;
  std::size_t line = 1;
  std::size_t col = 1;
  std::size_t i = 0;
  auto push = [&](Tok kind, std::size_t len) {
    out.push_back({kind, std::string(text.substr(i, len)), {line, col}});
    i += len;
    col += len;
  };
  while (i < text.size()) {
    const char c = text[i];
    if (c == '#') {
      while (i < text.size() && text[i] != '\n') {
        ++i;
      }
      continue;
    }
    if (c == '\n') {
      push(Tok::Sep, 1);
      ++line;
      col = 1;
      continue;
    }
    if (c == ' ' || c == '\t' || c == '\r') {
      ++i;
      ++col;
      continue;
    }
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t len = 1;
      while (i + len < text.size() &&
             (std::isalnum(static_cast<unsigned char>(text[i + len])) || text[i + len] == '_')) {
        ++len;
      }
      push(Tok::Ident, len);
      continue;
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      std::size_t len = 1;
      while (i + len < text.size() && std::isdigit(static_cast<unsigned char>(text[i + len]))) {
        ++len;
      }
      push(Tok::Number, len);
      continue;
    }
    if (text.substr(i, 3) == "<->") {
      push(Tok::Iff, 3);
      continue;
    }
    if (text.substr(i, 2) == "->") {
      push(Tok::Implies, 2);
      continue;
    }
    switch (c) {
      case '\'': push(Tok::Prime, 1); continue;
      case '=': push(Tok::Assign, 1); continue;
      case ',': push(Tok::Comma, 1); continue;
      case ';': push(Tok::Sep, 1); continue;
      case '!': push(Tok::Not, 1); continue;
      case '&': push(Tok::And, 1); continue;
      case '|': push(Tok::Or, 1); continue;
      case '^': push(Tok::Xor, 1); continue;
      case '(': push(Tok::LParen, 1); continue;
      case ')': push(Tok::RParen, 1); continue;
      default:
        throw ParseError(std::string("unexpected character '") + c + "'", line, col);
    }
  }
  out.push_back({Tok::End, "", {line, col}});
  return out;
}

// Recursive-descent expression parser over a token range ending in Sep/End.
class ExprParser {
 public:
  ExprParser(std::span<const Token> toks, unsigned k, std::span<const std::string> inputs)
      : toks_(toks), k_(k), inputs_(inputs) {}

  Expr parse_full() {
    Expr e = parse_iff();
    if (peek().kind != Tok::Sep && peek().kind != Tok::End) {
      fail("unexpected " + std::string(describe(peek().kind)));
    }
    return e;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& take() { return toks_[pos_++]; }

  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError(msg, peek().pos.line, peek().pos.column);
  }

  void require_boolean(const Token& t) const {
    if (k_ != 2) {
      throw ParseError(std::string(describe(t.kind)) + " is only defined for k = 2",
                       t.pos.line, t.pos.column);
    }
  }

  Expr parse_iff() {
    Expr lhs = parse_implies();
    while (peek().kind == Tok::Iff) {
      const Token& op = take();
      require_boolean(op);
      lhs = Expr::binary(Op::Iff, std::move(lhs), parse_implies(), op.pos);
    }
    return lhs;
  }

  Expr parse_implies() {
    Expr lhs = parse_or();
    if (peek().kind == Tok::Implies) {
      const Token& op = take();
      require_boolean(op);
      return Expr::binary(Op::Implies, std::move(lhs), parse_implies(), op.pos);
    }
    return lhs;
  }

  Expr parse_or() {
    Expr lhs = parse_xor();
    while (peek().kind == Tok::Or) {
      const Token& op = take();
      lhs = Expr::binary(Op::Or, std::move(lhs), parse_xor(), op.pos);
    }
    return lhs;
  }

  Expr parse_xor() {
    Expr lhs = parse_and();
    while (peek().kind == Tok::Xor) {
      const Token& op = take();
      require_boolean(op);
      lhs = Expr::binary(Op::Xor, std::move(lhs), parse_and(), op.pos);
    }
    return lhs;
  }

  Expr parse_and() {
    Expr lhs = parse_unary();
    while (peek().kind == Tok::And) {
      const Token& op = take();
      lhs = Expr::binary(Op::And, std::move(lhs), parse_unary(), op.pos);
    }
    return lhs;
  }

  Expr parse_unary() {
    if (peek().kind == Tok::Not) {
      const Token& op = take();
      return Expr::unary(Op::Not, parse_unary(), op.pos);
    }
    return parse_primary();
  }

  Expr parse_primary() {
    const Token& t = peek();
    switch (t.kind) {
      case Tok::Ident: {
        take();
        for (std::size_t i = 0; i < inputs_.size(); ++i) {
          if (inputs_[i] == t.text) {
            return Expr::variable(i, t.pos);
          }
        }
        throw ParseError("unknown variable '" + t.text + "'", t.pos.line, t.pos.column);
      }
      case Tok::Number: {
        take();
        if (t.text.size() > 3 || std::stoul(t.text) >= k_) {
          throw ParseError("constant " + t.text + " outside [0, " + std::to_string(k_ - 1) + "]",
                           t.pos.line, t.pos.column);
        }
        return Expr::constant(static_cast<std::uint8_t>(std::stoul(t.text)), t.pos);
      }
      case Tok::LParen: {
        take();
        Expr inner = parse_iff();
        if (peek().kind != Tok::RParen) {
          fail("expected ')' but found " + std::string(describe(peek().kind)));
        }
        take();
        return inner;
      }
      default:
        fail("expected an expression but found " + std::string(describe(t.kind)));
    }
  }

  std::span<const Token> toks_;
  std::size_t pos_ = 0;
  unsigned k_;
  std::span<const std::string> inputs_;
};

using Statement = std::span<const Token>;

std::vector<Statement> split_statements(const std::vector<Token>& toks) {
  std::vector<Statement> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i < toks.size(); ++i) {
    if (toks[i].kind == Tok::Sep || toks[i].kind == Tok::End) {
      if (i > start) {
        // Keep the terminator so parsers can see where the statement ends.
        out.emplace_back(toks.data() + start, i - start + 1);
      }
      start = i + 1;
    }
  }
  return out;
}

[[noreturn]] void fail_at(const Token& t, const std::string& msg) {
  throw ParseError(msg, t.pos.line, t.pos.column);
}

std::vector<std::string> parse_name_list(Statement st) {
  std::vector<std::string> names;
  std::size_t i = 1;
  while (true) {
    if (st[i].kind != Tok::Ident) {
      fail_at(st[i], "expected a name but found " + std::string(describe(st[i].kind)));
    }
    names.push_back(st[i].text);
    ++i;
    if (st[i].kind == Tok::Comma) {
      ++i;
      continue;
    }
    if (st[i].kind != Tok::Sep && st[i].kind != Tok::End) {
      fail_at(st[i], "expected ',' or end of statement");
    }
    return names;
  }
}

bool is_keyword(const std::string& s) { return s == "k" || s == "vars" || s == "controls"; }

bool references_any(const Expr& e, std::size_t below) {
  if (e.op == Op::Var) {
    return e.var < below;
  }
  for (const auto& a : e.args) {
    if (references_any(a, below)) {
      return true;
    }
  }
  return false;
}

const Expr* first_reference_below(const Expr& e, std::size_t below) {
  if (e.op == Op::Var) {
    return e.var < below ? &e : nullptr;
  }
  for (const auto& a : e.args) {
    if (const auto* hit = first_reference_below(a, below)) {
      return hit;
    }
  }
  return nullptr;
}

std::size_t max_input(const Expr& e) {
  std::size_t best = 0;
  if (e.op == Op::Var) {
    return e.var + 1;
  }
  for (const auto& a : e.args) {
    best = std::max(best, max_input(a));
  }
  return best;
}

}  // namespace

NetworkModel parse_network(std::string_view text) {
  const auto toks = lex(text);
  const auto statements = split_statements(toks);

  NetworkModel model;
  std::optional<SourcePos> k_pos;
  std::optional<SourcePos> vars_pos;
  std::optional<SourcePos> controls_pos;
  std::vector<Statement> rules;

  // Declarations first, so rules may appear anywhere in the file.
  for (const auto& st : statements) {
    const Token& head = st[0];
    if (head.kind == Tok::Ident && head.text == "k" && st[1].kind == Tok::Assign) {
      if (k_pos) {
        fail_at(head, "radix declared twice");
      }
      if (st.size() < 4 || st[2].kind != Tok::Number ||
          (st[3].kind != Tok::Sep && st[3].kind != Tok::End)) {
        fail_at(st[2], "expected an integer radix");
      }
      const auto k = st[2].text.size() > 3 ? 1000ul : std::stoul(st[2].text);
      if (k < 2 || k > 255) {
        fail_at(st[2], "radix must lie in [2, 255]");
      }
      model.k = static_cast<unsigned>(k);
      k_pos = head.pos;
    } else if (head.kind == Tok::Ident && head.text == "vars") {
      if (vars_pos) {
        fail_at(head, "state variables declared twice");
      }
      model.vars = parse_name_list(st);
      vars_pos = head.pos;
    } else if (head.kind == Tok::Ident && head.text == "controls") {
      if (controls_pos) {
        fail_at(head, "controls declared twice");
      }
      model.controls = parse_name_list(st);
      controls_pos = head.pos;
    } else {
      rules.push_back(st);
    }
  }

  if (!vars_pos) {
    throw ParseError("missing 'vars' declaration", 1, 1);
  }
  std::vector<std::string> inputs = model.controls;
  inputs.insert(inputs.end(), model.vars.begin(), model.vars.end());
  {
    std::set<std::string> seen;
    for (const auto& name : inputs) {
      if (is_keyword(name)) {
        throw ParseError("'" + name + "' is reserved", vars_pos->line, vars_pos->column);
      }
      if (!seen.insert(name).second) {
        throw ParseError("duplicate variable '" + name + "'", vars_pos->line, vars_pos->column);
      }
    }
  }

  const std::size_t m = model.controls.size();
  std::vector<std::optional<Expr>> updates(model.vars.size());
  std::set<std::string> output_seen;
  for (const auto& st : rules) {
    const Token& head = st[0];
    if (head.kind != Tok::Ident) {
      fail_at(head, "expected a rule or declaration");
    }
    const bool update = st[1].kind == Tok::Prime;
    const std::size_t eq = update ? 2 : 1;
    if (st[eq].kind != Tok::Assign) {
      fail_at(st[eq], "expected '='");
    }
    ExprParser parser(st.subspan(eq + 1), model.k, inputs);
    Expr e = parser.parse_full();
    if (update) {
      auto it = std::find(model.vars.begin(), model.vars.end(), head.text);
      if (it == model.vars.end()) {
        const bool is_control =
            std::find(model.controls.begin(), model.controls.end(), head.text) != model.controls.end();
        fail_at(head, is_control ? "control '" + head.text + "' cannot have an update rule"
                                 : "unknown variable '" + head.text + "'");
      }
      auto& slot = updates[static_cast<std::size_t>(it - model.vars.begin())];
      if (slot) {
        fail_at(head, "second update rule for '" + head.text + "'");
      }
      slot = std::move(e);
    } else {
      if (std::find(inputs.begin(), inputs.end(), head.text) != inputs.end()) {
        fail_at(head, "output name '" + head.text + "' clashes with a variable (updates need ')");
      }
      if (!output_seen.insert(head.text).second) {
        fail_at(head, "duplicate output '" + head.text + "'");
      }
      if (const Expr* bad = first_reference_below(e, m)) {
        fail_at(Token{Tok::Ident, "", bad->pos}, "outputs may only read state variables");
      }
      model.output_names.push_back(head.text);
      model.outputs.push_back(std::move(e));
    }
  }

  for (std::size_t i = 0; i < updates.size(); ++i) {
    if (!updates[i]) {
      throw ParseError("no update rule for '" + model.vars[i] + "'", vars_pos->line,
                       vars_pos->column);
    }
    model.updates.push_back(std::move(*updates[i]));
  }
  return model;
}

Expr parse_expr(std::string_view text, unsigned k, std::span<const std::string> inputs) {
  const auto toks = lex(text);
  for (const auto& t : toks) {
    if (t.kind == Tok::Sep) {
      fail_at(t, "unexpected end of statement");
    }
  }
  ExprParser parser(toks, k, inputs);
  return parser.parse_full();
}

std::string print_expr(const Expr& e, std::span<const std::string> inputs) {
  switch (e.op) {
    case Op::Var: return inputs[e.var];
    case Op::Const: return std::to_string(e.value);
    case Op::Not: return "!" + print_expr(e.args[0], inputs);
    default: break;
  }
  const char* sym = "";
  switch (e.op) {
    case Op::And: sym = " & "; break;
    case Op::Or: sym = " | "; break;
    case Op::Xor: sym = " ^ "; break;
    case Op::Implies: sym = " -> "; break;
    case Op::Iff: sym = " <-> "; break;
    default: break;
  }
  return "(" + print_expr(e.args[0], inputs) + sym + print_expr(e.args[1], inputs) + ")";
}

std::string print_network(const NetworkModel& model) {
  std::vector<std::string> inputs = model.controls;
  inputs.insert(inputs.end(), model.vars.begin(), model.vars.end());
  auto join = [](const std::vector<std::string>& names) {
    std::string out;
    for (std::size_t i = 0; i < names.size(); ++i) {
      out += (i ? ", " : "") + names[i];
    }
    return out;
  };
  std::ostringstream os;
  os << "k = " << model.k << "\n";
  os << "vars " << join(model.vars) << "\n";
  if (!model.controls.empty()) {
    os << "controls " << join(model.controls) << "\n";
  }
  for (std::size_t i = 0; i < model.vars.size(); ++i) {
    os << model.vars[i] << "' = " << print_expr(model.updates[i], inputs) << "\n";
  }
  for (std::size_t j = 0; j < model.outputs.size(); ++j) {
    os << model.output_names[j] << " = " << print_expr(model.outputs[j], inputs) << "\n";
  }
  return os.str();
}

std::uint8_t evaluate(const Expr& e, unsigned k, std::span<const std::uint8_t> inputs) {
  switch (e.op) {
    case Op::Var: return inputs[e.var];
    case Op::Const: return e.value;
    case Op::Not: return static_cast<std::uint8_t>(k - 1 - evaluate(e.args[0], k, inputs));
    default: break;
  }
  const auto a = evaluate(e.args[0], k, inputs);
  const auto b = evaluate(e.args[1], k, inputs);
  switch (e.op) {
    case Op::And: return std::min(a, b);
    case Op::Or: return std::max(a, b);
    case Op::Xor: return static_cast<std::uint8_t>(a != b);
    case Op::Implies: return static_cast<std::uint8_t>(!a || b);
    case Op::Iff: return static_cast<std::uint8_t>(a == b);
    default: break;
  }
  throw InternalError("unhandled operator");
}

StructureVector truth_table(const Expr& e, unsigned k, std::size_t first, std::size_t arity) {
  if (max_input(e) > first + arity || references_any(e, first)) {
    throw InvalidArgument("expression reads inputs outside the tabulated range");
  }
  const std::size_t width = first + arity;
  if (width > 64) {
    throw CapExceeded("too many inputs to tabulate");
  }
  std::vector<std::uint8_t> digits(checked_pow(k, arity));
  kernels::tabulate(digits, [&](Index p) {
    std::array<std::uint8_t, 64> values{};
    Index rest = p;
    for (std::size_t i = width; i-- > first;) {
      values[i] = static_cast<std::uint8_t>(k - 1 - rest % k);
      rest /= k;
    }
    return evaluate(e, k, std::span<const std::uint8_t>(values.data(), width));
  });
  return StructureVector::from_digits(k, digits);
}

LogicalMatrix expr_to_structure_matrix(const Expr& e, const NetworkModel& model) {
  return truth_table(e, model.k, 0, model.inputs()).structure_matrix();
}

LogicalMatrix network_to_assr(const NetworkModel& model) {
  if (model.updates.empty()) {
    throw InvalidArgument("network has no state variables");
  }
  LogicalMatrix out = expr_to_structure_matrix(model.updates[0], model);
  for (std::size_t i = 1; i < model.updates.size(); ++i) {
    out = khatri_rao(out, expr_to_structure_matrix(model.updates[i], model));
  }
  return out;
}

LogicalMatrix network_outputs(const NetworkModel& model) {
  if (model.outputs.empty()) {
    throw InvalidArgument("network declares no outputs");
  }
  const auto compile = [&](const Expr& e) {
    return truth_table(e, model.k, model.m(), model.n()).structure_matrix();
  };
  LogicalMatrix out = compile(model.outputs[0]);
  for (std::size_t j = 1; j < model.outputs.size(); ++j) {
    out = khatri_rao(out, compile(model.outputs[j]));
  }
  return out;
}

}  // namespace stpbn
