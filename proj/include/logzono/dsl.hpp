#pragma once

// Textual format for Boolean dynamical systems x(k+1) = f(x(k), u(k)).
//
//   # comment
//   state p1, c1;
//   input up1, uc1;
//   p1' = up1 & !p1 & !c1;
//   c1' = !p1' & (uc1 | (!p1 & p1'));
//   init p1 = 1;
//   init c1 = {0,1};
//   in up1 = {0,1};
//   in uc1 @ 3 = 0;       # override for step 3 only
//   horizon 10;
//
// Precedence, tightest first: `!`, then `&`/`nand`, then `^`/`xnor`, then
// `|`/`nor`; binary operators associate to the left. A primed name refers to
// the next-step value of a state variable. Names must be declared before use.
// The complete grammar is in docs/grammar.ebnf.

#include <algorithm>
#include <cctype>
#include <cstddef>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "logzono/bitvec.hpp"
#include "logzono/errors.hpp"
#include "logzono/zonotope.hpp"

namespace logzono::dsl {

enum class ParseErrorKind { Syntax, UnknownIdentifier, DuplicateRule, CyclicReference, Redeclaration, MissingRule, MissingDomain };

inline std::string_view to_string(ParseErrorKind k) {
  switch (k) {
    case ParseErrorKind::Syntax: return "syntax error";
    case ParseErrorKind::UnknownIdentifier: return "unknown identifier";
    case ParseErrorKind::DuplicateRule: return "duplicate rule";
    case ParseErrorKind::CyclicReference: return "cyclic next-step reference";
    case ParseErrorKind::Redeclaration: return "redeclaration";
    case ParseErrorKind::MissingRule: return "missing rule";
    case ParseErrorKind::MissingDomain: return "missing domain";
  }
  return "error";
}

class ParseError : public std::runtime_error {
 public:
  ParseError(ParseErrorKind kind, std::size_t line, std::size_t column, const std::string& message)
      : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " +
                           std::string(to_string(kind)) + ": " + message),
        kind_(kind),
        line_(line),
        column_(column) {}

  ParseErrorKind kind() const noexcept { return kind_; }
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  ParseErrorKind kind_;
  std::size_t line_;
  std::size_t column_;
};

/// A variable without a value in the evaluation environment.
class EvalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class NodeKind { Var, Const, Not, Xor, And, Or, Nand, Nor, Xnor };
enum class Scope { Unresolved, State, Input };

struct VarRef {
  std::string name;
  bool next = false;
  Scope scope = Scope::Unresolved;
  std::size_t index = 0;

  std::string display() const { return next ? name + "'" : name; }
  friend bool operator==(const VarRef&, const VarRef&) = default;
};

class Expr;
using ExprPtr = std::shared_ptr<const Expr>;

class Expr {
 public:
  static ExprPtr var(VarRef ref) {
    auto e = std::shared_ptr<Expr>(new Expr(NodeKind::Var));
    e->var_ = std::move(ref);
    return e;
  }
  static ExprPtr constant(bool value) {
    auto e = std::shared_ptr<Expr>(new Expr(NodeKind::Const));
    e->value_ = value;
    return e;
  }
  static ExprPtr negate(ExprPtr operand) {
    auto e = std::shared_ptr<Expr>(new Expr(NodeKind::Not));
    e->lhs_ = std::move(operand);
    return e;
  }
  static ExprPtr binary(NodeKind kind, ExprPtr lhs, ExprPtr rhs) {
    if (kind == NodeKind::Var || kind == NodeKind::Const || kind == NodeKind::Not) {
      throw std::invalid_argument("Expr::binary needs a binary operator kind");
    }
    auto e = std::shared_ptr<Expr>(new Expr(kind));
    e->lhs_ = std::move(lhs);
    e->rhs_ = std::move(rhs);
    return e;
  }

  NodeKind kind() const noexcept { return kind_; }
  const VarRef& var() const noexcept { return var_; }
  bool value() const noexcept { return value_; }
  const ExprPtr& lhs() const noexcept { return lhs_; }
  const ExprPtr& rhs() const noexcept { return rhs_; }

  std::size_t depth() const noexcept {
    switch (kind_) {
      case NodeKind::Var:
      case NodeKind::Const: return 0;
      case NodeKind::Not: return 1 + lhs_->depth();
      default: return 1 + std::max(lhs_->depth(), rhs_->depth());
    }
  }

  friend bool operator==(const Expr& a, const Expr& b) {
    if (a.kind_ != b.kind_) return false;
    switch (a.kind_) {
      case NodeKind::Var: return a.var_ == b.var_;
      case NodeKind::Const: return a.value_ == b.value_;
      case NodeKind::Not: return *a.lhs_ == *b.lhs_;
      default: return *a.lhs_ == *b.lhs_ && *a.rhs_ == *b.rhs_;
    }
  }

 private:
  explicit Expr(NodeKind kind) : kind_(kind) {}

  NodeKind kind_;
  VarRef var_;
  bool value_ = false;
  ExprPtr lhs_;
  ExprPtr rhs_;
};

namespace detail {

inline int precedence(NodeKind k) {
  switch (k) {
    case NodeKind::Or:
    case NodeKind::Nor: return 1;
    case NodeKind::Xor:
    case NodeKind::Xnor: return 2;
    case NodeKind::And:
    case NodeKind::Nand: return 3;
    case NodeKind::Not: return 4;
    default: return 5;
  }
}

inline std::string_view operator_text(NodeKind k) {
  switch (k) {
    case NodeKind::Xor: return " ^ ";
    case NodeKind::And: return " & ";
    case NodeKind::Or: return " | ";
    case NodeKind::Nand: return " nand ";
    case NodeKind::Nor: return " nor ";
    case NodeKind::Xnor: return " xnor ";
    default: return " ? ";
  }
}

inline void print_expr(const Expr& e, std::string& out) {
  auto child = [&out](const Expr& c, bool parens) {
    if (parens) out += '(';
    print_expr(c, out);
    if (parens) out += ')';
  };
  switch (e.kind()) {
    case NodeKind::Var: out += e.var().display(); return;
    case NodeKind::Const: out += e.value() ? '1' : '0'; return;
    case NodeKind::Not:
      out += '!';
      child(*e.lhs(), precedence(e.lhs()->kind()) < precedence(NodeKind::Not));
      return;
    default: {
      const int p = precedence(e.kind());
      child(*e.lhs(), precedence(e.lhs()->kind()) < p);
      out += operator_text(e.kind());
      child(*e.rhs(), precedence(e.rhs()->kind()) <= p);
      return;
    }
  }
}

}  // namespace detail

/// Prints with the minimum parentheses that re-parse to the same tree.
inline std::string to_string(const Expr& e) {
  std::string out;
  detail::print_expr(e, out);
  return out;
}

/// Per-variable domain: {0}, {1} or {0,1}.
enum class Domain : std::uint8_t { Zero = 1, One = 2, Both = 3 };

inline bool domain_has(Domain d, bool bit) {
  return (static_cast<std::uint8_t>(d) & (bit ? 2U : 1U)) != 0;
}

inline std::vector<bool> domain_values(Domain d) {
  std::vector<bool> out;
  if (domain_has(d, false)) out.push_back(false);
  if (domain_has(d, true)) out.push_back(true);
  return out;
}

inline std::string to_string(Domain d) {
  switch (d) {
    case Domain::Zero: return "0";
    case Domain::One: return "1";
    case Domain::Both: return "{0,1}";
  }
  return "?";
}

struct UpdateRule {
  std::size_t target = 0;
  ExprPtr expr;
  std::size_t line = 0;
  std::size_t column = 0;
};

struct InputOverride {
  std::size_t step = 0;
  std::size_t input = 0;
  Domain domain = Domain::Both;
  friend bool operator==(const InputOverride&, const InputOverride&) = default;
};

struct SystemSpec {
  std::vector<std::string> state_vars;
  std::vector<std::string> input_vars;
  /// Declaration order.
  std::vector<UpdateRule> rules;
  /// Indices into `rules`; a rule comes after every rule whose next-step
  /// value it reads. Filled by finalize().
  std::vector<std::size_t> eval_order;
  /// Per-variable initial domains; ignored when `init_points` is non-empty.
  std::vector<Domain> init_domains;
  /// Joint initial states, one bit per state variable in declaration order.
  std::vector<BitVec> init_points;
  std::vector<Domain> input_domains;
  std::vector<InputOverride> input_overrides;
  std::optional<std::size_t> horizon;

  std::size_t num_states() const noexcept { return state_vars.size(); }
  std::size_t num_inputs() const noexcept { return input_vars.size(); }

  Domain input_domain(std::size_t step, std::size_t input) const {
    for (const InputOverride& o : input_overrides) {
      if (o.step == step && o.input == input) return o.domain;
    }
    return input_domains.at(input);
  }

  /// The rule updating state variable `var`.
  const UpdateRule& rule_for(std::size_t var) const {
    for (const UpdateRule& r : rules) {
      if (r.target == var) return r;
    }
    throw std::out_of_range("no rule for state variable " + std::to_string(var));
  }

  /// Enumerates the initial set as joint state vectors.
  std::vector<BitVec> initial_states() const {
    if (!init_points.empty()) {
      std::vector<BitVec> pts = init_points;
      logzono::detail::sort_unique(pts);
      return pts;
    }
    std::vector<BitVec> pts{BitVec(num_states())};
    for (std::size_t i = 0; i < num_states(); ++i) {
      std::vector<BitVec> next;
      for (const BitVec& p : pts) {
        for (bool b : domain_values(init_domains[i])) {
          BitVec q = p;
          q.set(i, b);
          next.push_back(std::move(q));
        }
      }
      pts = std::move(next);
    }
    logzono::detail::sort_unique(pts);
    return pts;
  }

  friend bool operator==(const SystemSpec& a, const SystemSpec& b) {
    if (a.state_vars != b.state_vars || a.input_vars != b.input_vars || a.rules.size() != b.rules.size() ||
        a.init_domains != b.init_domains || a.init_points != b.init_points || a.input_domains != b.input_domains ||
        a.input_overrides != b.input_overrides || a.horizon != b.horizon) {
      return false;
    }
    for (std::size_t i = 0; i < a.rules.size(); ++i) {
      if (a.rules[i].target != b.rules[i].target || !(*a.rules[i].expr == *b.rules[i].expr)) return false;
    }
    return true;
  }
};

namespace detail {

inline void collect_next_refs(const Expr& e, std::vector<std::size_t>& out) {
  switch (e.kind()) {
    case NodeKind::Var:
      if (e.var().next && e.var().scope == Scope::State) out.push_back(e.var().index);
      return;
    case NodeKind::Const: return;
    case NodeKind::Not: collect_next_refs(*e.lhs(), out); return;
    default:
      collect_next_refs(*e.lhs(), out);
      collect_next_refs(*e.rhs(), out);
  }
}

}  // namespace detail

/// Checks completeness and computes `eval_order` (stable in declaration
/// order). Throws ParseError on missing rules/domains or cyclic references.
inline void finalize(SystemSpec& sys) {
  const std::size_t n = sys.num_states();
  std::vector<std::ptrdiff_t> rule_of(n, -1);
  for (std::size_t r = 0; r < sys.rules.size(); ++r) {
    const UpdateRule& rule = sys.rules[r];
    if (rule.target >= n) throw std::out_of_range("rule target out of range");
    if (rule_of[rule.target] >= 0) {
      throw ParseError(ParseErrorKind::DuplicateRule, rule.line, rule.column,
                       "second rule for " + sys.state_vars[rule.target] + "'");
    }
    rule_of[rule.target] = static_cast<std::ptrdiff_t>(r);
  }
  for (std::size_t v = 0; v < n; ++v) {
    if (rule_of[v] < 0) throw ParseError(ParseErrorKind::MissingRule, 0, 0, "no rule for " + sys.state_vars[v] + "'");
  }
  if (sys.init_points.empty()) {
    if (sys.init_domains.size() != n) {
      throw ParseError(ParseErrorKind::MissingDomain, 0, 0, "every state variable needs an init domain");
    }
  } else {
    for (const BitVec& p : sys.init_points) {
      if (p.size() != n) {
        throw ParseError(ParseErrorKind::Syntax, 0, 0,
                         "initial point " + p.to_string() + " does not have " + std::to_string(n) + " bits");
      }
    }
  }
  if (sys.input_domains.size() != sys.num_inputs()) {
    throw ParseError(ParseErrorKind::MissingDomain, 0, 0, "every input variable needs a domain");
  }

  std::vector<std::vector<std::size_t>> deps(sys.rules.size());
  for (std::size_t r = 0; r < sys.rules.size(); ++r) {
    std::vector<std::size_t> vars;
    detail::collect_next_refs(*sys.rules[r].expr, vars);
    for (std::size_t v : vars) deps[r].push_back(static_cast<std::size_t>(rule_of[v]));
  }
  // Repeatedly emit the first not-yet-emitted rule whose dependencies are done.
  std::vector<bool> done(sys.rules.size(), false);
  sys.eval_order.clear();
  while (sys.eval_order.size() < sys.rules.size()) {
    bool progressed = false;
    for (std::size_t r = 0; r < sys.rules.size(); ++r) {
      if (done[r]) continue;
      const bool ready = std::all_of(deps[r].begin(), deps[r].end(), [&](std::size_t d) { return done[d]; });
      if (ready) {
        done[r] = true;
        sys.eval_order.push_back(r);
        progressed = true;
        break;
      }
    }
    if (!progressed) {
      for (std::size_t r = 0; r < sys.rules.size(); ++r) {
        if (!done[r]) {
          throw ParseError(ParseErrorKind::CyclicReference, sys.rules[r].line, sys.rules[r].column,
                           "rule for " + sys.state_vars[sys.rules[r].target] + "' is part of a next-step cycle");
        }
      }
    }
  }
}

namespace detail {

enum class Tok { Ident, Number, Prime, Semi, Comma, Assign, LBrace, RBrace, LParen, RParen, Not, And, Xor, Or, At, End };

struct Token {
  Tok kind;
  std::string text;
  std::size_t line;
  std::size_t column;
};

class Lexer {
 public:
  explicit Lexer(std::string_view src) : src_(src) {}

  std::vector<Token> run() {
    std::vector<Token> out;
    while (true) {
      skip_space();
      const std::size_t l = line_, c = col_;
      if (pos_ >= src_.size()) {
        out.push_back({Tok::End, "", l, c});
        return out;
      }
      const char ch = src_[pos_];
      if (std::isalpha(static_cast<unsigned char>(ch)) || ch == '_') {
        std::string word;
        while (pos_ < src_.size() && (std::isalnum(static_cast<unsigned char>(src_[pos_])) || src_[pos_] == '_')) {
          word += advance();
        }
        out.push_back({Tok::Ident, std::move(word), l, c});
        continue;
      }
      if (std::isdigit(static_cast<unsigned char>(ch))) {
        std::string digits;
        while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) digits += advance();
        out.push_back({Tok::Number, std::move(digits), l, c});
        continue;
      }
      Tok kind;
      switch (ch) {
        case '\'': kind = Tok::Prime; break;
        case ';': kind = Tok::Semi; break;
        case ',': kind = Tok::Comma; break;
        case '=': kind = Tok::Assign; break;
        case '{': kind = Tok::LBrace; break;
        case '}': kind = Tok::RBrace; break;
        case '(': kind = Tok::LParen; break;
        case ')': kind = Tok::RParen; break;
        case '!': kind = Tok::Not; break;
        case '&': kind = Tok::And; break;
        case '^': kind = Tok::Xor; break;
        case '|': kind = Tok::Or; break;
        case '@': kind = Tok::At; break;
        default:
          throw ParseError(ParseErrorKind::Syntax, l, c, std::string("unexpected character '") + ch + "'");
      }
      out.push_back({kind, std::string(1, advance()), l, c});
    }
  }

 private:
  char advance() {
    const char ch = src_[pos_++];
    if (ch == '\n') {
      ++line_;
      col_ = 1;
    } else {
      ++col_;
    }
    return ch;
  }

  void skip_space() {
    while (pos_ < src_.size()) {
      const char ch = src_[pos_];
      if (ch == '#') {
        while (pos_ < src_.size() && src_[pos_] != '\n') advance();
      } else if (std::isspace(static_cast<unsigned char>(ch))) {
        advance();
      } else {
        return;
      }
    }
  }

  std::string_view src_;
  std::size_t pos_ = 0;
  std::size_t line_ = 1;
  std::size_t col_ = 1;
};

inline bool is_keyword(std::string_view w) {
  return w == "state" || w == "input" || w == "init" || w == "in" || w == "horizon" || w == "nand" || w == "nor" ||
         w == "xnor";
}

class Parser {
 public:
  /// `symbols` is null when parsing a free-standing expression.
  Parser(std::vector<Token> toks, SystemSpec* symbols) : toks_(std::move(toks)), sys_(symbols) {}

  SystemSpec parse_system() {
    SystemSpec& sys = *sys_;
    std::vector<std::optional<Domain>> init(0);
    std::vector<std::optional<Domain>> inputs(0);
    bool joint_init = false;
    while (peek().kind != Tok::End) {
      const Token& t = peek();
      if (t.kind != Tok::Ident) fail(t, "expected a statement");
      if (t.text == "state" || t.text == "input") {
        const bool is_state = t.text == "state";
        next();
        do {
          const Token& name = expect(Tok::Ident, "variable name");
          if (is_keyword(name.text)) fail(name, "'" + name.text + "' is a keyword");
          if (lookup(name.text)) {
            throw ParseError(ParseErrorKind::Redeclaration, name.line, name.column, "'" + name.text + "' already declared");
          }
          if (is_state) {
            sys.state_vars.push_back(name.text);
            init.emplace_back();
          } else {
            sys.input_vars.push_back(name.text);
            inputs.emplace_back();
          }
        } while (accept(Tok::Comma));
        expect(Tok::Semi, "';'");
      } else if (t.text == "init") {
        next();
        if (accept(Tok::LBrace)) {
          joint_init = true;
          do {
            const Token& bits = expect(Tok::Number, "bitstring");
            sys.init_points.push_back(to_bits(bits));
          } while (accept(Tok::Comma));
          expect(Tok::RBrace, "'}'");
        } else {
          const Token& name = expect(Tok::Ident, "state variable");
          const auto ref = lookup(name.text);
          if (!ref || ref->scope != Scope::State) unknown(name, "'" + name.text + "' is not a state variable");
          expect(Tok::Assign, "'='");
          if (init[ref->index]) {
            throw ParseError(ParseErrorKind::Redeclaration, name.line, name.column, "second init for '" + name.text + "'");
          }
          init[ref->index] = domain();
        }
        expect(Tok::Semi, "';'");
      } else if (t.text == "in") {
        next();
        const Token& name = expect(Tok::Ident, "input variable");
        const auto ref = lookup(name.text);
        if (!ref || ref->scope != Scope::Input) unknown(name, "'" + name.text + "' is not an input variable");
        if (accept(Tok::At)) {
          const std::size_t step = number(expect(Tok::Number, "step"));
          expect(Tok::Assign, "'='");
          sys.input_overrides.push_back({step, ref->index, domain()});
        } else {
          expect(Tok::Assign, "'='");
          if (inputs[ref->index]) {
            throw ParseError(ParseErrorKind::Redeclaration, name.line, name.column, "second domain for '" + name.text + "'");
          }
          inputs[ref->index] = domain();
        }
        expect(Tok::Semi, "';'");
      } else if (t.text == "horizon") {
        next();
        sys.horizon = number(expect(Tok::Number, "horizon"));
        expect(Tok::Semi, "';'");
      } else {
        const Token& name = next();
        const auto ref = lookup(name.text);
        if (!ref) unknown(name, "'" + name.text + "' is not declared");
        if (ref->scope != Scope::State) unknown(name, "'" + name.text + "' is not a state variable");
        expect(Tok::Prime, "''' after the updated variable");
        expect(Tok::Assign, "'='");
        for (const UpdateRule& r : sys.rules) {
          if (r.target == ref->index) {
            throw ParseError(ParseErrorKind::DuplicateRule, name.line, name.column, "second rule for " + name.text + "'");
          }
        }
        ExprPtr e = expression();
        sys.rules.push_back({ref->index, std::move(e), name.line, name.column});
        expect(Tok::Semi, "';'");
      }
    }
    const Token& end = peek();
    if (joint_init) {
      if (std::any_of(init.begin(), init.end(), [](const auto& d) { return d.has_value(); })) {
        fail(end, "joint 'init { ... }' cannot be combined with per-variable init");
      }
    } else {
      for (std::size_t i = 0; i < init.size(); ++i) {
        if (!init[i]) {
          throw ParseError(ParseErrorKind::MissingDomain, end.line, end.column,
                           "no init domain for '" + sys.state_vars[i] + "'");
        }
        sys.init_domains.push_back(*init[i]);
      }
    }
    for (std::size_t i = 0; i < inputs.size(); ++i) {
      if (!inputs[i]) {
        throw ParseError(ParseErrorKind::MissingDomain, end.line, end.column,
                         "no domain for input '" + sys.input_vars[i] + "'");
      }
      sys.input_domains.push_back(*inputs[i]);
    }
    for (std::size_t v = 0; v < sys.num_states(); ++v) {
      const bool has = std::any_of(sys.rules.begin(), sys.rules.end(), [v](const UpdateRule& r) { return r.target == v; });
      if (!has) {
        throw ParseError(ParseErrorKind::MissingRule, end.line, end.column, "no rule for " + sys.state_vars[v] + "'");
      }
    }
    finalize(sys);
    return std::move(sys);
  }

  ExprPtr parse_standalone_expr() {
    ExprPtr e = expression();
    if (peek().kind != Tok::End) fail(peek(), "trailing input after expression");
    return e;
  }

 private:
  const Token& peek() const { return toks_[pos_]; }
  const Token& next() { return toks_[pos_ < toks_.size() - 1 ? pos_++ : pos_]; }

  bool accept(Tok k) {
    if (peek().kind != k) return false;
    next();
    return true;
  }

  const Token& expect(Tok k, const std::string& what) {
    if (peek().kind != k) fail(peek(), "expected " + what);
    return next();
  }

  [[noreturn]] static void fail(const Token& t, const std::string& msg) {
    const std::string found = t.kind == Tok::End ? "end of input" : "'" + t.text + "'";
    throw ParseError(ParseErrorKind::Syntax, t.line, t.column, msg + ", found " + found);
  }

  [[noreturn]] static void unknown(const Token& t, const std::string& msg) {
    throw ParseError(ParseErrorKind::UnknownIdentifier, t.line, t.column, msg);
  }

  static std::size_t number(const Token& t) {
    try {
      return static_cast<std::size_t>(std::stoull(t.text));
    } catch (const std::exception&) {
      fail(t, "number out of range");
    }
  }

  static BitVec to_bits(const Token& t) {
    if (t.text.find_first_not_of("01") != std::string::npos) fail(t, "expected a bitstring of 0/1");
    return BitVec::from_string(t.text);
  }

  Domain domain() {
    auto bit = [this] {
      const Token& t = expect(Tok::Number, "0 or 1");
      if (t.text != "0" && t.text != "1") fail(t, "expected 0 or 1");
      return t.text == "1" ? Domain::One : Domain::Zero;
    };
    if (!accept(Tok::LBrace)) return bit();
    auto mask = static_cast<std::uint8_t>(bit());
    while (accept(Tok::Comma)) mask |= static_cast<std::uint8_t>(bit());
    expect(Tok::RBrace, "'}'");
    return static_cast<Domain>(mask);
  }

  std::optional<VarRef> lookup(const std::string& name) const {
    if (sys_ == nullptr) return std::nullopt;
    for (std::size_t i = 0; i < sys_->state_vars.size(); ++i) {
      if (sys_->state_vars[i] == name) return VarRef{name, false, Scope::State, i};
    }
    for (std::size_t i = 0; i < sys_->input_vars.size(); ++i) {
      if (sys_->input_vars[i] == name) return VarRef{name, false, Scope::Input, i};
    }
    return std::nullopt;
  }

  bool at_keyword(std::string_view kw) const { return peek().kind == Tok::Ident && peek().text == kw; }

  ExprPtr expression() {
    ExprPtr lhs = xor_level();
    while (true) {
      NodeKind k;
      if (peek().kind == Tok::Or) {
        k = NodeKind::Or;
      } else if (at_keyword("nor")) {
        k = NodeKind::Nor;
      } else {
        return lhs;
      }
      next();
      lhs = Expr::binary(k, std::move(lhs), xor_level());
    }
  }

  ExprPtr xor_level() {
    ExprPtr lhs = and_level();
    while (true) {
      NodeKind k;
      if (peek().kind == Tok::Xor) {
        k = NodeKind::Xor;
      } else if (at_keyword("xnor")) {
        k = NodeKind::Xnor;
      } else {
        return lhs;
      }
      next();
      lhs = Expr::binary(k, std::move(lhs), and_level());
    }
  }

  ExprPtr and_level() {
    ExprPtr lhs = unary();
    while (true) {
      NodeKind k;
      if (peek().kind == Tok::And) {
        k = NodeKind::And;
      } else if (at_keyword("nand")) {
        k = NodeKind::Nand;
      } else {
        return lhs;
      }
      next();
      lhs = Expr::binary(k, std::move(lhs), unary());
    }
  }

  ExprPtr unary() {
    if (accept(Tok::Not)) return Expr::negate(unary());
    return primary();
  }

  ExprPtr primary() {
    const Token& t = peek();
    if (accept(Tok::LParen)) {
      ExprPtr e = expression();
      expect(Tok::RParen, "')'");
      return e;
    }
    if (t.kind == Tok::Number) {
      if (t.text != "0" && t.text != "1") fail(t, "constants are 0 or 1");
      next();
      return Expr::constant(t.text == "1");
    }
    if (t.kind == Tok::Ident && !is_keyword(t.text)) {
      const Token& name = next();
      const bool primed = accept(Tok::Prime);
      if (sys_ == nullptr) return Expr::var(VarRef{name.text, primed, Scope::Unresolved, 0});
      auto ref = lookup(name.text);
      if (!ref) unknown(name, "'" + name.text + "' is not declared");
      if (primed && ref->scope != Scope::State) unknown(name, "input '" + name.text + "' has no next-step value");
      ref->next = primed;
      return Expr::var(std::move(*ref));
    }
    fail(t, "expected an operand");
  }

  std::vector<Token> toks_;
  std::size_t pos_ = 0;
  SystemSpec* sys_;
};

}  // namespace detail

inline SystemSpec parse_system(std::string_view text) {
  SystemSpec sys;
  detail::Parser p(detail::Lexer(text).run(), &sys);
  return p.parse_system();
}

/// Parses an expression whose variables stay unresolved (looked up by name).
inline ExprPtr parse_expr(std::string_view text) {
  detail::Parser p(detail::Lexer(text).run(), nullptr);
  return p.parse_standalone_expr();
}

/// Parses a predicate over the current-step state variables of `sys`.
inline ExprPtr parse_state_predicate(std::string_view text, const SystemSpec& sys) {
  SystemSpec symbols;
  symbols.state_vars = sys.state_vars;
  detail::Parser p(detail::Lexer(text).run(), &symbols);
  ExprPtr e = p.parse_standalone_expr();
  std::vector<std::size_t> primed;
  detail::collect_next_refs(*e, primed);
  if (!primed.empty()) throw ParseError(ParseErrorKind::Syntax, 1, 1, "predicates cannot reference next-step values");
  return e;
}

inline std::string to_string(const SystemSpec& sys) {
  std::string out;
  auto list = [&out](std::string_view kw, const std::vector<std::string>& names) {
    if (names.empty()) return;
    out += kw;
    out += ' ';
    for (std::size_t i = 0; i < names.size(); ++i) {
      if (i != 0) out += ", ";
      out += names[i];
    }
    out += ";\n";
  };
  list("state", sys.state_vars);
  list("input", sys.input_vars);
  for (const UpdateRule& r : sys.rules) {
    out += sys.state_vars[r.target] + "' = " + to_string(*r.expr) + ";\n";
  }
  if (!sys.init_points.empty()) {
    out += "init {";
    for (std::size_t i = 0; i < sys.init_points.size(); ++i) {
      out += i == 0 ? " " : ", ";
      out += sys.init_points[i].to_string();
    }
    out += " };\n";
  } else {
    for (std::size_t i = 0; i < sys.init_domains.size(); ++i) {
      out += "init " + sys.state_vars[i] + " = " + to_string(sys.init_domains[i]) + ";\n";
    }
  }
  for (std::size_t i = 0; i < sys.input_domains.size(); ++i) {
    out += "in " + sys.input_vars[i] + " = " + to_string(sys.input_domains[i]) + ";\n";
  }
  for (const InputOverride& o : sys.input_overrides) {
    out += "in " + sys.input_vars[o.input] + " @ " + std::to_string(o.step) + " = " + to_string(o.domain) + ";\n";
  }
  if (sys.horizon) out += "horizon " + std::to_string(*sys.horizon) + ";\n";
  return out;
}

// ---------------------------------------------------------------------------
// Evaluation

/// Structural recursion over an expression. `lookup(const VarRef&)` yields
/// the value of a variable; `ops` supplies constant(bool), negate(T) and
/// combine(NodeKind, T, T).
template <class T, class Lookup, class Ops>
T fold_expr(const Expr& e, const Lookup& lookup, const Ops& ops) {
  switch (e.kind()) {
    case NodeKind::Var: return lookup(e.var());
    case NodeKind::Const: return ops.constant(e.value());
    case NodeKind::Not: return ops.negate(fold_expr<T>(*e.lhs(), lookup, ops));
    default: {
      T l = fold_expr<T>(*e.lhs(), lookup, ops);
      T r = fold_expr<T>(*e.rhs(), lookup, ops);
      return ops.combine(e.kind(), std::move(l), std::move(r));
    }
  }
}

struct PointOps {
  bool constant(bool v) const { return v; }
  bool negate(bool v) const { return !v; }
  bool combine(NodeKind k, bool a, bool b) const {
    switch (k) {
      case NodeKind::Xor: return a != b;
      case NodeKind::And: return a && b;
      case NodeKind::Or: return a || b;
      case NodeKind::Nand: return !(a && b);
      case NodeKind::Nor: return !(a || b);
      case NodeKind::Xnor: return a == b;
      default: throw std::logic_error("not a binary operator");
    }
  }
};

/// Minkowski semantics. When `reduce_above` is set, any intermediate scalar
/// result with more generators than that is passed through reduce_scalar().
struct ZonotopeOps {
  std::size_t dim = 1;
  std::optional<std::size_t> reduce_above;

  LogicalZonotope constant(bool v) const { return LogicalZonotope(BitVec(dim, v)); }
  LogicalZonotope negate(const LogicalZonotope& z) const { return mink_not(z); }
  LogicalZonotope combine(NodeKind k, const LogicalZonotope& a, const LogicalZonotope& b) const {
    LogicalZonotope out = [&] {
      switch (k) {
        case NodeKind::Xor: return mink_xor(a, b);
        case NodeKind::And: return mink_and(a, b);
        case NodeKind::Or: return mink_or(a, b);
        case NodeKind::Nand: return mink_nand(a, b);
        case NodeKind::Nor: return mink_nor(a, b);
        case NodeKind::Xnor: return mink_xnor(a, b);
        default: throw std::logic_error("not a binary operator");
      }
    }();
    if (reduce_above && out.dim() == 1 && out.num_generators() > *reduce_above) return reduce_scalar(out);
    return out;
  }
};

/// Looks variables up by display name ("x" or "x'").
template <class T>
struct NamedLookup {
  const std::map<std::string, T>* env;
  const T& operator()(const VarRef& v) const {
    auto it = env->find(v.display());
    if (it == env->end()) throw EvalError("unbound variable '" + v.display() + "'");
    return it->second;
  }
};

inline bool eval_point(const Expr& e, const std::map<std::string, bool>& env) {
  return fold_expr<bool>(e, NamedLookup<bool>{&env}, PointOps{});
}

inline LogicalZonotope eval_zonotope(const Expr& e, const std::map<std::string, LogicalZonotope>& env) {
  std::size_t dim = 1;
  if (!env.empty()) {
    dim = env.begin()->second.dim();
    for (const auto& [name, z] : env) {
      if (z.dim() != dim) throw DimensionError("eval_zonotope: environment mixes dimensions");
    }
  }
  return fold_expr<LogicalZonotope>(e, NamedLookup<LogicalZonotope>{&env}, ZonotopeOps{dim, std::nullopt});
}

/// Variable values for one step, indexed by resolved slot.
template <class T>
struct Frame {
  const std::vector<T>* state = nullptr;
  const std::vector<T>* input = nullptr;
  const std::vector<T>* next = nullptr;

  // decltype(auto) keeps vector<bool> lookups by value.
  decltype(auto) operator()(const VarRef& v) const {
    switch (v.scope) {
      case Scope::State: return v.next ? (*next)[v.index] : (*state)[v.index];
      case Scope::Input: return (*input)[v.index];
      case Scope::Unresolved: break;
    }
    throw EvalError("variable '" + v.display() + "' is not resolved against a system");
  }
};

/// Applies every update rule once, in evaluation order. `next` must have
/// num_states() entries; each is overwritten.
template <class T, class Ops>
void step_system(const SystemSpec& sys, const std::vector<T>& state, const std::vector<T>& input, std::vector<T>& next,
                 const Ops& ops) {
  Frame<T> frame{&state, &input, &next};
  for (std::size_t r : sys.eval_order) {
    const UpdateRule& rule = sys.rules[r];
    next[rule.target] = fold_expr<T>(*rule.expr, frame, ops);
  }
}

}  // namespace logzono::dsl
