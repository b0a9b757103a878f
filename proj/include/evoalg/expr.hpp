#pragma once

// Real-valued expressions in two variables s and t, used for the free
// functions of chain families.
//
// Grammar (whitespace between tokens is ignored):
//
//   expr    := term (('+' | '-') term)*
//   term    := unary (('*' | '/') unary)*
//   unary   := '-' unary | power
//   power   := primary ('^' unary)?          right-associative
//   primary := number | 's' | 't' | func '(' expr ')' | '(' expr ')'
//   func    := exp | log | sin | cos | sqrt | abs
//
// '^' binds tighter than unary minus, so -2^2 == -4 and 2^-1 == 0.5.

#include <cctype>
#include <cmath>
#include <memory>
#include <string>
#include <string_view>

#include "evoalg/error.hpp"
#include "evoalg/format.hpp"

namespace evoalg {

enum class Function { exp, log, sin, cos, sqrt, abs };

inline const char* function_name(Function f) {
  switch (f) {
    case Function::exp: return "exp";
    case Function::log: return "log";
    case Function::sin: return "sin";
    case Function::cos: return "cos";
    case Function::sqrt: return "sqrt";
    case Function::abs: return "abs";
  }
  return "?";
}

struct ExprNode {
  enum class Kind { number, variable, negate, add, sub, mul, div, pow, call };

  Kind kind = Kind::number;
  double value = 0.0;       // number
  char variable = 's';      // variable
  Function function{};      // call
  std::shared_ptr<const ExprNode> lhs, rhs;  // operands; unary ops use lhs
  int depth = 1;
};

using ExprPtr = std::shared_ptr<const ExprNode>;

namespace detail {

inline bool same_tree(const ExprNode* a, const ExprNode* b) {
  if (a == b) return true;
  if (!a || !b || a->kind != b->kind) return false;
  switch (a->kind) {
    case ExprNode::Kind::number:
      // Bitwise comparison keeps 0 and -0 apart only if they differ in print.
      return a->value == b->value;
    case ExprNode::Kind::variable: return a->variable == b->variable;
    case ExprNode::Kind::call:
      return a->function == b->function && same_tree(a->lhs.get(), b->lhs.get());
    case ExprNode::Kind::negate: return same_tree(a->lhs.get(), b->lhs.get());
    default:
      return same_tree(a->lhs.get(), b->lhs.get()) && same_tree(a->rhs.get(), b->rhs.get());
  }
}

// Precedence levels for printing: sum 1, product 2, unary 3, power 4, atom 5.
inline int precedence(const ExprNode& n) {
  switch (n.kind) {
    case ExprNode::Kind::add:
    case ExprNode::Kind::sub: return 1;
    case ExprNode::Kind::mul:
    case ExprNode::Kind::div: return 2;
    case ExprNode::Kind::negate: return 3;
    case ExprNode::Kind::pow: return 4;
    default: return 5;
  }
}

inline char op_char(ExprNode::Kind k) {
  switch (k) {
    case ExprNode::Kind::add: return '+';
    case ExprNode::Kind::sub: return '-';
    case ExprNode::Kind::mul: return '*';
    case ExprNode::Kind::div: return '/';
    case ExprNode::Kind::pow: return '^';
    default: return '?';
  }
}

inline std::string print_minimal(const ExprNode& n);

inline std::string wrap_if(const ExprNode& n, bool paren) {
  std::string s = print_minimal(n);
  return paren ? "(" + s + ")" : s;
}

inline std::string print_minimal(const ExprNode& n) {
  using K = ExprNode::Kind;
  switch (n.kind) {
    case K::number: return format_double(n.value);
    case K::variable: return std::string(1, n.variable);
    case K::call: return std::string(function_name(n.function)) + "(" + print_minimal(*n.lhs) + ")";
    case K::negate: return "-" + wrap_if(*n.lhs, precedence(*n.lhs) < 3);
    case K::pow:
      return wrap_if(*n.lhs, precedence(*n.lhs) < 5) + "^" + wrap_if(*n.rhs, precedence(*n.rhs) < 3);
    default: {
      const int p = precedence(n);
      return wrap_if(*n.lhs, precedence(*n.lhs) < p) + op_char(n.kind) +
             wrap_if(*n.rhs, precedence(*n.rhs) <= p);
    }
  }
}

inline std::string print_full(const ExprNode& n) {
  using K = ExprNode::Kind;
  switch (n.kind) {
    case K::number: return format_double(n.value);
    case K::variable: return std::string(1, n.variable);
    case K::call: return std::string(function_name(n.function)) + "(" + print_full(*n.lhs) + ")";
    case K::negate: return "(-" + print_full(*n.lhs) + ")";
    default: return "(" + print_full(*n.lhs) + op_char(n.kind) + print_full(*n.rhs) + ")";
  }
}

class ExprParser {
 public:
  static constexpr int max_depth = 200;

  explicit ExprParser(std::string_view text) : text_(text) {}

  ExprPtr parse() {
    skip_ws();
    if (pos_ >= text_.size()) fail(ParseError::Kind::syntax, "empty expression");
    ExprPtr e = parse_expr();
    skip_ws();
    if (pos_ < text_.size()) fail(ParseError::Kind::syntax, "unexpected '" + peek_text() + "'");
    return e;
  }

 private:
  [[noreturn]] void fail(ParseError::Kind kind, const std::string& msg) const {
    throw ParseError(kind, pos_, msg);
  }
  [[noreturn]] void fail_at(ParseError::Kind kind, std::size_t at, const std::string& msg) const {
    throw ParseError(kind, at, msg);
  }

  std::string peek_text() const {
    if (pos_ >= text_.size()) return "end of input";
    const unsigned char c = static_cast<unsigned char>(text_[pos_]);
    if (std::isprint(c)) return std::string(1, static_cast<char>(c));
    return "byte 0x" + std::to_string(static_cast<int>(c));
  }

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  bool accept(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  ExprPtr make(ExprNode n, std::size_t at) {
    int d = 0;
    if (n.lhs) d = n.lhs->depth;
    if (n.rhs) d = std::max(d, n.rhs->depth);
    n.depth = d + 1;
    if (n.depth > max_depth) fail_at(ParseError::Kind::syntax, at, "expression nested too deeply");
    return std::make_shared<const ExprNode>(std::move(n));
  }

  ExprPtr binary(ExprNode::Kind k, ExprPtr l, ExprPtr r, std::size_t at) {
    ExprNode n;
    n.kind = k;
    n.lhs = std::move(l);
    n.rhs = std::move(r);
    return make(std::move(n), at);
  }

  void enter() {
    if (++nesting_ > max_depth) fail(ParseError::Kind::syntax, "expression nested too deeply");
  }

  ExprPtr parse_expr() {
    enter();
    ExprPtr l = parse_term();
    for (;;) {
      skip_ws();
      const std::size_t at = pos_;
      if (accept('+')) l = binary(ExprNode::Kind::add, l, parse_term(), at);
      else if (accept('-')) l = binary(ExprNode::Kind::sub, l, parse_term(), at);
      else break;
    }
    --nesting_;
    return l;
  }

  ExprPtr parse_term() {
    ExprPtr l = parse_unary();
    for (;;) {
      skip_ws();
      const std::size_t at = pos_;
      if (accept('*')) l = binary(ExprNode::Kind::mul, l, parse_unary(), at);
      else if (accept('/')) l = binary(ExprNode::Kind::div, l, parse_unary(), at);
      else break;
    }
    return l;
  }

  ExprPtr parse_unary() {
    skip_ws();
    const std::size_t at = pos_;
    if (accept('-')) {
      enter();
      ExprNode n;
      n.kind = ExprNode::Kind::negate;
      n.lhs = parse_unary();
      --nesting_;
      return make(std::move(n), at);
    }
    return parse_power();
  }

  ExprPtr parse_power() {
    ExprPtr base = parse_primary();
    skip_ws();
    const std::size_t at = pos_;
    if (accept('^')) {
      enter();
      ExprPtr ex = parse_unary();
      --nesting_;
      return binary(ExprNode::Kind::pow, base, ex, at);
    }
    return base;
  }

  ExprPtr parse_primary() {
    skip_ws();
    const std::size_t at = pos_;
    if (pos_ >= text_.size()) fail(ParseError::Kind::syntax, "unexpected end of input");
    const char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      ExprPtr e = parse_expr();
      if (!accept(')')) fail(ParseError::Kind::syntax, "expected ')'");
      return e;
    }
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') return parse_number();
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      std::size_t end = pos_;
      while (end < text_.size() &&
             (std::isalnum(static_cast<unsigned char>(text_[end])) || text_[end] == '_'))
        ++end;
      const std::string_view name = text_.substr(pos_, end - pos_);
      pos_ = end;
      if (name == "s" || name == "t") {
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == '(')
          fail_at(ParseError::Kind::arity, at, "variable '" + std::string(name) + "' is not a function");
        ExprNode n;
        n.kind = ExprNode::Kind::variable;
        n.variable = name[0];
        return make(std::move(n), at);
      }
      static constexpr Function funcs[] = {Function::exp, Function::log, Function::sin,
                                           Function::cos, Function::sqrt, Function::abs};
      for (Function f : funcs) {
        if (name != function_name(f)) continue;
        if (!accept('('))
          fail_at(ParseError::Kind::arity, at, std::string(name) + " expects 1 argument");
        enter();
        ExprNode n;
        n.kind = ExprNode::Kind::call;
        n.function = f;
        n.lhs = parse_expr();
        --nesting_;
        skip_ws();
        if (pos_ < text_.size() && text_[pos_] == ',')
          fail_at(ParseError::Kind::arity, at, std::string(name) + " expects 1 argument");
        if (!accept(')')) fail(ParseError::Kind::syntax, "expected ')'");
        return make(std::move(n), at);
      }
      fail_at(ParseError::Kind::unknown_identifier, at,
              "unknown identifier '" + std::string(name) + "'");
    }
    fail(ParseError::Kind::syntax, "unexpected '" + peek_text() + "'");
  }

  ExprPtr parse_number() {
    const std::size_t at = pos_;
    std::size_t end = pos_;
    auto digits = [&] {
      std::size_t k = 0;
      while (end < text_.size() && std::isdigit(static_cast<unsigned char>(text_[end]))) ++end, ++k;
      return k;
    };
    std::size_t nd = digits();
    if (end < text_.size() && text_[end] == '.') {
      ++end;
      nd += digits();
    }
    if (nd == 0) fail(ParseError::Kind::syntax, "malformed number");
    if (end < text_.size() && (text_[end] == 'e' || text_[end] == 'E')) {
      std::size_t save = end++;
      if (end < text_.size() && (text_[end] == '+' || text_[end] == '-')) ++end;
      if (digits() == 0) end = save;  // not an exponent; leave 'e' for the caller
    }
    std::string_view lit = text_.substr(pos_, end - pos_);
    // from_chars rejects a leading '.', so normalize it.
    std::string buf = lit.front() == '.' ? "0" + std::string(lit) : std::string(lit);
    if (buf.back() == '.') buf += '0';
    auto v = parse_double(buf);
    if (!v || !std::isfinite(*v)) fail_at(ParseError::Kind::syntax, at, "number out of range");
    pos_ = end;
    ExprNode n;
    n.kind = ExprNode::Kind::number;
    n.value = *v;
    return make(std::move(n), at);
  }

  std::string_view text_;
  std::size_t pos_ = 0;
  int nesting_ = 0;
};

}  // namespace detail

/// Immutable parsed expression.
class Expr {
 public:
  static Expr parse(std::string_view text) {
    return Expr(detail::ExprParser(text).parse());
  }

  static Expr constant(double v) {
    ExprNode n;
    n.value = v;
    return Expr(std::make_shared<const ExprNode>(n));
  }

  const ExprNode& root() const { return *root_; }

  /// Minimal parentheses; parse(to_string()) is structurally equal to *this.
  std::string to_string() const { return detail::print_minimal(*root_); }
  /// Every operator application parenthesized.
  std::string to_string_full() const { return detail::print_full(*root_); }

  /// Evaluates at (s, t). Throws DomainError naming the offending
  /// sub-expression for division by zero, log/sqrt out of domain and
  /// non-finite results.
  double eval(double s, double t) const { return eval_node(*root_, s, t); }

  /// Single-argument use: both s and t bound to x.
  double operator()(double x) const { return eval(x, x); }

  friend bool operator==(const Expr& a, const Expr& b) {
    return detail::same_tree(a.root_.get(), b.root_.get());
  }

 private:
  explicit Expr(ExprPtr root) : root_(std::move(root)) {}

  [[noreturn]] static void domain(const ExprNode& n, const std::string& why) {
    throw DomainError(why + " in '" + detail::print_minimal(n) + "'");
  }

  static double checked(const ExprNode& n, double v) {
    if (!std::isfinite(v)) domain(n, "non-finite result");
    return v;
  }

  static double eval_node(const ExprNode& n, double s, double t) {
    using K = ExprNode::Kind;
    switch (n.kind) {
      case K::number: return n.value;
      case K::variable: return n.variable == 's' ? s : t;
      case K::negate: return -eval_node(*n.lhs, s, t);
      case K::add: return checked(n, eval_node(*n.lhs, s, t) + eval_node(*n.rhs, s, t));
      case K::sub: return checked(n, eval_node(*n.lhs, s, t) - eval_node(*n.rhs, s, t));
      case K::mul: return checked(n, eval_node(*n.lhs, s, t) * eval_node(*n.rhs, s, t));
      case K::div: {
        const double num = eval_node(*n.lhs, s, t);
        const double den = eval_node(*n.rhs, s, t);
        if (den == 0.0) domain(n, "division by zero");
        return checked(n, num / den);
      }
      case K::pow: {
        const double b = eval_node(*n.lhs, s, t);
        const double e = eval_node(*n.rhs, s, t);
        if (b == 0.0 && e < 0) domain(n, "division by zero");
        if (b < 0 && e != std::floor(e)) domain(n, "negative base with non-integer exponent");
        return checked(n, std::pow(b, e));
      }
      case K::call: {
        const double x = eval_node(*n.lhs, s, t);
        switch (n.function) {
          case Function::exp: return checked(n, std::exp(x));
          case Function::log:
            if (x <= 0) domain(n, "log of non-positive value");
            return std::log(x);
          case Function::sin: return std::sin(x);
          case Function::cos: return std::cos(x);
          case Function::sqrt:
            if (x < 0) domain(n, "sqrt of negative value");
            return std::sqrt(x);
          case Function::abs: return std::abs(x);
        }
      }
    }
    domain(n, "invalid node");
  }

  ExprPtr root_;
};

}  // namespace evoalg
