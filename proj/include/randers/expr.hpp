#pragma once

/// Arithmetic expression language for metric components.
///
/// Grammar (byte offsets in errors are 1-based):
///   expr    :=  term (('+'|'-') term)*
///   term    :=  unary (('*'|'/') unary)*
///   unary   :=  '-' unary | power
///   power   :=  primary ('^' exponent)*      exponent: integer or half-integer
///   primary :=  number | x<k> | fn '(' expr ')' | '(' expr ')'
///   fn      :=  sqrt | sin | cos | exp | ln | atan
///
/// Evaluation is templated over the scalar, so the same AST produces plain
/// values, dual-tower jets, and truncated series.

#include <cctype>
#include <cstdio>
#include <cstdlib>
#include <memory>
#include <string>

#include "randers/dual.hpp"
#include "randers/error.hpp"
#include "randers/linalg.hpp"

namespace randers {

struct Expr;
using ExprPtr = std::shared_ptr<const Expr>;

struct Expr {
  enum class Kind {
    constant, variable,
    neg, sqrt_fn, sin_fn, cos_fn, exp_fn, ln_fn, atan_fn,
    add, sub, mul, div, pow
  };
  Kind kind;
  double cval = 0;       // constant value
  int var = 0;           // 1-based variable index
  long long twice_exp = 0;  // pow exponent times two (integer or half-integer)
  ExprPtr a, b;
  std::size_t offset = 0;  // 1-based byte offset of this node in the source
};

inline ExprPtr make_expr(Expr e) { return std::make_shared<const Expr>(std::move(e)); }

// ---- printing -------------------------------------------------------------------

namespace detail {
inline std::string num_to_string(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}
}  // namespace detail

/// Fully parenthesized form; reparsing reproduces the AST node for node.
inline std::string print_expr(const ExprPtr& e) {
  using K = Expr::Kind;
  switch (e->kind) {
    case K::constant: return detail::num_to_string(e->cval);
    case K::variable: return "x" + std::to_string(e->var);
    case K::neg:      return "(-" + print_expr(e->a) + ")";
    case K::sqrt_fn:  return "sqrt(" + print_expr(e->a) + ")";
    case K::sin_fn:   return "sin(" + print_expr(e->a) + ")";
    case K::cos_fn:   return "cos(" + print_expr(e->a) + ")";
    case K::exp_fn:   return "exp(" + print_expr(e->a) + ")";
    case K::ln_fn:    return "ln(" + print_expr(e->a) + ")";
    case K::atan_fn:  return "atan(" + print_expr(e->a) + ")";
    case K::add:      return "(" + print_expr(e->a) + " + " + print_expr(e->b) + ")";
    case K::sub:      return "(" + print_expr(e->a) + " - " + print_expr(e->b) + ")";
    case K::mul:      return "(" + print_expr(e->a) + " * " + print_expr(e->b) + ")";
    case K::div:      return "(" + print_expr(e->a) + " / " + print_expr(e->b) + ")";
    case K::pow:
      return "(" + print_expr(e->a) + "^" +
             detail::num_to_string(static_cast<double>(e->twice_exp) / 2) + ")";
  }
  return {};
}

/// Structural equality, ignoring source offsets.
inline bool expr_equal(const ExprPtr& x, const ExprPtr& y) {
  if (x->kind != y->kind) return false;
  switch (x->kind) {
    case Expr::Kind::constant: return x->cval == y->cval;
    case Expr::Kind::variable: return x->var == y->var;
    case Expr::Kind::pow:
      return x->twice_exp == y->twice_exp && expr_equal(x->a, y->a);
    case Expr::Kind::add:
    case Expr::Kind::sub:
    case Expr::Kind::mul:
    case Expr::Kind::div:
      return expr_equal(x->a, y->a) && expr_equal(x->b, y->b);
    default: return expr_equal(x->a, y->a);
  }
}

/// Largest variable index referenced (0 when none).
inline int max_var_index(const ExprPtr& e) {
  int m = e->kind == Expr::Kind::variable ? e->var : 0;
  if (e->a) m = std::max(m, max_var_index(e->a));
  if (e->b) m = std::max(m, max_var_index(e->b));
  return m;
}

// ---- parsing --------------------------------------------------------------------

namespace detail {

class Parser {
 public:
  explicit Parser(std::string_view src) : src_(src) {}

  ExprPtr parse() {
    skip_ws();
    ExprPtr e = parse_expr();
    skip_ws();
    if (pos_ != src_.size())
      throw ParseError("unexpected trailing input", pos_ + 1, {"end of input"});
    return e;
  }

 private:
  std::string src_;
  std::size_t pos_ = 0;

  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }
  bool at_end() const { return pos_ >= src_.size(); }
  char peek() const { return at_end() ? '\0' : src_[pos_]; }
  bool accept(char c) {
    skip_ws();
    if (!at_end() && src_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  ExprPtr parse_expr() {
    ExprPtr e = parse_term();
    for (;;) {
      skip_ws();
      std::size_t off = pos_ + 1;
      if (accept('+')) e = make_expr({Expr::Kind::add, 0, 0, 0, e, parse_term(), off});
      else if (accept('-')) e = make_expr({Expr::Kind::sub, 0, 0, 0, e, parse_term(), off});
      else return e;
    }
  }

  ExprPtr parse_term() {
    ExprPtr e = parse_unary();
    for (;;) {
      skip_ws();
      std::size_t off = pos_ + 1;
      if (accept('*')) e = make_expr({Expr::Kind::mul, 0, 0, 0, e, parse_unary(), off});
      else if (accept('/')) e = make_expr({Expr::Kind::div, 0, 0, 0, e, parse_unary(), off});
      else return e;
    }
  }

  ExprPtr parse_unary() {
    skip_ws();
    std::size_t off = pos_ + 1;
    if (accept('-'))
      return make_expr({Expr::Kind::neg, 0, 0, 0, parse_unary(), nullptr, off});
    return parse_power();
  }

  ExprPtr parse_power() {
    ExprPtr e = parse_primary();
    while (true) {
      skip_ws();
      std::size_t off = pos_ + 1;
      if (!accept('^')) break;
      long long te = parse_exponent();
      e = make_expr({Expr::Kind::pow, 0, 0, te, e, nullptr, off});
    }
    return e;
  }

  long long parse_exponent() {
    skip_ws();
    std::size_t off = pos_ + 1;
    bool negative = accept('-');
    skip_ws();
    if (at_end() || !(std::isdigit(static_cast<unsigned char>(peek())) || peek() == '.'))
      throw ParseError("malformed exponent", pos_ + 1,
                       {"an integer or half-integer constant"});
    double v = parse_number_literal();
    double twice = 2 * v;
    long long t = static_cast<long long>(twice >= 0 ? twice + 0.5 : twice - 0.5);
    if (static_cast<double>(t) != twice)
      throw ParseError("exponent must be an integer or half-integer", off,
                       {"an integer or half-integer constant"});
    return negative ? -t : t;
  }

  // Scan [0-9]* ('.' [0-9]*)? ([eE][+-]? [0-9]+)? explicitly, then convert;
  // rejects strtod extensions (hex floats, inf, nan).
  double parse_number_literal() {
    std::size_t start = pos_;
    while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (!at_end() && peek() == '.') {
      ++pos_;
      while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    }
    if (pos_ == start || (pos_ == start + 1 && src_[start] == '.'))
      throw ParseError("malformed number", start + 1, {"a numeric constant"});
    if (!at_end() && (peek() == 'e' || peek() == 'E')) {
      std::size_t mark = pos_;
      ++pos_;
      if (!at_end() && (peek() == '+' || peek() == '-')) ++pos_;
      if (at_end() || !std::isdigit(static_cast<unsigned char>(peek()))) {
        pos_ = mark;  // not an exponent suffix; leave 'e...' for the caller
      } else {
        while (!at_end() && std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
      }
    }
    return std::strtod(src_.c_str() + start, nullptr);
  }

  ExprPtr parse_primary() {
    skip_ws();
    if (at_end())
      throw ParseError("unexpected end of input", pos_ + 1,
                       {"a number", "a variable", "a function", "("});
    std::size_t off = pos_ + 1;
    char c = peek();

    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      double v = parse_number_literal();
      return make_expr({Expr::Kind::constant, v, 0, 0, nullptr, nullptr, off});
    }

    if (c == '(') {
      ++pos_;
      ExprPtr e = parse_expr();
      skip_ws();
      if (!accept(')'))
        throw ParseError("unbalanced parenthesis", pos_ + 1, {")"});
      return e;
    }

    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (!at_end() && (std::isalnum(static_cast<unsigned char>(peek())))) ++pos_;
      std::string id(src_.substr(start, pos_ - start));

      if (id.size() >= 2 && id[0] == 'x' &&
          std::all_of(id.begin() + 1, id.end(),
                      [](char d) { return std::isdigit(static_cast<unsigned char>(d)); })) {
        long idx = std::strtol(id.c_str() + 1, nullptr, 10);
        if (idx < 1 || idx > 64)
          throw ParseError("variable index out of range", off, {"x1, x2, ..."});
        return make_expr(
            {Expr::Kind::variable, 0, static_cast<int>(idx), 0, nullptr, nullptr, off});
      }

      Expr::Kind k;
      if (id == "sqrt") k = Expr::Kind::sqrt_fn;
      else if (id == "sin") k = Expr::Kind::sin_fn;
      else if (id == "cos") k = Expr::Kind::cos_fn;
      else if (id == "exp") k = Expr::Kind::exp_fn;
      else if (id == "ln") k = Expr::Kind::ln_fn;
      else if (id == "atan") k = Expr::Kind::atan_fn;
      else
        throw ParseError("unknown identifier '" + id + "'", off,
                         {"sqrt", "sin", "cos", "exp", "ln", "atan", "x<k>"});

      skip_ws();
      if (!accept('('))
        throw ParseError("function call needs an argument list", pos_ + 1, {"("});
      ExprPtr arg = parse_expr();
      skip_ws();
      if (!accept(')'))
        throw ParseError("unbalanced parenthesis", pos_ + 1, {")"});
      return make_expr({k, 0, 0, 0, arg, nullptr, off});
    }

    throw ParseError(std::string("unexpected character '") + c + "'", off,
                     {"a number", "a variable", "a function", "("});
  }
};

}  // namespace detail

inline ExprPtr parse(std::string_view text) { return detail::Parser(text).parse(); }

// ---- evaluation -----------------------------------------------------------------

namespace detail {
[[noreturn]] inline void domain_fail(const ExprPtr& e, const char* what) {
  throw DomainError(std::string(what) + " in subexpression '" + print_expr(e) +
                    "' (byte " + std::to_string(e->offset) + ")");
}
}  // namespace detail

template <class T>
T eval_expr(const ExprPtr& e, const Vec<T>& x) {
  using K = Expr::Kind;
  switch (e->kind) {
    case K::constant: return T(e->cval);
    case K::variable: {
      if (e->var > static_cast<int>(x.size()))
        throw Error("variable x" + std::to_string(e->var) + " is unbound (" +
                    std::to_string(x.size()) + " inputs)");
      return x[static_cast<size_t>(e->var - 1)];
    }
    case K::neg: return -eval_expr(e->a, x);
    case K::sqrt_fn: {
      T v = eval_expr(e->a, x);
      if (primal_value(v) <= 0) detail::domain_fail(e, "sqrt of a non-positive value");
      return sqrt(v);
    }
    case K::sin_fn: return sin(eval_expr(e->a, x));
    case K::cos_fn: return cos(eval_expr(e->a, x));
    case K::exp_fn: return exp(eval_expr(e->a, x));
    case K::ln_fn: {
      T v = eval_expr(e->a, x);
      if (primal_value(v) <= 0) detail::domain_fail(e, "ln of a non-positive value");
      return log(v);
    }
    case K::atan_fn: return atan(eval_expr(e->a, x));
    case K::add: return eval_expr(e->a, x) + eval_expr(e->b, x);
    case K::sub: return eval_expr(e->a, x) - eval_expr(e->b, x);
    case K::mul: return eval_expr(e->a, x) * eval_expr(e->b, x);
    case K::div: {
      T num = eval_expr(e->a, x), den = eval_expr(e->b, x);
      if (primal_value(den) == 0) detail::domain_fail(e, "division by zero");
      return num / den;
    }
    case K::pow: {
      T v = eval_expr(e->a, x);
      if (e->twice_exp % 2 == 0) return powi(v, e->twice_exp / 2);
      if (primal_value(v) <= 0)
        detail::domain_fail(e, "half-integer power of a non-positive value");
      return pow_half_odd(v, e->twice_exp);
    }
  }
  throw Error("corrupt expression node");
}

}  // namespace randers
