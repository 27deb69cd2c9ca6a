#pragma once

// Arithmetic expression AST for tensor-field components. Expressions are
// parsed once against a coordinate name list and can then be evaluated
// over any scalar type (double or nested duals), which is what makes the
// exact differentiation kernel work uniformly for built-in and
// file-loaded manifolds.

#include <cctype>
#include <memory>
#include <string>
#include <vector>

#include "akv/dual.hpp"
#include "akv/linalg.hpp"

namespace akv {

class Expr {
 public:
  enum class Op { kConst, kVar, kAdd, kSub, kMul, kDiv, kPow, kNeg, kSin, kCos, kTan, kExp, kLog, kSqrt };

  Op op = Op::kConst;
  double cval = 0;
  int var = 0;
  std::unique_ptr<Expr> lhs, rhs;

  template <class T>
  T eval(const Vec<T>& x) const {
    switch (op) {
      case Op::kConst: return T(cval);
      case Op::kVar: return x[var];
      case Op::kAdd: return lhs->eval(x) + rhs->eval(x);
      case Op::kSub: return lhs->eval(x) - rhs->eval(x);
      case Op::kMul: return lhs->eval(x) * rhs->eval(x);
      case Op::kDiv: return lhs->eval(x) / rhs->eval(x);
      case Op::kPow: {
        // integer exponents expanded by repeated multiplication so that
        // negative bases stay differentiable
        double p = rhs->cval;
        T b = lhs->eval(x);
        if (p == double(long(p)) && std::abs(p) <= 16) {
          long ip = long(p);
          if (ip == 0) return T(1);
          T r = b;
          for (long k = 1; k < std::abs(ip); ++k) r *= b;
          return ip > 0 ? r : T(1) / r;
        }
        return pow(b, p);
      }
      case Op::kNeg: return -lhs->eval(x);
      case Op::kSin: return sin(lhs->eval(x));
      case Op::kCos: return cos(lhs->eval(x));
      case Op::kTan: return tan(lhs->eval(x));
      case Op::kExp: return exp(lhs->eval(x));
      case Op::kLog: return log(lhs->eval(x));
      case Op::kSqrt: return sqrt(lhs->eval(x));
    }
    throw Error("expr: bad op");
  }
};

using ExprPtr = std::unique_ptr<Expr>;

class ExprParser {
 public:
  ExprParser(std::string_view text, const std::vector<std::string>& vars)
      : text_(text), vars_(vars) {}

  ExprPtr parse() {
    auto e = parse_sum();
    skip_ws();
    if (pos_ != text_.size())
      throw Error("expr: trailing input at '" + std::string(text_.substr(pos_)) + "'");
    return e;
  }

 private:
  std::string_view text_;
  const std::vector<std::string>& vars_;
  size_t pos_ = 0;

  void skip_ws() {
    while (pos_ < text_.size() && std::isspace((unsigned char)text_[pos_])) ++pos_;
  }
  bool eat(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) { ++pos_; return true; }
    return false;
  }
  char peek() {
    skip_ws();
    return pos_ < text_.size() ? text_[pos_] : '\0';
  }

  static ExprPtr node(Expr::Op op, ExprPtr l = nullptr, ExprPtr r = nullptr) {
    auto e = std::make_unique<Expr>();
    e->op = op; e->lhs = std::move(l); e->rhs = std::move(r);
    return e;
  }

  ExprPtr parse_sum() {
    auto e = parse_term();
    for (;;) {
      if (eat('+')) e = node(Expr::Op::kAdd, std::move(e), parse_term());
      else if (eat('-')) e = node(Expr::Op::kSub, std::move(e), parse_term());
      else return e;
    }
  }
  ExprPtr parse_term() {
    auto e = parse_unary();
    for (;;) {
      if (eat('*')) e = node(Expr::Op::kMul, std::move(e), parse_unary());
      else if (eat('/')) e = node(Expr::Op::kDiv, std::move(e), parse_unary());
      else return e;
    }
  }
  // unary minus binds looser than '^': -x^2 parses as -(x^2)
  ExprPtr parse_unary() {
    if (eat('-')) return node(Expr::Op::kNeg, parse_unary());
    eat('+');
    return parse_pow();
  }
  ExprPtr parse_pow() {
    auto base = parse_primary();
    if (eat('^')) {
      bool neg = eat('-');
      auto exp = parse_primary();
      if (exp->op != Expr::Op::kConst)
        throw Error("expr: exponent must be a numeric constant");
      if (neg) exp->cval = -exp->cval;
      return node(Expr::Op::kPow, std::move(base), std::move(exp));
    }
    return base;
  }
  ExprPtr parse_primary() {
    skip_ws();
    if (pos_ >= text_.size()) throw Error("expr: unexpected end of input");
    char c = text_[pos_];
    if (std::isdigit((unsigned char)c) || c == '.') return parse_number();
    if (std::isalpha((unsigned char)c) || c == '_') return parse_ident();
    if (eat('(')) {
      auto e = parse_sum();
      if (!eat(')')) throw Error("expr: missing ')'");
      return e;
    }
    throw Error(std::string("expr: unexpected character '") + c + "'");
  }
  ExprPtr parse_number() {
    size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isdigit((unsigned char)text_[pos_]) || text_[pos_] == '.' ||
            text_[pos_] == 'e' || text_[pos_] == 'E' ||
            ((text_[pos_] == '+' || text_[pos_] == '-') && pos_ > start &&
             (text_[pos_ - 1] == 'e' || text_[pos_ - 1] == 'E'))))
      ++pos_;
    auto e = std::make_unique<Expr>();
    e->op = Expr::Op::kConst;
    e->cval = std::stod(std::string(text_.substr(start, pos_ - start)));
    return e;
  }
  ExprPtr parse_ident() {
    size_t start = pos_;
    while (pos_ < text_.size() &&
           (std::isalnum((unsigned char)text_[pos_]) || text_[pos_] == '_'))
      ++pos_;
    std::string name(text_.substr(start, pos_ - start));
    if (name == "pi") {
      auto e = std::make_unique<Expr>();
      e->op = Expr::Op::kConst;
      e->cval = 3.14159265358979323846;
      return e;
    }
    static const std::pair<const char*, Expr::Op> fns[] = {
        {"sin", Expr::Op::kSin}, {"cos", Expr::Op::kCos}, {"tan", Expr::Op::kTan},
        {"exp", Expr::Op::kExp}, {"log", Expr::Op::kLog}, {"sqrt", Expr::Op::kSqrt}};
    for (auto& [fname, op] : fns)
      if (name == fname) {
        if (!eat('(')) throw Error("expr: expected '(' after " + name);
        auto arg = parse_sum();
        if (!eat(')')) throw Error("expr: missing ')' after " + name + " argument");
        return node(op, std::move(arg));
      }
    for (size_t i = 0; i < vars_.size(); ++i)
      if (vars_[i] == name) {
        auto e = std::make_unique<Expr>();
        e->op = Expr::Op::kVar;
        e->var = int(i);
        return e;
      }
    throw Error("expr: unknown identifier '" + name + "'");
  }
};

inline ExprPtr parse_expr(std::string_view text, const std::vector<std::string>& vars) {
  return ExprParser(text, vars).parse();
}

}  // namespace akv
