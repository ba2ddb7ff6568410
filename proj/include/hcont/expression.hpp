#pragma once

#include <cctype>
#include <memory>
#include <string>
#include <string_view>
#include <vector>

#include "piecewise.hpp"
#include "roots.hpp"

namespace hcont {

/// Arguments of g(x, u, u', u'').
enum class Var { X, U, U1, U2 };

inline std::string to_string(Var v) {
  switch (v) {
    case Var::X: return "x";
    case Var::U: return "u";
    case Var::U1: return "u'";
    case Var::U2: return "u''";
  }
  return "x";
}

/// Immutable expression tree over x, u, u', u'' with rational constants, + - * /,
/// integer powers, min and max. Every node is continuous wherever its divisions are.
class Expr {
 public:
  enum class Kind { Const, Var, Neg, Add, Sub, Mul, Div, Pow, Min, Max };

  static Expr constant(Rational v) { return Expr(make(Kind::Const, std::move(v), Var::X, 0, {})); }
  static Expr variable(Var v) { return Expr(make(Kind::Var, Rational(0), v, 0, {})); }
  /// Negated constants fold, so every tree has one text form.
  static Expr unary(Kind k, Expr a) {
    if (k == Kind::Neg && a.kind() == Kind::Const) return constant(-a.value());
    return Expr(make(k, Rational(0), Var::X, 0, {std::move(a)}));
  }
  static Expr binary(Kind k, Expr a, Expr b) { return Expr(make(k, Rational(0), Var::X, 0, {std::move(a), std::move(b)})); }
  static Expr power(Expr a, int e) { return Expr(make(Kind::Pow, Rational(0), Var::X, e, {std::move(a)})); }

  Kind kind() const { return n_->kind; }
  const Rational& value() const { return n_->value; }
  Var var() const { return n_->var; }
  int exponent() const { return n_->exponent; }
  const Expr& arg(std::size_t i) const { return n_->args[i]; }

  bool uses(Var v) const {
    if (kind() == Kind::Var) return var() == v;
    for (const auto& a : n_->args)
      if (a.uses(v)) return true;
    return false;
  }

  friend bool operator==(const Expr& a, const Expr& b) {
    if (a.kind() != b.kind() || a.exponent() != b.exponent() || a.n_->args.size() != b.n_->args.size()) return false;
    if (a.kind() == Kind::Const && a.value() != b.value()) return false;
    if (a.kind() == Kind::Var && a.var() != b.var()) return false;
    for (std::size_t i = 0; i < a.n_->args.size(); ++i)
      if (!(a.arg(i) == b.arg(i))) return false;
    return true;
  }

  /// Fully parenthesized text that parses back to an equal tree.
  std::string to_string() const {
    switch (kind()) {
      case Kind::Const: return value().sign() < 0 ? "(" + hcont::to_string(value()) + ")" : hcont::to_string(value());
      case Kind::Var: return hcont::to_string(var());
      case Kind::Neg: return "(-" + arg(0).to_string() + ")";
      case Kind::Add: return "(" + arg(0).to_string() + " + " + arg(1).to_string() + ")";
      case Kind::Sub: return "(" + arg(0).to_string() + " - " + arg(1).to_string() + ")";
      case Kind::Mul: return "(" + arg(0).to_string() + " * " + arg(1).to_string() + ")";
      case Kind::Div: return "(" + arg(0).to_string() + " / " + arg(1).to_string() + ")";
      case Kind::Pow: return "(" + arg(0).to_string() + "^" + std::to_string(exponent()) + ")";
      case Kind::Min: return "min(" + arg(0).to_string() + ", " + arg(1).to_string() + ")";
      case Kind::Max: return "max(" + arg(0).to_string() + ", " + arg(1).to_string() + ")";
    }
    return "";
  }

 private:
  struct Node {
    Kind kind;
    Rational value;
    Var var;
    int exponent;
    std::vector<Expr> args;
  };

  explicit Expr(std::shared_ptr<const Node> n) : n_(std::move(n)) {}
  static std::shared_ptr<const Node> make(Kind k, Rational v, Var var, int e, std::vector<Expr> args) {
    return std::make_shared<const Node>(Node{k, std::move(v), var, e, std::move(args)});
  }

  std::shared_ptr<const Node> n_;
};

namespace detail {

class ExprParser {
 public:
  explicit ExprParser(std::string_view s) : s_(s) {}

  Expr parse() {
    Expr e = sum();
    skip();
    if (pos_ != s_.size()) error("unexpected '" + std::string(1, s_[pos_]) + "'");
    return e;
  }

 private:
  [[noreturn]] void error(const std::string& what) const {
    fail(ErrorCode::ParseError, "expression '" + std::string(s_) + "' at column " + std::to_string(pos_ + 1) + ": " + what);
  }

  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }

  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  void expect(char c) {
    if (!eat(c)) error(std::string("expected '") + c + "'");
  }

  bool is_digit(std::size_t i) const { return i < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i])); }

  Expr sum() {
    Expr e = product();
    for (;;) {
      if (eat('+')) e = Expr::binary(Expr::Kind::Add, e, product());
      else if (eat('-')) e = Expr::binary(Expr::Kind::Sub, e, product());
      else return e;
    }
  }

  Expr product() {
    Expr e = unary();
    for (;;) {
      if (eat('*')) e = Expr::binary(Expr::Kind::Mul, e, unary());
      else if (eat('/')) e = Expr::binary(Expr::Kind::Div, e, unary());
      else return e;
    }
  }

  Expr unary() {
    if (eat('-')) {
      return Expr::unary(Expr::Kind::Neg, unary());
    }
    return power();
  }

  Expr power() {
    Expr base = primary();
    if (!eat('^')) return base;
    skip();
    bool neg = eat('-');
    skip();
    std::size_t start = pos_;
    while (is_digit(pos_)) ++pos_;
    if (start == pos_) error("exponent must be an integer");
    std::string digits(s_.substr(start, pos_ - start));
    if (digits.size() > 3) error("exponent too large");
    int e = std::stoi(digits);
    return Expr::power(base, neg ? -e : e);
  }

  Expr primary() {
    skip();
    if (pos_ >= s_.size()) error("unexpected end of input");
    char c = s_[pos_];
    if (c == '(') {
      ++pos_;
      Expr e = sum();
      expect(')');
      return e;
    }
    if (is_digit(pos_) || c == '.') return number();
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < s_.size() && std::isalpha(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      std::string_view word = s_.substr(start, pos_ - start);
      if (word == "x") return Expr::variable(Var::X);
      if (word == "u") {
        int primes = 0;
        while (pos_ < s_.size() && s_[pos_] == '\'') ++pos_, ++primes;
        if (primes > 2) error("derivatives above order 2 are not supported");
        return Expr::variable(primes == 0 ? Var::U : primes == 1 ? Var::U1 : Var::U2);
      }
      if (word == "min" || word == "max") {
        expect('(');
        Expr a = sum();
        expect(',');
        Expr b = sum();
        expect(')');
        return Expr::binary(word == "min" ? Expr::Kind::Min : Expr::Kind::Max, a, b);
      }
      pos_ = start;
      error("unknown name '" + std::string(word) + "'");
    }
    error("unexpected '" + std::string(1, c) + "'");
  }

  /// digits[.digits] or digits/digits as one literal, so "1/2" is a constant.
  Expr number() {
    std::size_t start = pos_;
    while (is_digit(pos_)) ++pos_;
    if (pos_ < s_.size() && s_[pos_] == '.') {
      ++pos_;
      while (is_digit(pos_)) ++pos_;
    } else if (pos_ < s_.size() && s_[pos_] == '/' && is_digit(pos_ + 1)) {
      ++pos_;
      while (is_digit(pos_)) ++pos_;
    }
    return Expr::constant(parse_rational(s_.substr(start, pos_ - start)));
  }

  std::string_view s_;
  std::size_t pos_ = 0;
};

}  // namespace detail

inline Expr parse_expression(std::string_view text) { return detail::ExprParser(text).parse(); }

/// Values of x, u, u', u'' at one point.
struct PointArgs {
  Rational x, u, u1, u2;
  const Rational& get(Var v) const {
    switch (v) {
      case Var::X: return x;
      case Var::U: return u;
      case Var::U1: return u1;
      default: return u2;
    }
  }
};

inline Rational evaluate(const Expr& e, const PointArgs& a) {
  using K = Expr::Kind;
  switch (e.kind()) {
    case K::Const: return e.value();
    case K::Var: return a.get(e.var());
    case K::Neg: return -evaluate(e.arg(0), a);
    case K::Add: return evaluate(e.arg(0), a) + evaluate(e.arg(1), a);
    case K::Sub: return evaluate(e.arg(0), a) - evaluate(e.arg(1), a);
    case K::Mul: return evaluate(e.arg(0), a) * evaluate(e.arg(1), a);
    case K::Div: {
      Rational d = evaluate(e.arg(1), a);
      if (d == 0) fail(ErrorCode::OutOfDomain, "division by zero at x = " + to_string(a.x));
      return evaluate(e.arg(0), a) / d;
    }
    case K::Pow: {
      Rational b = evaluate(e.arg(0), a);
      if (e.exponent() < 0 && b == 0) fail(ErrorCode::OutOfDomain, "negative power of zero at x = " + to_string(a.x));
      Rational r = 1;
      for (int k = 0; k < std::abs(e.exponent()); ++k) r *= b;
      return e.exponent() < 0 ? Rational(1 / r) : r;
    }
    case K::Min: return std::min(evaluate(e.arg(0), a), evaluate(e.arg(1), a));
    case K::Max: return std::max(evaluate(e.arg(0), a), evaluate(e.arg(1), a));
  }
  return 0;
}

/// A function on an open gap (l, r), rational on each piece between interior cuts.
struct GapPieces {
  std::vector<Rational> cuts;
  std::vector<RationalFunction> funcs;  // cuts.size() + 1 pieces

  /// The function on a piece of a refinement, located by the piece's left end.
  const RationalFunction& at_piece(const ExtendedReal& left) const {
    if (!left.is_finite()) return funcs.front();
    return funcs[static_cast<std::size_t>(std::upper_bound(cuts.begin(), cuts.end(), left.value()) - cuts.begin())];
  }
};

/// Symbolic values of x, u, u', u'' on a gap.
struct GapArgs {
  RationalFunction x, u, u1, u2;
  const RationalFunction& get(Var v) const {
    switch (v) {
      case Var::X: return x;
      case Var::U: return u;
      case Var::U1: return u1;
      default: return u2;
    }
  }
};

namespace detail {

inline std::vector<Rational> merged_cuts(const std::vector<Rational>& a, const std::vector<Rational>& b) {
  std::vector<Rational> m;
  std::merge(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(m));
  m.erase(std::unique(m.begin(), m.end()), m.end());
  return m;
}

inline ExtendedReal piece_left(const std::vector<Rational>& cuts, std::size_t k, const ExtendedReal& l) {
  return k == 0 ? l : ExtendedReal(cuts[k - 1]);
}
inline ExtendedReal piece_right(const std::vector<Rational>& cuts, std::size_t k, const ExtendedReal& r) {
  return k == cuts.size() ? r : ExtendedReal(cuts[k]);
}

/// Splits every piece at the poles of its function inside the piece.
inline GapPieces split_at_poles(GapPieces p, const ExtendedReal& l, const ExtendedReal& r) {
  std::vector<Rational> extra;
  for (std::size_t k = 0; k < p.funcs.size(); ++k) {
    auto poles = rational_roots_in(p.funcs[k].den(), piece_left(p.cuts, k, l), piece_right(p.cuts, k, r));
    extra.insert(extra.end(), poles.begin(), poles.end());
  }
  if (extra.empty()) return p;
  std::sort(extra.begin(), extra.end());
  GapPieces out;
  out.cuts = merged_cuts(p.cuts, extra);
  for (std::size_t k = 0; k <= out.cuts.size(); ++k)
    out.funcs.push_back(p.at_piece(piece_left(out.cuts, k, l)));
  return out;
}

inline GapPieces combine(const GapPieces& a, const GapPieces& b, Expr::Kind kind, const ExtendedReal& l,
                         const ExtendedReal& r) {
  using K = Expr::Kind;
  GapPieces out;
  out.cuts = merged_cuts(a.cuts, b.cuts);
  std::vector<std::pair<RationalFunction, RationalFunction>> pairs;
  for (std::size_t k = 0; k <= out.cuts.size(); ++k) {
    ExtendedReal pl = piece_left(out.cuts, k, l);
    pairs.emplace_back(a.at_piece(pl), b.at_piece(pl));
  }
  if (kind == K::Min || kind == K::Max) {
    std::vector<Rational> crossings;
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      if (pairs[k].first == pairs[k].second) continue;
      auto x = sign_change_points(difference_sign_polynomial(pairs[k].first, pairs[k].second),
                                  piece_left(out.cuts, k, l), piece_right(out.cuts, k, r));
      crossings.insert(crossings.end(), x.begin(), x.end());
    }
    if (!crossings.empty()) {
      std::sort(crossings.begin(), crossings.end());
      GapPieces ga{out.cuts, {}}, gb{out.cuts, {}};
      for (auto& [fa, fb] : pairs) {
        ga.funcs.push_back(fa);
        gb.funcs.push_back(fb);
      }
      out.cuts = merged_cuts(out.cuts, crossings);
      pairs.clear();
      for (std::size_t k = 0; k <= out.cuts.size(); ++k) {
        ExtendedReal pl = piece_left(out.cuts, k, l);
        pairs.emplace_back(ga.at_piece(pl), gb.at_piece(pl));
      }
    }
    for (std::size_t k = 0; k < pairs.size(); ++k) {
      const auto& [fa, fb] = pairs[k];
      if (fa == fb) {
        out.funcs.push_back(fa);
        continue;
      }
      auto s = constant_sign(difference_sign_polynomial(fa, fb), piece_left(out.cuts, k, l), piece_right(out.cuts, k, r));
      if (!s) fail(ErrorCode::VerificationFailure, "min/max operands still cross inside a piece");
      bool a_wins = kind == K::Min ? *s <= 0 : *s >= 0;
      out.funcs.push_back(a_wins ? fa : fb);
    }
    return out;
  }
  for (auto& [fa, fb] : pairs) {
    switch (kind) {
      case K::Add: out.funcs.push_back(fa + fb); break;
      case K::Sub: out.funcs.push_back(fa - fb); break;
      case K::Mul: out.funcs.push_back(fa * fb); break;
      default: out.funcs.push_back(fa / fb); break;
    }
  }
  return kind == K::Div ? split_at_poles(std::move(out), l, r) : out;
}

}  // namespace detail

/// g evaluated on a gap (l, r) where the arguments are rational functions. Divisions split
/// the gap at poles, min and max at the (rational) crossing points.
inline GapPieces evaluate_on_gap(const Expr& e, const GapArgs& a, const ExtendedReal& l, const ExtendedReal& r) {
  using K = Expr::Kind;
  switch (e.kind()) {
    case K::Const: return {{}, {RationalFunction::constant(e.value())}};
    case K::Var: return {{}, {a.get(e.var())}};
    case K::Neg: {
      GapPieces p = evaluate_on_gap(e.arg(0), a, l, r);
      for (auto& f : p.funcs) f = -f;
      return p;
    }
    case K::Pow: {
      GapPieces p = evaluate_on_gap(e.arg(0), a, l, r);
      for (auto& f : p.funcs) f = f.pow(e.exponent());
      return e.exponent() < 0 ? detail::split_at_poles(std::move(p), l, r) : p;
    }
    default:
      return detail::combine(evaluate_on_gap(e.arg(0), a, l, r), evaluate_on_gap(e.arg(1), a, l, r), e.kind(), l, r);
  }
}

}  // namespace hcont
