#pragma once

#include <string>
#include <utility>

#include "extended_real.hpp"
#include "polynomial.hpp"
#include "roots.hpp"

namespace hcont {

enum class Side { Left, Right };

/// numerator / denominator in lowest terms with a monic denominator.
class RationalFunction {
 public:
  RationalFunction() : den_(Polynomial::constant(1)) {}
  RationalFunction(Polynomial num) : num_(std::move(num)), den_(Polynomial::constant(1)) {}  // NOLINT(implicit)
  RationalFunction(Polynomial num, Polynomial den) : num_(std::move(num)), den_(std::move(den)) {
    if (den_.is_zero()) fail(ErrorCode::MalformedSegment, "denominator is identically zero");
    normalize();
  }
  static RationalFunction constant(Rational v) { return RationalFunction(Polynomial::constant(std::move(v))); }

  const Polynomial& num() const noexcept { return num_; }
  const Polynomial& den() const noexcept { return den_; }
  bool is_polynomial() const { return den_.degree() == 0; }
  bool is_zero() const { return num_.is_zero(); }
  int degree() const { return std::max(num_.degree(), den_.degree()); }

  /// Value at x; x must not be a pole.
  Rational operator()(const Rational& x) const {
    Rational d = den_(x);
    if (d == 0) fail(ErrorCode::MalformedSegment, "evaluation at a pole x = " + hcont::to_string(x));
    return num_(x) / d;
  }

  RationalFunction derivative() const {
    return {num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_};
  }

  RationalFunction operator-() const { return {-num_, den_}; }
  friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
    if (a.den_ == b.den_) return {a.num_ + b.num_, a.den_};
    return {a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_};
  }
  friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) { return a + (-b); }
  friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
    return {a.num_ * b.num_, a.den_ * b.den_};
  }
  friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
    if (b.is_zero()) fail(ErrorCode::DivisionByZeroOnSegment, "division by an identically zero function");
    return {a.num_ * b.den_, a.den_ * b.num_};
  }

  RationalFunction pow(int e) const {
    if (e >= 0) return {num_.pow(static_cast<unsigned>(e)), den_.pow(static_cast<unsigned>(e))};
    if (is_zero()) fail(ErrorCode::DivisionByZeroOnSegment, "negative power of an identically zero function");
    return {den_.pow(static_cast<unsigned>(-e)), num_.pow(static_cast<unsigned>(-e))};
  }

  /// Equality as functions (lowest terms with monic denominators are unique).
  friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  /// Exact limit as x -> c from the given side; c may be infinite (side is then implied).
  ExtendedReal limit(const ExtendedReal& c, Side side) const {
    if (num_.is_zero()) return ExtendedReal(0);
    if (!c.is_finite()) {
      int dn = num_.degree(), dd = den_.degree();
      if (dn < dd) return ExtendedReal(0);
      if (dn == dd) return ExtendedReal(Rational(num_.leading() / den_.leading()));
      int s = (num_.leading() / den_.leading()).sign();
      if (c.is_neg_inf() && (dn - dd) % 2 == 1) s = -s;
      return ExtendedReal::infinity(s);
    }
    // Expand around c: lowest surviving orders decide the limit.
    Polynomial n = num_.shifted(c.value()), d = den_.shifted(c.value());
    int kn = 0, kd = 0;
    while (n.coefficient(kn) == 0) ++kn;
    while (d.coefficient(kd) == 0) ++kd;
    if (kn > kd) return ExtendedReal(0);
    Rational ratio = n.coefficient(kn) / d.coefficient(kd);
    if (kn == kd) return ExtendedReal(ratio);
    int s = ratio.sign();
    if (side == Side::Left && (kd - kn) % 2 == 1) s = -s;
    return ExtendedReal::infinity(s);
  }

  /// The denominator has no root in the open interval (a, b).
  bool pole_free_on(const ExtendedReal& a, const ExtendedReal& b) const {
    return isolate_roots(den_, a, b).empty();
  }

  std::string to_string() const {
    if (is_polynomial()) return num_.to_string();
    return "(" + num_.to_string() + ")/(" + den_.to_string() + ")";
  }

 private:
  void normalize() {
    if (num_.is_zero()) {
      den_ = Polynomial::constant(1);
      return;
    }
    if (den_.degree() > 0) {
      Polynomial g = Polynomial::gcd(num_, den_);
      if (g.degree() > 0) {
        num_ = Polynomial::divmod(num_, g).first;
        den_ = Polynomial::divmod(den_, g).first;
      }
    }
    Rational lc = den_.leading();
    if (lc != 1) {
      Rational inv = 1 / lc;
      num_ = inv * num_;
      den_ = inv * den_;
    }
  }

  Polynomial num_;
  Polynomial den_;
};

/// Free-function form of RationalFunction::limit, the exact one-sided limit oracle used by
/// the Baire operators.
inline ExtendedReal one_sided_limit(const RationalFunction& seg, const ExtendedReal& c, Side side) {
  return seg.limit(c, side);
}

/// Numerator polynomial whose sign on any pole-free interval equals the sign of a - b
/// (the sign of the denominator product is folded in).
inline Polynomial difference_sign_polynomial(const RationalFunction& a, const RationalFunction& b) {
  return (a.num() * b.den() - b.num() * a.den()) * (a.den() * b.den());
}

}  // namespace hcont
