#pragma once

#include <compare>
#include <limits>
#include <ostream>
#include <string>
#include <string_view>

#include "rational.hpp"

namespace hcont {

/// An element of the extended real line: an exact rational or one of -inf / +inf.
/// Arithmetic never silently saturates: inf - inf and 0 * inf throw IndeterminateForm.
class ExtendedReal {
 public:
  enum class Kind : unsigned char { NegInf, Finite, PosInf };

  ExtendedReal() = default;
  ExtendedReal(Rational v) : value_(std::move(v)) {}  // NOLINT(implicit)
  ExtendedReal(long long v) : value_(v) {}            // NOLINT(implicit)
  ExtendedReal(int v) : value_(v) {}                  // NOLINT(implicit)

  static ExtendedReal neg_inf() { return ExtendedReal(Kind::NegInf); }
  static ExtendedReal pos_inf() { return ExtendedReal(Kind::PosInf); }
  /// Signed infinity: +inf when s > 0, -inf when s < 0.
  static ExtendedReal infinity(int s) { return s > 0 ? pos_inf() : neg_inf(); }

  Kind kind() const noexcept { return kind_; }
  bool is_finite() const noexcept { return kind_ == Kind::Finite; }
  bool is_pos_inf() const noexcept { return kind_ == Kind::PosInf; }
  bool is_neg_inf() const noexcept { return kind_ == Kind::NegInf; }

  const Rational& value() const {
    if (!is_finite()) fail(ErrorCode::IndeterminateForm, "value() of an infinite extended real");
    return value_;
  }

  int sign() const noexcept {
    switch (kind_) {
      case Kind::NegInf: return -1;
      case Kind::PosInf: return 1;
      default: return value_.sign();
    }
  }

  friend bool operator==(const ExtendedReal& a, const ExtendedReal& b) {
    return a.kind_ == b.kind_ && (!a.is_finite() || a.value_ == b.value_);
  }

  friend std::strong_ordering operator<=>(const ExtendedReal& a, const ExtendedReal& b) {
    if (a.kind_ != b.kind_) return static_cast<int>(a.kind_) <=> static_cast<int>(b.kind_);
    if (!a.is_finite()) return std::strong_ordering::equal;
    if (a.value_ < b.value_) return std::strong_ordering::less;
    if (b.value_ < a.value_) return std::strong_ordering::greater;
    return std::strong_ordering::equal;
  }

  ExtendedReal operator-() const {
    switch (kind_) {
      case Kind::NegInf: return pos_inf();
      case Kind::PosInf: return neg_inf();
      default: return ExtendedReal(Rational(-value_));
    }
  }

  friend ExtendedReal operator+(const ExtendedReal& a, const ExtendedReal& b) {
    if (a.is_finite() && b.is_finite()) return ExtendedReal(Rational(a.value_ + b.value_));
    if (!a.is_finite() && !b.is_finite() && a.kind_ != b.kind_)
      fail(ErrorCode::IndeterminateForm, "inf - inf");
    return a.is_finite() ? b : a;
  }

  friend ExtendedReal operator-(const ExtendedReal& a, const ExtendedReal& b) { return a + (-b); }

  friend ExtendedReal operator*(const ExtendedReal& a, const ExtendedReal& b) {
    if (a.is_finite() && b.is_finite()) return ExtendedReal(Rational(a.value_ * b.value_));
    int s = a.sign() * b.sign();
    if (s == 0) fail(ErrorCode::IndeterminateForm, "0 * inf");
    return infinity(s);
  }

  double to_double() const {
    switch (kind_) {
      case Kind::NegInf: return -std::numeric_limits<double>::infinity();
      case Kind::PosInf: return std::numeric_limits<double>::infinity();
      default: return hcont::to_double(value_);
    }
  }

 private:
  explicit ExtendedReal(Kind k) : kind_(k) {}

  Kind kind_ = Kind::Finite;
  Rational value_;
};

inline ExtendedReal abs(const ExtendedReal& a) { return a.sign() < 0 ? -a : a; }
inline const ExtendedReal& min(const ExtendedReal& a, const ExtendedReal& b) { return b < a ? b : a; }
inline const ExtendedReal& max(const ExtendedReal& a, const ExtendedReal& b) { return a < b ? b : a; }

inline std::string to_string(const ExtendedReal& a) {
  if (a.is_pos_inf()) return "+inf";
  if (a.is_neg_inf()) return "-inf";
  return to_string(a.value());
}

inline ExtendedReal parse_extended_real(std::string_view text) {
  if (text == "+inf" || text == "inf") return ExtendedReal::pos_inf();
  if (text == "-inf") return ExtendedReal::neg_inf();
  return ExtendedReal(parse_rational(text));
}

inline std::ostream& operator<<(std::ostream& os, const ExtendedReal& a) { return os << to_string(a); }

}  // namespace hcont
