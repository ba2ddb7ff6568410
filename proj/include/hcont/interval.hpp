#pragma once

#include <ostream>
#include <string>

#include "extended_real.hpp"

namespace hcont {

/// A closed interval [lower, upper] of extended reals. Degenerate intervals stand for
/// the points of the extended real line.
class ExtendedInterval {
 public:
  ExtendedInterval() = default;
  /// Degenerate interval [v, v].
  ExtendedInterval(ExtendedReal v) : lower_(v), upper_(std::move(v)) {}  // NOLINT(implicit)
  ExtendedInterval(ExtendedReal lower, ExtendedReal upper) : lower_(std::move(lower)), upper_(std::move(upper)) {
    if (upper_ < lower_)
      fail(ErrorCode::InvalidInterval, "lower endpoint " + to_string(lower_) + " exceeds upper " + to_string(upper_));
  }

  const ExtendedReal& lower() const noexcept { return lower_; }
  const ExtendedReal& upper() const noexcept { return upper_; }

  bool is_degenerate() const { return lower_ == upper_; }
  bool is_proper() const { return !is_degenerate(); }
  bool is_finite() const { return lower_.is_finite() && upper_.is_finite(); }
  bool contains(const ExtendedReal& v) const { return lower_ <= v && v <= upper_; }

  friend bool operator==(const ExtendedInterval&, const ExtendedInterval&) = default;

 private:
  ExtendedReal lower_;
  ExtendedReal upper_;
};

/// Width: upper - lower for finite endpoints, +inf when an endpoint is infinite and the
/// interval is proper, 0 for [-inf,-inf] and [+inf,+inf].
inline ExtendedReal width(const ExtendedInterval& a) {
  if (a.is_degenerate()) return ExtendedReal(0);
  if (a.is_finite()) return a.upper() - a.lower();
  return ExtendedReal::pos_inf();
}

inline ExtendedReal modulus(const ExtendedInterval& a) { return max(abs(a.lower()), abs(a.upper())); }

/// The endpointwise order: lower <= lower and upper <= upper.
inline bool leq(const ExtendedInterval& a, const ExtendedInterval& b) {
  return a.lower() <= b.lower() && a.upper() <= b.upper();
}

inline bool subset_of(const ExtendedInterval& a, const ExtendedInterval& b) {
  return b.lower() <= a.lower() && a.upper() <= b.upper();
}

/// a lies entirely to the left of b (sharing at most an endpoint).
inline bool strong_leq(const ExtendedInterval& a, const ExtendedInterval& b) { return a.upper() <= b.lower(); }

inline ExtendedInterval join(const ExtendedInterval& a, const ExtendedInterval& b) {
  return {max(a.lower(), b.lower()), max(a.upper(), b.upper())};
}

inline ExtendedInterval meet(const ExtendedInterval& a, const ExtendedInterval& b) {
  return {min(a.lower(), b.lower()), min(a.upper(), b.upper())};
}

/// Smallest interval containing both.
inline ExtendedInterval hull(const ExtendedInterval& a, const ExtendedInterval& b) {
  return {min(a.lower(), b.lower()), max(a.upper(), b.upper())};
}

inline std::string to_string(const ExtendedInterval& a) {
  return "[" + to_string(a.lower()) + ", " + to_string(a.upper()) + "]";
}

inline std::ostream& operator<<(std::ostream& os, const ExtendedInterval& a) { return os << to_string(a); }

}  // namespace hcont
