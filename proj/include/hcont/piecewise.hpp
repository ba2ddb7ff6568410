#pragma once

#include <algorithm>
#include <atomic>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "interval.hpp"
#include "rational_function.hpp"

namespace hcont {

/// Default cap on segment degree for externally supplied functions.
inline std::atomic<int>& max_degree_setting() {
  static std::atomic<int> cap{8};
  return cap;
}

/// The open interval (left, right); endpoints may be infinite.
class Domain1D {
 public:
  Domain1D(ExtendedReal left, ExtendedReal right) : left_(std::move(left)), right_(std::move(right)) {
    if (!(left_ < right_)) fail(ErrorCode::InvalidInterval, "domain requires left < right");
  }

  const ExtendedReal& left() const noexcept { return left_; }
  const ExtendedReal& right() const noexcept { return right_; }
  bool is_bounded() const { return left_.is_finite() && right_.is_finite(); }
  bool contains(const Rational& x) const { return left_ < ExtendedReal(x) && ExtendedReal(x) < right_; }

  friend bool operator==(const Domain1D&, const Domain1D&) = default;

 private:
  ExtendedReal left_;
  ExtendedReal right_;
};

/// Finite, strictly increasing set of rationals: closed, nowhere dense, null.
class ExceptionalSet {
 public:
  ExceptionalSet() = default;
  explicit ExceptionalSet(std::vector<Rational> pts) : pts_(std::move(pts)) {
    std::sort(pts_.begin(), pts_.end());
    pts_.erase(std::unique(pts_.begin(), pts_.end()), pts_.end());
  }

  const std::vector<Rational>& points() const noexcept { return pts_; }
  std::size_t size() const noexcept { return pts_.size(); }
  bool empty() const noexcept { return pts_.empty(); }
  bool contains(const Rational& x) const { return std::binary_search(pts_.begin(), pts_.end(), x); }
  bool includes(const ExceptionalSet& other) const {
    return std::includes(pts_.begin(), pts_.end(), other.pts_.begin(), other.pts_.end());
  }

  friend ExceptionalSet set_union(const ExceptionalSet& a, const ExceptionalSet& b) {
    std::vector<Rational> out;
    std::set_union(a.pts_.begin(), a.pts_.end(), b.pts_.begin(), b.pts_.end(), std::back_inserter(out));
    return ExceptionalSet(std::move(out));
  }

  friend bool operator==(const ExceptionalSet&, const ExceptionalSet&) = default;

 private:
  std::vector<Rational> pts_;
};

/// Omega minus a finite exceptional set: open and dense in Omega.
class DenseDomain {
 public:
  explicit DenseDomain(Domain1D domain, ExceptionalSet removed = {}) : domain_(std::move(domain)), removed_(std::move(removed)) {
    for (const auto& p : removed_.points())
      if (!domain_.contains(p)) fail(ErrorCode::OutOfDomain, "removed point " + to_string(p) + " lies outside the domain");
  }

  const Domain1D& domain() const noexcept { return domain_; }
  const ExceptionalSet& removed() const noexcept { return removed_; }
  bool contains(const Rational& x) const { return domain_.contains(x) && !removed_.contains(x); }
  bool is_subset_of(const DenseDomain& other) const {
    return domain_ == other.domain_ && removed_.includes(other.removed_);
  }

 private:
  Domain1D domain_;
  ExceptionalSet removed_;
};

/// Value stored at a breakpoint; nullopt marks a point outside the domain of definition.
using BreakpointValue = std::optional<ExtendedInterval>;

enum class Endpoint { Lower, Upper };

/// Interval valued function on a 1D domain: rational segments on the gaps between
/// finitely many breakpoints, plus an explicit value (or "undefined") at each breakpoint.
class PiecewiseFunction {
 public:
  struct Trusted {};

  PiecewiseFunction(Domain1D domain, std::vector<Rational> breakpoints, std::vector<RationalFunction> lower,
                    std::vector<RationalFunction> upper, std::vector<BreakpointValue> values)
      : PiecewiseFunction(Trusted{}, std::move(domain), std::move(breakpoints), std::move(lower), std::move(upper),
                          std::move(values)) {
    validate_segments();
  }

  /// Internal constructor for results derived from already validated functions: checks
  /// structure only.
  PiecewiseFunction(Trusted, Domain1D domain, std::vector<Rational> breakpoints, std::vector<RationalFunction> lower,
                    std::vector<RationalFunction> upper, std::vector<BreakpointValue> values)
      : domain_(std::move(domain)),
        bps_(std::move(breakpoints)),
        lower_(std::move(lower)),
        upper_(std::move(upper)),
        values_(std::move(values)) {
    validate_structure();
  }

  static PiecewiseFunction point_valued(Domain1D domain, std::vector<Rational> breakpoints,
                                        std::vector<RationalFunction> segments, std::vector<BreakpointValue> values) {
    auto upper = segments;
    return PiecewiseFunction(std::move(domain), std::move(breakpoints), std::move(segments), std::move(upper),
                             std::move(values));
  }

  static PiecewiseFunction constant(Domain1D domain, const Rational& lo, const Rational& hi) {
    return PiecewiseFunction(std::move(domain), {}, {RationalFunction::constant(lo)}, {RationalFunction::constant(hi)}, {});
  }
  static PiecewiseFunction constant(Domain1D domain, const Rational& v) { return constant(std::move(domain), v, v); }

  const Domain1D& domain() const noexcept { return domain_; }
  const std::vector<Rational>& breakpoints() const noexcept { return bps_; }
  const std::vector<RationalFunction>& lower_segments() const noexcept { return lower_; }
  const std::vector<RationalFunction>& upper_segments() const noexcept { return upper_; }
  const std::vector<BreakpointValue>& breakpoint_values() const noexcept { return values_; }
  std::size_t gap_count() const noexcept { return lower_.size(); }

  const RationalFunction& segment(Endpoint e, std::size_t gap) const { return e == Endpoint::Lower ? lower_[gap] : upper_[gap]; }
  const std::vector<RationalFunction>& segments(Endpoint e) const { return e == Endpoint::Lower ? lower_ : upper_; }

  ExtendedReal gap_left(std::size_t gap) const { return gap == 0 ? domain_.left() : ExtendedReal(bps_[gap - 1]); }
  ExtendedReal gap_right(std::size_t gap) const { return gap == bps_.size() ? domain_.right() : ExtendedReal(bps_[gap]); }

  /// Limits of an endpoint function at breakpoint i from the adjacent gaps.
  ExtendedReal left_limit(Endpoint e, std::size_t i) const { return segment(e, i).limit(bps_[i], Side::Left); }
  ExtendedReal right_limit(Endpoint e, std::size_t i) const { return segment(e, i + 1).limit(bps_[i], Side::Right); }

  /// Breakpoint index of x, if x is a breakpoint.
  std::optional<std::size_t> breakpoint_index(const Rational& x) const {
    auto it = std::lower_bound(bps_.begin(), bps_.end(), x);
    if (it != bps_.end() && *it == x) return static_cast<std::size_t>(it - bps_.begin());
    return std::nullopt;
  }

  /// Gap containing a non-breakpoint x; for a breakpoint, the gap to its right.
  std::size_t gap_of(const Rational& x) const {
    return static_cast<std::size_t>(std::upper_bound(bps_.begin(), bps_.end(), x) - bps_.begin());
  }

  bool is_defined_at(const Rational& x) const {
    if (!domain_.contains(x)) return false;
    auto i = breakpoint_index(x);
    return !i || values_[*i].has_value();
  }

  ExtendedInterval evaluate(const Rational& x) const {
    if (!domain_.contains(x)) fail(ErrorCode::OutOfDomain, "x = " + hcont::to_string(x) + " is outside the domain");
    if (auto i = breakpoint_index(x)) {
      if (!values_[*i]) fail(ErrorCode::UndefinedPoint, "function is undefined at x = " + hcont::to_string(x));
      return *values_[*i];
    }
    std::size_t g = gap_of(x);
    return {ExtendedReal(lower_[g](x)), ExtendedReal(upper_[g](x))};
  }

  ExceptionalSet undefined_points() const {
    std::vector<Rational> pts;
    for (std::size_t i = 0; i < bps_.size(); ++i)
      if (!values_[i]) pts.push_back(bps_[i]);
    return ExceptionalSet(std::move(pts));
  }

  bool is_total() const {
    return std::all_of(values_.begin(), values_.end(), [](const auto& v) { return v.has_value(); });
  }

  /// All gap segments coincide and every defined breakpoint value is degenerate.
  bool is_point_valued() const {
    for (std::size_t g = 0; g < lower_.size(); ++g)
      if (!(lower_[g] == upper_[g])) return false;
    return std::all_of(values_.begin(), values_.end(), [](const auto& v) { return !v || v->is_degenerate(); });
  }

  int max_degree() const {
    int d = 0;
    for (const auto& s : lower_) d = std::max(d, s.degree());
    for (const auto& s : upper_) d = std::max(d, s.degree());
    return d;
  }

  PiecewiseFunction with_values(std::vector<BreakpointValue> values) const {
    return {Trusted{}, domain_, bps_, lower_, upper_, std::move(values)};
  }

  std::string to_string() const {
    std::string s = "{(" + hcont::to_string(domain_.left()) + ", " + hcont::to_string(domain_.right()) + "):";
    for (std::size_t g = 0; g < lower_.size(); ++g) {
      s += " [" + lower_[g].to_string() + ", " + upper_[g].to_string() + "]";
      if (g < bps_.size())
        s += " |" + hcont::to_string(bps_[g]) + "=" + (values_[g] ? hcont::to_string(*values_[g]) : "undefined") + "|";
    }
    return s + "}";
  }

 private:
  void validate_structure() const {
    if (lower_.size() != bps_.size() + 1 || upper_.size() != bps_.size() + 1)
      fail(ErrorCode::MalformedSegment, "expected one segment per gap (" + std::to_string(bps_.size() + 1) + ")");
    if (values_.size() != bps_.size())
      fail(ErrorCode::MalformedSegment, "expected one value per breakpoint (" + std::to_string(bps_.size()) + ")");
    for (std::size_t i = 0; i < bps_.size(); ++i) {
      if (!domain_.contains(bps_[i])) fail(ErrorCode::OutOfDomain, "breakpoint " + hcont::to_string(bps_[i]) + " outside domain");
      if (i > 0 && !(bps_[i - 1] < bps_[i])) fail(ErrorCode::MalformedSegment, "breakpoints must be strictly increasing");
    }
  }

  void validate_segments() const {
    for (std::size_t g = 0; g < lower_.size(); ++g) {
      ExtendedReal l = gap_left(g), r = gap_right(g);
      if (!lower_[g].pole_free_on(l, r) || !upper_[g].pole_free_on(l, r))
        fail(ErrorCode::MalformedSegment, "segment " + std::to_string(g) + " has a pole inside its gap");
      if (!(lower_[g] == upper_[g]) && !nonnegative_on(difference_sign_polynomial(upper_[g], lower_[g]), l, r))
        fail(ErrorCode::InvalidInterval, "lower segment exceeds upper segment on gap " + std::to_string(g));
    }
  }

  Domain1D domain_;
  std::vector<Rational> bps_;
  std::vector<RationalFunction> lower_;
  std::vector<RationalFunction> upper_;
  std::vector<BreakpointValue> values_;
};

/// Same function with extra breakpoints; the value stored at a new point is the
/// continuous segment value there, so evaluation is unchanged.
inline PiecewiseFunction refine(const PiecewiseFunction& f, const std::vector<Rational>& extra) {
  std::vector<Rational> pts = f.breakpoints();
  for (const auto& p : extra)
    if (f.domain().contains(p)) pts.push_back(p);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() == f.breakpoints().size()) return f;
  std::vector<RationalFunction> lo, up;
  std::vector<BreakpointValue> vals;
  for (std::size_t k = 0; k <= pts.size(); ++k) {
    // gap_of maps a breakpoint to the gap on its right.
    std::size_t g = k == 0 ? 0 : f.gap_of(pts[k - 1]);
    lo.push_back(f.lower_segments()[g]);
    up.push_back(f.upper_segments()[g]);
  }
  for (const auto& p : pts) {
    if (auto i = f.breakpoint_index(p)) {
      vals.push_back(f.breakpoint_values()[*i]);
    } else {
      std::size_t g = f.gap_of(p);
      vals.push_back(ExtendedInterval(ExtendedReal(f.lower_segments()[g](p)), ExtendedReal(f.upper_segments()[g](p))));
    }
  }
  return {PiecewiseFunction::Trusted{}, f.domain(), std::move(pts), std::move(lo), std::move(up), std::move(vals)};
}

inline void require_same_domain(const PiecewiseFunction& f, const PiecewiseFunction& g) {
  if (!(f.domain() == g.domain())) fail(ErrorCode::DomainMismatch, "functions live on different domains");
}

inline std::pair<PiecewiseFunction, PiecewiseFunction> refine_to_common_partition(const PiecewiseFunction& f,
                                                                                   const PiecewiseFunction& g) {
  require_same_domain(f, g);
  return {refine(f, g.breakpoints()), refine(g, f.breakpoints())};
}

/// Equal as functions: same values at every point, same undefined points.
inline bool same_function(const PiecewiseFunction& f, const PiecewiseFunction& g) {
  if (!(f.domain() == g.domain())) return false;
  auto [a, b] = refine_to_common_partition(f, g);
  return a.lower_segments() == b.lower_segments() && a.upper_segments() == b.upper_segments() &&
         a.breakpoint_values() == b.breakpoint_values();
}

namespace detail {

/// a <= b on the open gap (both pole free there).
inline bool segment_leq(const RationalFunction& a, const RationalFunction& b, const ExtendedReal& l, const ExtendedReal& r) {
  if (a == b) return true;
  return nonnegative_on(difference_sign_polynomial(b, a), l, r);
}

}  // namespace detail

/// f(x) <= g(x) in the interval order at every point where both are defined.
inline bool pointwise_leq(const PiecewiseFunction& f, const PiecewiseFunction& g) {
  auto [a, b] = refine_to_common_partition(f, g);
  for (std::size_t k = 0; k < a.gap_count(); ++k) {
    ExtendedReal l = a.gap_left(k), r = a.gap_right(k);
    if (!detail::segment_leq(a.lower_segments()[k], b.lower_segments()[k], l, r)) return false;
    if (!detail::segment_leq(a.upper_segments()[k], b.upper_segments()[k], l, r)) return false;
  }
  for (std::size_t i = 0; i < a.breakpoints().size(); ++i) {
    const auto& u = a.breakpoint_values()[i];
    const auto& v = b.breakpoint_values()[i];
    if (u && v && !leq(*u, *v)) return false;
  }
  return true;
}

/// f(x) is contained in g(x) at every point where both are defined.
inline bool pointwise_subset(const PiecewiseFunction& f, const PiecewiseFunction& g) {
  auto [a, b] = refine_to_common_partition(f, g);
  for (std::size_t k = 0; k < a.gap_count(); ++k) {
    ExtendedReal l = a.gap_left(k), r = a.gap_right(k);
    if (!detail::segment_leq(b.lower_segments()[k], a.lower_segments()[k], l, r)) return false;
    if (!detail::segment_leq(a.upper_segments()[k], b.upper_segments()[k], l, r)) return false;
  }
  for (std::size_t i = 0; i < a.breakpoints().size(); ++i) {
    const auto& u = a.breakpoint_values()[i];
    const auto& v = b.breakpoint_values()[i];
    if (u && v && !subset_of(*u, *v)) return false;
  }
  return true;
}

/// The point valued functions f_lower, f_upper with f = [f_lower, f_upper].
inline std::pair<PiecewiseFunction, PiecewiseFunction> endpoint_functions(const PiecewiseFunction& f) {
  std::vector<BreakpointValue> lo, up;
  for (const auto& v : f.breakpoint_values()) {
    lo.push_back(v ? BreakpointValue(ExtendedInterval(v->lower())) : std::nullopt);
    up.push_back(v ? BreakpointValue(ExtendedInterval(v->upper())) : std::nullopt);
  }
  return {PiecewiseFunction(PiecewiseFunction::Trusted{}, f.domain(), f.breakpoints(), f.lower_segments(),
                            f.lower_segments(), std::move(lo)),
          PiecewiseFunction(PiecewiseFunction::Trusted{}, f.domain(), f.breakpoints(), f.upper_segments(),
                            f.upper_segments(), std::move(up))};
}

/// Re-pairs two point valued functions into [lower, upper]; lower <= upper required.
inline PiecewiseFunction from_endpoints(const PiecewiseFunction& lower, const PiecewiseFunction& upper) {
  auto [a, b] = refine_to_common_partition(lower, upper);
  std::vector<BreakpointValue> vals;
  for (std::size_t i = 0; i < a.breakpoints().size(); ++i) {
    const auto& u = a.breakpoint_values()[i];
    const auto& v = b.breakpoint_values()[i];
    if (u.has_value() != v.has_value()) fail(ErrorCode::DomainMismatch, "endpoint functions are defined on different sets");
    vals.push_back(u ? BreakpointValue(ExtendedInterval(u->lower(), v->upper())) : std::nullopt);
  }
  return PiecewiseFunction(a.domain(), a.breakpoints(), a.lower_segments(), b.upper_segments(), std::move(vals));
}

/// Restriction to a subdomain (left, right) of f's domain.
inline PiecewiseFunction restrict_to(const PiecewiseFunction& f, const Domain1D& sub) {
  if (sub.left() < f.domain().left() || f.domain().right() < sub.right())
    fail(ErrorCode::DomainMismatch, "restriction target is not a subdomain");
  std::vector<Rational> pts;
  std::vector<RationalFunction> lo, up;
  std::vector<BreakpointValue> vals;
  std::size_t first_gap =
      sub.left().is_finite() && f.domain().contains(sub.left().value()) ? f.gap_of(sub.left().value()) : 0;
  lo.push_back(f.lower_segments()[first_gap]);
  up.push_back(f.upper_segments()[first_gap]);
  for (std::size_t i = 0; i < f.breakpoints().size(); ++i) {
    if (!sub.contains(f.breakpoints()[i])) continue;
    pts.push_back(f.breakpoints()[i]);
    vals.push_back(f.breakpoint_values()[i]);
    lo.push_back(f.lower_segments()[i + 1]);
    up.push_back(f.upper_segments()[i + 1]);
  }
  return {PiecewiseFunction::Trusted{}, sub, std::move(pts), std::move(lo), std::move(up), std::move(vals)};
}

/// Drops breakpoints that carry no information: identical segments on both sides and a
/// stored value equal to the continuous value.
inline PiecewiseFunction canonicalize(const PiecewiseFunction& f) {
  std::vector<Rational> pts;
  std::vector<RationalFunction> lo{f.lower_segments()[0]}, up{f.upper_segments()[0]};
  std::vector<BreakpointValue> vals;
  for (std::size_t i = 0; i < f.breakpoints().size(); ++i) {
    const auto& x = f.breakpoints()[i];
    const auto& nl = f.lower_segments()[i + 1];
    const auto& nu = f.upper_segments()[i + 1];
    const auto& v = f.breakpoint_values()[i];
    bool removable = lo.back() == nl && up.back() == nu && v && nl.den()(x) != 0 && nu.den()(x) != 0 &&
                     *v == ExtendedInterval(ExtendedReal(nl(x)), ExtendedReal(nu(x)));
    if (removable) continue;
    pts.push_back(x);
    vals.push_back(v);
    lo.push_back(nl);
    up.push_back(nu);
  }
  return {PiecewiseFunction::Trusted{}, f.domain(), std::move(pts), std::move(lo), std::move(up), std::move(vals)};
}

}  // namespace hcont
