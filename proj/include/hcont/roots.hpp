#pragma once

#include <optional>
#include <vector>

#include "extended_real.hpp"
#include "polynomial.hpp"

namespace hcont {

/// Sturm chain of a squarefree polynomial; counts distinct real roots between rationals.
class SturmChain {
 public:
  explicit SturmChain(const Polynomial& squarefree) {
    chain_.push_back(squarefree);
    if (squarefree.degree() < 1) return;
    chain_.push_back(squarefree.derivative());
    while (chain_.back().degree() > 0) {
      Polynomial r = Polynomial::divmod(chain_[chain_.size() - 2], chain_.back()).second;
      if (r.is_zero()) break;
      chain_.push_back(-r);
    }
  }

  const Polynomial& base() const { return chain_.front(); }

  int variations_at(const Rational& x) const {
    int count = 0, last = 0;
    for (const auto& p : chain_) {
      int s = p(x).sign();
      if (s == 0) continue;
      if (last != 0 && s != last) ++count;
      last = s;
    }
    return count;
  }

  int variations_at(const ExtendedReal& x) const {
    if (x.is_finite()) return variations_at(x.value());
    int count = 0, last = 0;
    for (const auto& p : chain_) {
      if (p.is_zero()) continue;
      int s = p.leading().sign();
      if (x.is_neg_inf() && p.degree() % 2 == 1) s = -s;
      if (last != 0 && s != last) ++count;
      last = s;
    }
    return count;
  }

  /// Number of distinct roots in the open interval (a, b), a < b.
  int count_open(const ExtendedReal& a, const ExtendedReal& b) const {
    int n = variations_at(a) - variations_at(b);
    if (b.is_finite() && base()(b.value()) == 0) --n;
    return n;
  }

 private:
  std::vector<Polynomial> chain_;
};

/// A real root known either exactly (lo == hi) or by an isolating open interval (lo, hi)
/// whose endpoints are not roots.
struct IsolatedRoot {
  Rational lo;
  Rational hi;
  bool exact = false;
};

namespace detail {

/// Bound strictly exceeding every root's modulus.
inline Rational cauchy_bound(const Polynomial& p) {
  Rational m = 0;
  for (int k = 0; k < p.degree(); ++k) m = std::max(m, hcont::abs(p.coefficient(k) / p.leading()));
  return m + 2;
}

inline void isolate(const SturmChain& sc, const Rational& lo, const Rational& hi, std::vector<IsolatedRoot>& out) {
  int n = sc.count_open(lo, hi);
  if (n == 0) return;
  const Polynomial& p = sc.base();
  if (n == 1 && p(lo) != 0 && p(hi) != 0) {
    out.push_back({lo, hi, false});
    return;
  }
  Rational mid = (lo + hi) / 2;
  isolate(sc, lo, mid, out);
  if (p(mid) == 0) out.push_back({mid, mid, true});
  isolate(sc, mid, hi, out);
}

}  // namespace detail

/// Isolates the distinct real roots of p inside the open interval (a, b), sorted.
/// p must not be the zero polynomial.
inline std::vector<IsolatedRoot> isolate_roots(const Polynomial& p, const ExtendedReal& a, const ExtendedReal& b) {
  std::vector<IsolatedRoot> out;
  if (p.degree() < 1 || !(a < b)) return out;
  Polynomial sq = squarefree_part(p);
  SturmChain sc(sq);
  Rational bound = detail::cauchy_bound(sq);
  Rational lo = a.is_finite() ? a.value() : Rational(-bound);
  Rational hi = b.is_finite() ? b.value() : bound;
  if (!(lo < hi)) return out;
  detail::isolate(sc, lo, hi, out);
  return out;
}

/// Halves an inexact isolating interval, keeping the root inside.
inline void bisect_root(const SturmChain& sc, IsolatedRoot& r) {
  if (r.exact) return;
  Rational mid = (r.lo + r.hi) / 2;
  const Polynomial& p = sc.base();
  if (p(mid) == 0) {
    r = {mid, mid, true};
    return;
  }
  if (sc.count_open(r.lo, mid) == 1) r.hi = mid;
  else r.lo = mid;
}

/// The root as a rational, if it is one. Any rational root of an integer polynomial
/// has a denominator dividing the leading coefficient, so an interval narrower than
/// 1/|lead| holds at most one candidate.
inline std::optional<Rational> rational_root(const Polynomial& p, IsolatedRoot r) {
  if (r.exact) return r.lo;
  Polynomial sq = squarefree_part(p);
  SturmChain sc(sq);
  std::vector<Integer> ints = sq.primitive_integer();
  Integer lead = boost::multiprecision::abs(ints.back());
  while (!r.exact && (r.hi - r.lo) * Rational(lead) >= 1) bisect_root(sc, r);
  if (r.exact) return r.lo;
  Integer m = ceil_of(r.lo * Rational(lead));
  Rational cand(m, lead);
  if (r.lo < cand && cand < r.hi && sq(cand) == 0) return cand;
  return std::nullopt;
}

/// One rational sample point per root-free component of (a, b), left to right, where
/// the components are cut out by `roots` (as returned by isolate_roots for p).
inline std::vector<Rational> component_samples(const Polynomial& p, const ExtendedReal& a, const ExtendedReal& b,
                                               std::vector<IsolatedRoot>& roots) {
  std::vector<Rational> pts;
  auto pick_between = [](const ExtendedReal& l, const ExtendedReal& r) -> Rational {
    if (l.is_finite() && r.is_finite()) return (l.value() + r.value()) / 2;
    if (l.is_finite()) return l.value() + 1;
    if (r.is_finite()) return r.value() - 1;
    return Rational(0);
  };
  if (roots.empty()) {
    pts.push_back(pick_between(a, b));
    return pts;
  }
  Polynomial sq = squarefree_part(p);
  SturmChain sc(sq);
  // Keep every inexact interval strictly inside (a, b) so its endpoints sample the
  // neighbouring components.
  for (std::size_t i = 0; i < roots.size(); ++i) {
    auto& r = roots[i];
    while (!r.exact && a.is_finite() && r.lo <= a.value()) bisect_root(sc, r);
    while (!r.exact && b.is_finite() && r.hi >= b.value()) bisect_root(sc, r);
  }
  const auto& first = roots.front();
  pts.push_back(first.exact ? pick_between(a, first.lo) : first.lo);
  for (std::size_t i = 0; i + 1 < roots.size(); ++i) {
    // Inexact endpoints are never roots, so they sit strictly between the two roots.
    const auto& l = roots[i];
    const auto& r = roots[i + 1];
    if (!l.exact) pts.push_back(l.hi);
    else if (!r.exact) pts.push_back(r.lo);
    else pts.push_back((l.lo + r.lo) / 2);
  }
  const auto& last = roots.back();
  pts.push_back(last.exact ? pick_between(last.hi, b) : last.hi);
  return pts;
}

/// Sign of p on the open interval (a, b) when it is constant there (0 for the zero
/// polynomial); nullopt when p changes sign inside.
inline std::optional<int> constant_sign(const Polynomial& p, const ExtendedReal& a, const ExtendedReal& b) {
  if (p.is_zero()) return 0;
  auto roots = isolate_roots(p, a, b);
  auto pts = component_samples(p, a, b, roots);
  int s = p(pts.front()).sign();
  for (const auto& x : pts)
    if (p(x).sign() != s) return std::nullopt;
  return s;
}

/// p >= 0 everywhere on the open interval (a, b).
inline bool nonnegative_on(const Polynomial& p, const ExtendedReal& a, const ExtendedReal& b) {
  if (p.is_zero()) return true;
  auto roots = isolate_roots(p, a, b);
  for (const auto& x : component_samples(p, a, b, roots))
    if (p(x).sign() < 0) return false;
  return true;
}

/// Points inside (a, b) where p changes sign. Each must be rational; an irrational sign
/// change cannot become a breakpoint and raises IrrationalBreakpoint.
inline std::vector<Rational> sign_change_points(const Polynomial& p, const ExtendedReal& a, const ExtendedReal& b) {
  std::vector<Rational> out;
  if (p.is_zero()) return out;
  auto roots = isolate_roots(p, a, b);
  if (roots.empty()) return out;
  auto pts = component_samples(p, a, b, roots);
  for (std::size_t i = 0; i < roots.size(); ++i) {
    if (p(pts[i]).sign() == p(pts[i + 1]).sign()) continue;
    auto q = rational_root(p, roots[i]);
    if (!q) fail(ErrorCode::IrrationalBreakpoint, "sign change of " + p.to_string() + " at an irrational point");
    out.push_back(*q);
  }
  return out;
}

/// All distinct roots inside (a, b), each required to be rational.
inline std::vector<Rational> rational_roots_in(const Polynomial& p, const ExtendedReal& a, const ExtendedReal& b) {
  std::vector<Rational> out;
  if (p.is_zero()) return out;
  for (const auto& r : isolate_roots(p, a, b)) {
    auto q = rational_root(p, r);
    if (!q) fail(ErrorCode::IrrationalBreakpoint, "root of " + p.to_string() + " is irrational");
    out.push_back(*q);
  }
  return out;
}

}  // namespace hcont
