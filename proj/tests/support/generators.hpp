#pragma once

// Random instance generators shared by the unit and acceptance suites.

#include <algorithm>
#include <random>
#include <vector>

#include "hcont/piecewise.hpp"

namespace testgen {

using hcont::ExtendedInterval;
using hcont::ExtendedReal;
using hcont::Polynomial;
using hcont::Rational;
using hcont::RationalFunction;

using Rng = std::mt19937_64;

inline int uniform_int(Rng& rng, int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng); }
inline bool coin(Rng& rng, double p = 0.5) { return std::bernoulli_distribution(p)(rng); }

/// Small rationals p/q with |p| <= span, 1 <= q <= max_den.
inline Rational random_rational(Rng& rng, int span = 12, int max_den = 6) {
  return Rational(uniform_int(rng, -span, span), uniform_int(rng, 1, max_den));
}

inline ExtendedReal random_extended(Rng& rng) {
  int pick = uniform_int(rng, 0, 9);
  if (pick == 0) return ExtendedReal::neg_inf();
  if (pick == 1) return ExtendedReal::pos_inf();
  // Small range so equal endpoints come up often.
  return ExtendedReal(Rational(uniform_int(rng, -4, 4), uniform_int(rng, 1, 2)));
}

inline ExtendedInterval random_interval(Rng& rng) {
  ExtendedReal a = random_extended(rng), b = random_extended(rng);
  if (b < a) std::swap(a, b);
  return {a, b};
}

inline Polynomial random_polynomial(Rng& rng, int max_degree, int span = 6, int max_den = 4) {
  int d = uniform_int(rng, 0, max_degree);
  std::vector<Rational> c;
  for (int k = 0; k <= d; ++k) c.push_back(random_rational(rng, span, max_den));
  return Polynomial(std::move(c));
}

/// Sorted distinct rationals strictly inside (lo, hi).
inline std::vector<Rational> random_points(Rng& rng, const Rational& lo, const Rational& hi, int count, int grid = 24) {
  std::vector<Rational> pts;
  for (int i = 0; i < count; ++i) {
    int k = uniform_int(rng, 1, grid - 1);
    pts.push_back(lo + (hi - lo) * Rational(k, grid));
  }
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  return pts;
}


using hcont::BreakpointValue;
using hcont::Domain1D;
using hcont::PiecewiseFunction;

struct PieceOptions {
  int max_breakpoints = 5;
  int max_degree = 4;
  double pole_probability = 0.25;
  double undefined_probability = 0.2;
  double continuous_value_probability = 0.3;
};

/// A segment for the gap (l, r): a polynomial, or with some probability a rational
/// function whose only poles sit at a finite gap end.
inline RationalFunction random_segment(Rng& rng, const ExtendedReal& l, const ExtendedReal& r, const PieceOptions& o) {
  Polynomial num = random_polynomial(rng, o.max_degree, 6, 3);
  if (!coin(rng, o.pole_probability)) return RationalFunction(num);
  std::vector<Rational> ends;
  if (l.is_finite()) ends.push_back(l.value());
  if (r.is_finite()) ends.push_back(r.value());
  if (ends.empty()) return RationalFunction(num);
  Rational c = ends[static_cast<std::size_t>(uniform_int(rng, 0, static_cast<int>(ends.size()) - 1))];
  Polynomial den = Polynomial::constant(Rational(1));
  int k = uniform_int(rng, 1, 2);
  for (int j = 0; j < k; ++j) den = den * Polynomial::linear_root(c);
  // Keep the total degree within the cap.
  if (num.degree() + k > o.max_degree) num = Polynomial::constant(random_rational(rng) + Rational(1, 3));
  return RationalFunction(num, den);
}

/// Nonnegative polynomial c + d (x - x0)^2, used to widen or shift segments.
inline RationalFunction random_nonnegative(Rng& rng, bool allow_zero = true) {
  Rational c(uniform_int(rng, allow_zero ? 0 : 1, 4), uniform_int(rng, 1, 3));
  Rational d(uniform_int(rng, 0, 2), uniform_int(rng, 1, 3));
  Rational x0 = random_rational(rng, 4, 2);
  Polynomial sq = Polynomial::linear_root(x0) * Polynomial::linear_root(x0);
  return RationalFunction(Polynomial::constant(c) + sq * Polynomial::constant(d));
}

inline Domain1D random_domain(Rng& rng) {
  int pick = uniform_int(rng, 0, 5);
  if (pick == 0) return Domain1D(ExtendedReal::neg_inf(), ExtendedReal::pos_inf());
  if (pick == 1) return Domain1D(ExtendedReal(0), ExtendedReal::pos_inf());
  return Domain1D(-2, 2);
}

/// Breakpoints inside the domain on a coarse rational grid.
inline std::vector<Rational> random_breakpoints(Rng& rng, const Domain1D& d, int max_count) {
  Rational lo = d.left().is_finite() ? d.left().value() : Rational(-3);
  Rational hi = d.right().is_finite() ? d.right().value() : Rational(3);
  if (!d.left().is_finite() && d.right().is_finite()) lo = hi - 5;
  if (d.left().is_finite() && !d.right().is_finite()) hi = lo + 5;
  return random_points(rng, lo, hi, uniform_int(rng, 0, max_count), 16);
}

/// Point valued member of C_nd: rational segments, arbitrary values (or undefined) at the
/// breakpoints.
inline PiecewiseFunction random_cnd_on(Rng& rng, const Domain1D& d, const PieceOptions& o = {}) {
  auto bps = random_breakpoints(rng, d, o.max_breakpoints);
  std::vector<RationalFunction> segs;
  for (std::size_t g = 0; g <= bps.size(); ++g) {
    ExtendedReal l = g == 0 ? d.left() : ExtendedReal(bps[g - 1]);
    ExtendedReal r = g == bps.size() ? d.right() : ExtendedReal(bps[g]);
    segs.push_back(random_segment(rng, l, r, o));
  }
  // Occasionally copy the left segment across a breakpoint to create removable points.
  for (std::size_t g = 1; g < segs.size(); ++g)
    if (coin(rng, 0.2) && segs[g - 1].den()(bps[g - 1]) != 0) segs[g] = segs[g - 1];
  std::vector<BreakpointValue> vals;
  for (std::size_t i = 0; i < bps.size(); ++i) {
    if (coin(rng, o.undefined_probability)) {
      vals.emplace_back();
    } else if (coin(rng, o.continuous_value_probability) && segs[i].den()(bps[i]) != 0) {
      vals.emplace_back(ExtendedInterval(ExtendedReal(segs[i](bps[i]))));
    } else {
      vals.emplace_back(ExtendedInterval(ExtendedReal(random_rational(rng))));
    }
  }
  return PiecewiseFunction::point_valued(d, bps, segs, vals);
}

inline PiecewiseFunction random_cnd(Rng& rng, const PieceOptions& o = {}) { return random_cnd_on(rng, random_domain(rng), o); }

/// Interval valued function: a C_nd lower endpoint widened by a nonnegative polynomial on
/// each gap, with random (possibly infinite) intervals at the breakpoints.
inline PiecewiseFunction random_interval_function(Rng& rng, const PieceOptions& o = {}) {
  PiecewiseFunction u = random_cnd(rng, o);
  std::vector<RationalFunction> up;
  for (const auto& s : u.lower_segments()) up.push_back(coin(rng, 0.3) ? s : s + random_nonnegative(rng));
  std::vector<BreakpointValue> vals;
  for (const auto& v : u.breakpoint_values()) {
    if (!v) {
      vals.emplace_back();
      continue;
    }
    ExtendedInterval w = random_interval(rng);
    if (coin(rng, 0.5)) w = ExtendedInterval(v->lower(), max(v->lower(), w.upper()));
    vals.emplace_back(w);
  }
  return PiecewiseFunction(u.domain(), u.breakpoints(), u.lower_segments(), up, vals);
}

/// Same breakpoints, each endpoint moved up (shift_up) or the interval widened (widen).
inline PiecewiseFunction random_above(Rng& rng, const PiecewiseFunction& f) {
  std::vector<RationalFunction> lo, up;
  for (std::size_t g = 0; g < f.gap_count(); ++g) {
    auto s = coin(rng, 0.3) ? RationalFunction() : random_nonnegative(rng);
    lo.push_back(f.lower_segments()[g] + s);
    up.push_back(f.upper_segments()[g] + s + (coin(rng) ? RationalFunction() : random_nonnegative(rng)));
  }
  std::vector<BreakpointValue> vals;
  for (const auto& v : f.breakpoint_values()) {
    if (!v) {
      vals.emplace_back();
      continue;
    }
    ExtendedReal a = v->lower(), b = v->upper();
    if (a.is_finite() && coin(rng)) a = a + ExtendedReal(Rational(uniform_int(rng, 0, 3)));
    if (coin(rng, 0.1)) b = ExtendedReal::pos_inf();
    else if (b.is_finite()) b = b + ExtendedReal(Rational(uniform_int(rng, 0, 3)));
    vals.emplace_back(ExtendedInterval(a, max(a, b)));
  }
  return PiecewiseFunction(f.domain(), f.breakpoints(), lo, up, vals);
}

/// Point valued v >= u off the breakpoints: each gap segment raised by a nonnegative
/// polynomial, values at the breakpoints arbitrary.
inline PiecewiseFunction random_point_above(Rng& rng, const PiecewiseFunction& u) {
  std::vector<RationalFunction> segs;
  for (const auto& s : u.lower_segments()) segs.push_back(coin(rng, 0.3) ? s : s + random_nonnegative(rng));
  std::vector<BreakpointValue> vals;
  for (std::size_t i = 0; i < u.breakpoints().size(); ++i)
    vals.push_back(coin(rng, 0.2) ? BreakpointValue{} : BreakpointValue(ExtendedInterval(ExtendedReal(random_rational(rng)))));
  return PiecewiseFunction::point_valued(u.domain(), u.breakpoints(), segs, vals);
}

/// u with its values redefined (or removed) on a finite set, including new points.
inline PiecewiseFunction redefine_on_finite_set(Rng& rng, const PiecewiseFunction& u) {
  auto extra = random_breakpoints(rng, u.domain(), 3);
  PiecewiseFunction r = hcont::refine(u, extra);
  auto vals = r.breakpoint_values();
  for (auto& v : vals) {
    if (coin(rng, 0.5)) continue;
    v = coin(rng, 0.3) ? BreakpointValue{} : BreakpointValue(ExtendedInterval(ExtendedReal(random_rational(rng))));
  }
  return r.with_values(std::move(vals));
}

/// Same breakpoints, lower moved down and upper moved up.
inline PiecewiseFunction random_superset(Rng& rng, const PiecewiseFunction& f) {
  std::vector<RationalFunction> lo, up;
  for (std::size_t g = 0; g < f.gap_count(); ++g) {
    lo.push_back(coin(rng, 0.4) ? f.lower_segments()[g] : f.lower_segments()[g] - random_nonnegative(rng));
    up.push_back(coin(rng, 0.4) ? f.upper_segments()[g] : f.upper_segments()[g] + random_nonnegative(rng));
  }
  std::vector<BreakpointValue> vals;
  for (const auto& v : f.breakpoint_values()) {
    if (!v) {
      vals.emplace_back();
      continue;
    }
    ExtendedReal a = v->lower(), b = v->upper();
    if (a.is_finite() && coin(rng)) a = a - ExtendedReal(Rational(uniform_int(rng, 0, 3)));
    if (b.is_finite() && coin(rng)) b = b + ExtendedReal(Rational(uniform_int(rng, 0, 3)));
    vals.emplace_back(ExtendedInterval(a, b));
  }
  return PiecewiseFunction(f.domain(), f.breakpoints(), lo, up, vals);
}

}  // namespace testgen
