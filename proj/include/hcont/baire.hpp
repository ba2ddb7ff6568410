#pragma once

#include <vector>

#include "grid.hpp"
#include "piecewise.hpp"

namespace hcont {

namespace detail {

inline void require_defined_on(const DenseDomain& d, const PiecewiseFunction& f) {
  if (!(d.domain() == f.domain())) fail(ErrorCode::DomainMismatch, "dense set and function live on different domains");
  ExceptionalSet undefined = f.undefined_points();
  for (const auto& p : undefined.points())
    if (!d.removed().contains(p))
      fail(ErrorCode::UndefinedOnDense, "function is undefined at x = " + to_string(p) + ", which lies in the dense set");
}

/// Breakpoint values of the lower (take_min) or upper envelope of one endpoint function.
inline std::vector<BreakpointValue> envelope_values(const DenseDomain& d, const PiecewiseFunction& f, Endpoint e,
                                                    bool take_min) {
  std::vector<BreakpointValue> vals;
  const auto& bps = f.breakpoints();
  for (std::size_t i = 0; i < bps.size(); ++i) {
    ExtendedReal l = f.left_limit(e, i), r = f.right_limit(e, i);
    ExtendedReal v = take_min ? min(l, r) : max(l, r);
    if (d.contains(bps[i])) {
      const auto& own = f.breakpoint_values()[i];
      const ExtendedReal& w = e == Endpoint::Lower ? own->lower() : own->upper();
      v = take_min ? min(v, w) : max(v, w);
    }
    vals.emplace_back(ExtendedInterval(v));
  }
  return vals;
}

inline PiecewiseFunction envelope(const DenseDomain& d, const PiecewiseFunction& f, Endpoint e, bool take_min) {
  require_defined_on(d, f);
  PiecewiseFunction g = refine(f, d.removed().points());
  auto vals = envelope_values(d, g, e, take_min);
  const auto& segs = g.segments(e);
  return canonicalize(PiecewiseFunction(PiecewiseFunction::Trusted{}, g.domain(), g.breakpoints(), segs, segs, std::move(vals)));
}

}  // namespace detail

/// I(D, Omega, f): at each x the liminf of the lower endpoint over points of D near x.
/// Point valued and defined on all of Omega.
inline PiecewiseFunction lower_baire(const DenseDomain& d, const PiecewiseFunction& f) {
  return detail::envelope(d, f, Endpoint::Lower, true);
}

/// S(D, Omega, f): the limsup of the upper endpoint over D.
inline PiecewiseFunction upper_baire(const DenseDomain& d, const PiecewiseFunction& f) {
  return detail::envelope(d, f, Endpoint::Upper, false);
}

/// F(D, Omega, f) = [I(D, Omega, f), S(D, Omega, f)].
inline PiecewiseFunction graph_completion(const DenseDomain& d, const PiecewiseFunction& f) {
  detail::require_defined_on(d, f);
  PiecewiseFunction g = refine(f, d.removed().points());
  auto lo = detail::envelope_values(d, g, Endpoint::Lower, true);
  auto up = detail::envelope_values(d, g, Endpoint::Upper, false);
  std::vector<BreakpointValue> vals;
  for (std::size_t i = 0; i < lo.size(); ++i) vals.emplace_back(ExtendedInterval(lo[i]->lower(), up[i]->upper()));
  return canonicalize(PiecewiseFunction(PiecewiseFunction::Trusted{}, g.domain(), g.breakpoints(), g.lower_segments(),
                                        g.upper_segments(), std::move(vals)));
}

/// The largest dense set the function is defined on: Omega minus its undefined points.
inline DenseDomain definition_domain(const PiecewiseFunction& f) { return DenseDomain(f.domain(), f.undefined_points()); }

inline PiecewiseFunction lower_baire(const PiecewiseFunction& f) { return lower_baire(definition_domain(f), f); }
inline PiecewiseFunction upper_baire(const PiecewiseFunction& f) { return upper_baire(definition_domain(f), f); }
inline PiecewiseFunction graph_completion(const PiecewiseFunction& f) { return graph_completion(definition_domain(f), f); }

/// Interior nodes left + (i + 1) (right - left) / (n + 1), i = 0..n-1, of a bounded domain.
inline std::vector<Rational> grid_nodes(const Domain1D& d, std::size_t n) {
  if (!d.is_bounded()) fail(ErrorCode::OutOfDomain, "sampling needs a bounded domain");
  Rational a = d.left().value(), b = d.right().value();
  std::vector<Rational> xs;
  for (std::size_t i = 0; i < n; ++i)
    xs.push_back(a + (b - a) * Rational(static_cast<long long>(i + 1), static_cast<long long>(n + 1)));
  return xs;
}

/// Exact values at n interior nodes rounded to double; undefined nodes take the
/// graph completion value.
inline GridIntervalFunction sample_to_grid(const PiecewiseFunction& f, std::size_t n) {
  if (n < 2) fail(ErrorCode::OutOfDomain, "a grid needs at least 2 nodes");
  auto xs = grid_nodes(f.domain(), n);
  PiecewiseFunction total = f.is_total() ? f : graph_completion(f);
  Rational a = f.domain().left().value(), b = f.domain().right().value();
  GridIntervalFunction g({to_double(a)}, {to_double(b)}, {n});
  for (std::size_t i = 0; i < n; ++i) {
    auto v = total.evaluate(xs[i]);
    g.lower()[i] = v.lower().to_double();
    g.upper()[i] = v.upper().to_double();
  }
  return g;
}

}  // namespace hcont
