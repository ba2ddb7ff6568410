#pragma once

#include <optional>
#include <vector>

#include "hausdorff.hpp"

namespace hcont {

/// u ~ v: equal off a finite set, decided through the canonical completions F0(u) = F0(v).
inline bool equivalent(const PiecewiseFunction& u, const PiecewiseFunction& v) {
  require_same_domain(u, v);
  return same_function(graph_completion_map_F0(u), graph_completion_map_F0(v));
}

/// u ~ v from the definition: the gap segments agree on a common partition.
inline bool equivalent_direct(const PiecewiseFunction& u, const PiecewiseFunction& v) {
  detail::require_point_valued(u);
  detail::require_point_valued(v);
  auto [a, b] = refine_to_common_partition(u, v);
  return a.lower_segments() == b.lower_segments();
}

/// An element of the quotient, keyed by its H-continuous canonical representative.
struct EquivClass {
  PiecewiseFunction canonical;
  friend bool operator==(const EquivClass& a, const EquivClass& b) { return same_function(a.canonical, b.canonical); }
};

inline EquivClass canonical_class(const PiecewiseFunction& u) { return {canonicalize(graph_completion_map_F0(u))}; }

inline bool class_leq(const EquivClass& a, const EquivClass& b) {
  require_same_domain(a.canonical, b.canonical);
  return pointwise_leq(a.canonical, b.canonical);
}

/// u <= v off a finite set, from the definition.
inline bool class_leq_direct(const PiecewiseFunction& u, const PiecewiseFunction& v) {
  detail::require_point_valued(u);
  detail::require_point_valued(v);
  auto [a, b] = refine_to_common_partition(u, v);
  for (std::size_t g = 0; g < a.gap_count(); ++g)
    if (!detail::segment_leq(a.lower_segments()[g], b.lower_segments()[g], a.gap_left(g), a.gap_right(g))) return false;
  return true;
}

namespace detail {

/// Pointwise max (or min) of one endpoint function over a family of total functions,
/// split at the rational points where members cross.
inline PiecewiseFunction pointwise_extreme(const std::vector<PiecewiseFunction>& fs, Endpoint e, bool take_max) {
  std::vector<Rational> pts;
  for (const auto& f : fs) {
    require_same_domain(fs.front(), f);
    pts.insert(pts.end(), f.breakpoints().begin(), f.breakpoints().end());
  }
  std::vector<PiecewiseFunction> rs;
  for (const auto& f : fs) rs.push_back(refine(f, pts));
  const PiecewiseFunction& base = rs.front();
  std::vector<Rational> crossings;
  for (std::size_t g = 0; g < base.gap_count(); ++g)
    for (std::size_t i = 0; i < rs.size(); ++i)
      for (std::size_t j = i + 1; j < rs.size(); ++j) {
        const auto &a = rs[i].segment(e, g), &b = rs[j].segment(e, g);
        if (a == b) continue;
        auto x = sign_change_points(difference_sign_polynomial(a, b), base.gap_left(g), base.gap_right(g));
        crossings.insert(crossings.end(), x.begin(), x.end());
      }
  for (auto& f : rs) f = refine(f, crossings);
  const PiecewiseFunction& ref = rs.front();
  std::vector<RationalFunction> segs;
  for (std::size_t g = 0; g < ref.gap_count(); ++g) {
    RationalFunction best = ref.segment(e, g);
    for (std::size_t j = 1; j < rs.size(); ++j) {
      const auto& s = rs[j].segment(e, g);
      if (s == best) continue;
      auto sign = constant_sign(difference_sign_polynomial(s, best), ref.gap_left(g), ref.gap_right(g));
      if (!sign) fail(ErrorCode::VerificationFailure, "members still cross inside a refined gap");
      if ((take_max && *sign > 0) || (!take_max && *sign < 0)) best = s;
    }
    segs.push_back(best);
  }
  std::vector<BreakpointValue> vals;
  for (std::size_t i = 0; i < ref.breakpoints().size(); ++i) {
    std::optional<ExtendedReal> v;
    for (const auto& f : rs) {
      const auto& fv = f.breakpoint_values()[i];
      if (!fv) continue;
      const ExtendedReal& w = e == Endpoint::Lower ? fv->lower() : fv->upper();
      v = !v ? w : (take_max ? max(*v, w) : min(*v, w));
    }
    vals.push_back(v ? BreakpointValue(ExtendedInterval(*v)) : std::nullopt);
  }
  return {PiecewiseFunction::Trusted{}, ref.domain(), ref.breakpoints(), segs, segs, std::move(vals)};
}

inline void require_family(const std::vector<PiecewiseFunction>& hs, const std::optional<PiecewiseFunction>& bound) {
  if (hs.empty()) fail(ErrorCode::EmptyFamily, "family is empty");
  for (const auto& h : hs) {
    require_same_domain(hs.front(), h);
    if (!is_hausdorff_continuous(h)) fail(ErrorCode::NotHContinuous, "family member is not H-continuous");
  }
  if (bound) {
    require_same_domain(hs.front(), *bound);
    if (!is_hausdorff_continuous(*bound)) fail(ErrorCode::NotHContinuous, "bound is not H-continuous");
  }
}

inline void verify_extreme(const PiecewiseFunction& result, const std::vector<PiecewiseFunction>& hs,
                           const std::optional<PiecewiseFunction>& bound, bool is_sup) {
  if (!is_hausdorff_continuous(result)) fail(ErrorCode::VerificationFailure, "result is not H-continuous");
  for (const auto& h : hs)
    if (is_sup ? !pointwise_leq(h, result) : !pointwise_leq(result, h))
      fail(ErrorCode::VerificationFailure, is_sup ? "result is not an upper bound" : "result is not a lower bound");
  if (bound && (is_sup ? !pointwise_leq(result, *bound) : !pointwise_leq(*bound, result)))
    fail(ErrorCode::VerificationFailure, "result is not below the supplied bound");
}

inline void check_bound(const std::vector<PiecewiseFunction>& hs, const std::optional<PiecewiseFunction>& bound, bool is_sup) {
  if (!bound) return;
  for (const auto& h : hs)
    if (is_sup ? !pointwise_leq(h, *bound) : !pointwise_leq(*bound, h))
      fail(ErrorCode::Unbounded, is_sup ? "supplied bound does not dominate the family" : "supplied bound is not below the family");
}

}  // namespace detail

/// Least upper bound in the H-continuous functions of a finite family: the usc envelope
/// u of the pointwise max of the upper endpoints, completed to [I(u), u].
inline PiecewiseFunction sup_family(const std::vector<PiecewiseFunction>& hs,
                                   const std::optional<PiecewiseFunction>& bound = std::nullopt) {
  detail::require_family(hs, bound);
  detail::check_bound(hs, bound, true);
  PiecewiseFunction phi = detail::pointwise_extreme(hs, Endpoint::Upper, true);
  PiecewiseFunction result = graph_completion(upper_baire(phi));
  detail::verify_extreme(result, hs, bound, true);
  return result;
}

inline PiecewiseFunction inf_family(const std::vector<PiecewiseFunction>& hs,
                                   const std::optional<PiecewiseFunction>& bound = std::nullopt) {
  detail::require_family(hs, bound);
  detail::check_bound(hs, bound, false);
  PiecewiseFunction psi = detail::pointwise_extreme(hs, Endpoint::Lower, false);
  PiecewiseFunction result = graph_completion(lower_baire(psi));
  detail::verify_extreme(result, hs, bound, false);
  return result;
}

/// A family f_1, f_2, ... whose k-th member agrees with one fixed function g off the
/// radius-r_k neighbourhood of a finite collapse set C, with r_k decreasing to 0. The
/// listed members are a prefix; the family continues in the same pattern.
struct StationaryFamily {
  std::vector<PiecewiseFunction> members;
  std::vector<Rational> radii;
  ExceptionalSet collapse;
};

namespace detail {

inline bool in_neighbourhood(const Rational& x, const ExceptionalSet& c, const Rational& r) {
  for (const auto& p : c.points())
    if (abs(x - p) < r) return true;
  return false;
}

/// The limit g: the last member with the segments just outside each neighbourhood
/// continued inwards up to the collapse point.
inline PiecewiseFunction stationary_limit(const PiecewiseFunction& m, const ExceptionalSet& c, const Rational& r) {
  const auto& cp = c.points();
  for (std::size_t i = 0; i < cp.size(); ++i) {
    if (i + 1 < cp.size() && !(2 * r < cp[i + 1] - cp[i]))
      fail(ErrorCode::NotStationary, "neighbourhoods of collapse points overlap");
    if (!m.domain().contains(cp[i] - r) || !m.domain().contains(cp[i] + r))
      fail(ErrorCode::NotStationary, "neighbourhood of " + to_string(cp[i]) + " leaves the domain");
    for (const auto& b : m.breakpoints())
      if (b != cp[i] && abs(b - cp[i]) < r)
        fail(ErrorCode::NotStationary, "last member still varies at " + to_string(b) + " near collapse point " + to_string(cp[i]));
  }
  std::vector<Rational> extra;
  for (const auto& p : cp) {
    extra.push_back(p - r);
    extra.push_back(p);
    extra.push_back(p + r);
  }
  PiecewiseFunction f = refine(m, extra);
  std::vector<RationalFunction> lo = f.lower_segments(), up = f.upper_segments();
  std::vector<BreakpointValue> vals = f.breakpoint_values();
  for (const auto& p : cp) {
    std::size_t i = *f.breakpoint_index(p);
    // Gap i lies in (p - r, p), gap i + 1 in (p, p + r).
    lo[i] = f.lower_segments()[i - 1];
    up[i] = f.upper_segments()[i - 1];
    lo[i + 1] = f.lower_segments()[i + 2];
    up[i + 1] = f.upper_segments()[i + 2];
    for (const auto* s : {&lo[i], &up[i]})
      if (s->den()(p - r) == 0 || !s->pole_free_on(ExtendedReal(p - r), ExtendedReal(p)))
        fail(ErrorCode::NotStationary, "continued segment has a pole near " + to_string(p));
    for (const auto* s : {&lo[i + 1], &up[i + 1]})
      if (s->den()(p + r) == 0 || !s->pole_free_on(ExtendedReal(p), ExtendedReal(p + r)))
        fail(ErrorCode::NotStationary, "continued segment has a pole near " + to_string(p));
    vals[i] = std::nullopt;
  }
  return {PiecewiseFunction::Trusted{}, f.domain(), f.breakpoints(), std::move(lo), std::move(up), std::move(vals)};
}

/// f = g at every point outside the radius-r neighbourhoods of c.
inline bool agrees_off(const PiecewiseFunction& f, const PiecewiseFunction& g, const ExceptionalSet& c, const Rational& r) {
  std::vector<Rational> extra;
  for (const auto& p : c.points()) {
    if (f.domain().contains(p - r)) extra.push_back(p - r);
    if (f.domain().contains(p + r)) extra.push_back(p + r);
  }
  auto [a, b] = refine_to_common_partition(refine(f, extra), refine(g, extra));
  for (std::size_t k = 0; k < a.gap_count(); ++k) {
    ExtendedReal l = a.gap_left(k), rr = a.gap_right(k);
    // Gaps are either inside or outside every neighbourhood; test a point inside.
    Rational probe = 0;
    if (l.is_finite() && rr.is_finite()) probe = (l.value() + rr.value()) / 2;
    else if (l.is_finite()) probe = l.value() + 1;
    else if (rr.is_finite()) probe = rr.value() - 1;
    if (in_neighbourhood(probe, c, r)) continue;
    if (!(a.lower_segments()[k] == b.lower_segments()[k]) || !(a.upper_segments()[k] == b.upper_segments()[k])) return false;
  }
  for (std::size_t i = 0; i < a.breakpoints().size(); ++i) {
    if (in_neighbourhood(a.breakpoints()[i], c, r)) continue;
    if (a.breakpoint_values()[i] != b.breakpoint_values()[i]) return false;
  }
  return true;
}

}  // namespace detail

/// Least H-continuous upper bound of a stationary family: F(Omega \ C, Omega, g). Every
/// point off C eventually lies outside the neighbourhoods, so any upper bound dominates g
/// on a dense set and hence, being H-continuous, dominates the completion of g.
inline PiecewiseFunction sup_of_stationary_family(const StationaryFamily& fam,
                                                  const std::optional<PiecewiseFunction>& bound = std::nullopt) {
  if (fam.members.empty()) fail(ErrorCode::EmptyFamily, "family is empty");
  if (fam.radii.size() != fam.members.size()) fail(ErrorCode::MalformedSegment, "one radius per member expected");
  for (std::size_t k = 0; k < fam.radii.size(); ++k) {
    require_same_domain(fam.members.front(), fam.members[k]);
    if (fam.radii[k] <= 0 || (k > 0 && fam.radii[k] > fam.radii[k - 1]))
      fail(ErrorCode::NotStationary, "radii must be positive and non-increasing");
  }
  PiecewiseFunction g = detail::stationary_limit(fam.members.back(), fam.collapse, fam.radii.back());
  for (std::size_t k = 0; k < fam.members.size(); ++k)
    if (!detail::agrees_off(fam.members[k], g, fam.collapse, fam.radii[k]))
      fail(ErrorCode::NotStationary, "member " + std::to_string(k) + " differs from the limit outside its neighbourhood");
  if (bound) {
    if (!is_hausdorff_continuous(*bound)) fail(ErrorCode::NotHContinuous, "bound is not H-continuous");
    for (const auto& m : fam.members)
      if (!pointwise_leq(m, *bound)) fail(ErrorCode::Unbounded, "supplied bound does not dominate the family");
  }
  PiecewiseFunction result = graph_completion(DenseDomain(g.domain(), set_union(fam.collapse, g.undefined_points())), g);
  if (!is_hausdorff_continuous(result)) fail(ErrorCode::VerificationFailure, "result is not H-continuous");
  for (const auto& m : fam.members)
    if (!pointwise_leq(m, result)) fail(ErrorCode::VerificationFailure, "result is not an upper bound");
  if (bound && !pointwise_leq(result, *bound)) fail(ErrorCode::VerificationFailure, "result is not below the supplied bound");
  return result;
}

/// Continuous minorants v_k <= h (continuous off the points where h is infinite). Near
/// each jump c of h, v_k follows h on the side with the smaller limit and ramps linearly
/// on the other side over a window of width at most 2^-k; elsewhere v_k = h.
inline StationaryFamily continuous_minorants(const PiecewiseFunction& h, int budget) {
  if (budget < 1) fail(ErrorCode::OutOfDomain, "minorant budget must be at least 1");
  HClass cls = classify(h);
  ExceptionalSet gamma_nf(cls.gamma_nf);
  std::vector<Rational> jumps;
  for (const auto& x : proper_value_set(h))
    if (!gamma_nf.contains(x)) jumps.push_back(x);
  StationaryFamily fam{{}, {}, ExceptionalSet(jumps)};
  auto base = endpoint_functions(h).first;  // gaps are point valued
  std::vector<BreakpointValue> base_vals = base.breakpoint_values();
  for (std::size_t i = 0; i < base.breakpoints().size(); ++i)
    if (gamma_nf.contains(base.breakpoints()[i])) base_vals[i] = std::nullopt;
  base = base.with_values(std::move(base_vals));
  if (jumps.empty()) {
    fam.members.push_back(base);
    fam.radii.push_back(Rational(1, 2));
    return fam;
  }
  const auto& bps = base.breakpoints();
  for (int k = 1; k <= budget; ++k) {
    Rational delta = pow2(-k);
    struct Ramp {
      Rational c, w, a, b;
    };
    std::vector<Ramp> ramps;
    std::vector<Rational> extra;
    for (const auto& c : jumps) {
      std::size_t i = *base.breakpoint_index(c);
      Rational w = delta;
      ExtendedReal left = i == 0 ? base.domain().left() : ExtendedReal(bps[i - 1]);
      ExtendedReal right = i + 1 == bps.size() ? base.domain().right() : ExtendedReal(bps[i + 1]);
      if (left.is_finite()) w = std::min(w, (c - left.value()) / 2);
      if (right.is_finite()) w = std::min(w, (right.value() - c) / 2);
      Rational a = base.left_limit(Endpoint::Lower, i).value(), b = base.right_limit(Endpoint::Lower, i).value();
      ramps.push_back({c, w, a, b});
      extra.push_back(a < b ? c + w : c - w);
    }
    PiecewiseFunction f = refine(base, extra);
    std::vector<RationalFunction> segs = f.lower_segments();
    std::vector<BreakpointValue> vals = f.breakpoint_values();
    for (const auto& rp : ramps) {
      std::size_t i = *f.breakpoint_index(rp.c);
      Polynomial x = Polynomial::x();
      if (rp.a < rp.b) {
        // (c, c + w): h - (b - a)(c + w - x)/w
        Polynomial ramp = (Polynomial::constant(rp.c + rp.w) - x) * Polynomial::constant((rp.b - rp.a) / rp.w);
        segs[i + 1] = segs[i + 1] - RationalFunction(ramp);
      } else {
        // (c - w, c): h - (a - b)(x - (c - w))/w
        Polynomial ramp = (x - Polynomial::constant(rp.c - rp.w)) * Polynomial::constant((rp.a - rp.b) / rp.w);
        segs[i] = segs[i] - RationalFunction(ramp);
      }
      vals[i] = ExtendedInterval(ExtendedReal(std::min(rp.a, rp.b)));
    }
    PiecewiseFunction v(PiecewiseFunction::Trusted{}, f.domain(), f.breakpoints(), segs, segs, std::move(vals));
    if (!pointwise_leq(v, h)) fail(ErrorCode::VerificationFailure, "minorant exceeds h");
    fam.members.push_back(std::move(v));
    fam.radii.push_back(delta);
  }
  return fam;
}

}  // namespace hcont
