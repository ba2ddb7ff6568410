#pragma once

#include <string>
#include <vector>

#include "baire.hpp"

namespace hcont {

namespace detail {

inline void require_total(const PiecewiseFunction& f) {
  auto u = f.undefined_points();
  if (!u.empty()) fail(ErrorCode::UndefinedPoints, "function is undefined at " + std::to_string(u.size()) + " point(s); complete it first");
}

inline bool gaps_point_valued(const PiecewiseFunction& f) {
  for (std::size_t g = 0; g < f.gap_count(); ++g)
    if (!(f.lower_segments()[g] == f.upper_segments()[g])) return false;
  return true;
}

inline void require_point_valued(const PiecewiseFunction& f) {
  if (!f.is_point_valued()) fail(ErrorCode::NotPointValued, "function takes proper interval values");
}

/// u is point valued, defined off `gamma`, and continuous with finite values at each of
/// its breakpoints outside `gamma`.
inline void require_continuous_off(const PiecewiseFunction& u, const ExceptionalSet& gamma, ErrorCode pole_code) {
  require_point_valued(u);
  for (std::size_t i = 0; i < u.breakpoints().size(); ++i) {
    const Rational& x = u.breakpoints()[i];
    if (gamma.contains(x)) continue;
    const auto& v = u.breakpoint_values()[i];
    if (!v) fail(ErrorCode::UndefinedOnDense, "function is undefined at x = " + to_string(x) + " outside the exceptional set");
    ExtendedReal l = u.left_limit(Endpoint::Lower, i), r = u.right_limit(Endpoint::Lower, i);
    if (!l.is_finite() || !r.is_finite()) fail(pole_code, "pole at x = " + to_string(x) + " outside the exceptional set");
    if (!(l == r) || !(v->lower() == l))
      fail(ErrorCode::NotPiecewiseContinuous, "discontinuity at x = " + to_string(x) + " outside the exceptional set");
  }
}

}  // namespace detail

/// Lower semicontinuity of a total point valued function: fixed point of I.
inline bool is_lsc(const PiecewiseFunction& f) {
  detail::require_total(f);
  detail::require_point_valued(f);
  return same_function(lower_baire(f), f);
}

inline bool is_usc(const PiecewiseFunction& f) {
  detail::require_total(f);
  detail::require_point_valued(f);
  return same_function(upper_baire(f), f);
}

/// H-continuity through the extreme selections: F(f_lower) = F(f_upper) = f.
inline bool is_hausdorff_continuous(const PiecewiseFunction& f) {
  detail::require_total(f);
  auto [lo, up] = endpoint_functions(f);
  return same_function(graph_completion(lo), f) && same_function(graph_completion(up), f);
}

/// Checks a single selection g of f: F(g) = f. g may be undefined on finitely many points.
inline bool selection_oracle(const PiecewiseFunction& f, const PiecewiseFunction& g) {
  require_same_domain(f, g);
  if (!pointwise_subset(g, f)) fail(ErrorCode::BadSelection, "selection is not contained in the function");
  auto [a, b] = refine_to_common_partition(g, f);
  for (std::size_t i = 0; i < a.breakpoints().size(); ++i)
    if (a.breakpoint_values()[i] && !b.breakpoint_values()[i])
      fail(ErrorCode::BadSelection, "selection is defined where the function is not");
  return same_function(graph_completion(g), f);
}

namespace detail {

inline ExtendedReal middle(const ExtendedInterval& v) {
  const auto &a = v.lower(), &b = v.upper();
  if (a.is_finite() && b.is_finite()) return ExtendedReal((a.value() + b.value()) / 2);
  if (a.is_finite()) return ExtendedReal(a.value() + 1);
  if (b.is_finite()) return ExtendedReal(b.value() - 1);
  if (a == b) return a;
  return ExtendedReal(0);
}

inline RationalFunction pick_segment(const PiecewiseFunction& f, std::size_t g, int choice) {
  if (choice == 0) return f.lower_segments()[g];
  if (choice == 1) return f.upper_segments()[g];
  return (f.lower_segments()[g] + f.upper_segments()[g]) * RationalFunction::constant(Rational(1, 2));
}

inline BreakpointValue pick_value(const BreakpointValue& v, int choice) {
  if (!v) return std::nullopt;
  if (choice == 0) return ExtendedInterval(v->lower());
  if (choice == 1) return ExtendedInterval(v->upper());
  return ExtendedInterval(middle(*v));
}

inline PiecewiseFunction selection(const PiecewiseFunction& f, int gap_choice, const std::vector<int>& point_choice) {
  std::vector<RationalFunction> segs;
  for (std::size_t g = 0; g < f.gap_count(); ++g) segs.push_back(pick_segment(f, g, gap_choice));
  std::vector<BreakpointValue> vals;
  for (std::size_t i = 0; i < f.breakpoints().size(); ++i) vals.push_back(pick_value(f.breakpoint_values()[i], point_choice[i]));
  return {PiecewiseFunction::Trusted{}, f.domain(), f.breakpoints(), segs, segs, std::move(vals)};
}

}  // namespace detail

/// Finite witness family of point valued selections g of f: lower, upper or midpoint on
/// the gaps, combined with lower, upper or midpoint at the breakpoints (all uniform
/// combinations, plus each breakpoint varied on its own).
inline std::vector<PiecewiseFunction> canonical_selections(const PiecewiseFunction& f) {
  std::vector<PiecewiseFunction> out;
  std::size_t nb = f.breakpoints().size();
  for (int gc = 0; gc < 3; ++gc) {
    for (int pc = 0; pc < 3; ++pc) out.push_back(detail::selection(f, gc, std::vector<int>(nb, pc)));
    for (std::size_t i = 0; i < nb; ++i)
      for (int pc = 1; pc < 3; ++pc) {
        std::vector<int> choice(nb, 0);
        choice[i] = pc;
        out.push_back(detail::selection(f, gc, choice));
      }
  }
  return out;
}

/// F0(u) = F(Omega \ Gamma, Omega, u) for u continuous off the finite set Gamma. Gamma
/// defaults to the breakpoints of u.
inline PiecewiseFunction graph_completion_map_F0(const PiecewiseFunction& u, const ExceptionalSet& gamma) {
  DenseDomain d(u.domain(), gamma);
  detail::require_continuous_off(u, gamma, ErrorCode::NotPiecewiseContinuous);
  return graph_completion(d, u);
}

inline PiecewiseFunction graph_completion_map_F0(const PiecewiseFunction& u) {
  return graph_completion_map_F0(u, ExceptionalSet(u.breakpoints()));
}

/// H-continuous extension of a point valued f continuous on D.
inline PiecewiseFunction extend_from_dense(const DenseDomain& d, const PiecewiseFunction& f) {
  if (!(d.domain() == f.domain())) fail(ErrorCode::DomainMismatch, "dense set and function live on different domains");
  detail::require_continuous_off(f, d.removed(), ErrorCode::PoleInsideDense);
  return graph_completion(d, f);
}

/// W_f: points with a proper interval value. Needs point valued gaps, so W_f is finite.
inline std::vector<Rational> proper_value_set(const PiecewiseFunction& f) {
  detail::require_total(f);
  if (!detail::gaps_point_valued(f))
    fail(ErrorCode::NotPointValued, "proper interval values on a whole gap: the proper value set is not finite");
  std::vector<Rational> w;
  for (std::size_t i = 0; i < f.breakpoints().size(); ++i)
    if (f.breakpoint_values()[i]->is_proper()) w.push_back(f.breakpoints()[i]);
  return w;
}

/// D_f = Omega \ W_f.
inline DenseDomain point_value_domain(const PiecewiseFunction& f) {
  return DenseDomain(f.domain(), ExceptionalSet(proper_value_set(f)));
}

enum class HClassTag { Bounded, Finite, NearlyFinite, General };

inline std::string to_string(HClassTag t) {
  switch (t) {
    case HClassTag::Bounded: return "bounded";
    case HClassTag::Finite: return "finite";
    case HClassTag::NearlyFinite: return "nearly_finite";
    case HClassTag::General: return "general";
  }
  return "general";
}

struct HClass {
  HClassTag tag;
  std::vector<Rational> gamma_nf;  // points where a value has an infinite endpoint
};

/// Bounded when every breakpoint value and every one-sided limit of the segments at the
/// ends of their gaps is finite (a continuous function on a gap with finite end limits
/// is bounded there); finite when all values are finite; nearly finite otherwise.
inline HClass classify(const PiecewiseFunction& f) {
  if (!is_hausdorff_continuous(f)) fail(ErrorCode::NotHContinuous, "classification needs an H-continuous function");
  HClass c{HClassTag::Bounded, {}};
  for (std::size_t i = 0; i < f.breakpoints().size(); ++i)
    if (!f.breakpoint_values()[i]->is_finite()) c.gamma_nf.push_back(f.breakpoints()[i]);
  if (!c.gamma_nf.empty()) {
    c.tag = HClassTag::NearlyFinite;
    return c;
  }
  for (std::size_t g = 0; g < f.gap_count(); ++g)
    for (Endpoint e : {Endpoint::Lower, Endpoint::Upper}) {
      const auto& s = f.segment(e, g);
      if (!s.limit(f.gap_left(g), Side::Right).is_finite() || !s.limit(f.gap_right(g), Side::Left).is_finite()) {
        c.tag = HClassTag::Finite;
        return c;
      }
    }
  return c;
}

}  // namespace hcont
