#pragma once

#include <future>
#include <random>
#include <vector>

#include "completion.hpp"
#include "expression.hpp"

namespace hcont {

/// T(x, D)u = g(x, u, u'[, u'']) of order 1 or 2, with g strictly monotone in the pivot.
class DiffOperator {
 public:
  DiffOperator(int order, Expr g, Var pivot) : order_(order), g_(std::move(g)), pivot_(pivot) {
    if (order_ != 1 && order_ != 2) fail(ErrorCode::ParseError, "operator order must be 1 or 2");
    if (order_ == 1 && g_.uses(Var::U2)) fail(ErrorCode::ParseError, "g uses u'' but the order is 1");
    if (pivot_ == Var::X) fail(ErrorCode::ParseError, "the pivot must be u, u' or u''");
    if (pivot_ == Var::U2 && order_ == 1) fail(ErrorCode::ParseError, "pivot u'' needs order 2");
    if (!g_.uses(pivot_)) fail(ErrorCode::PivotNotMonotone, "g does not depend on the pivot " + hcont::to_string(pivot_));
    direction_ = spot_check();
  }

  int order() const { return order_; }
  const Expr& g() const { return g_; }
  Var pivot() const { return pivot_; }
  /// +1 when g increases in the pivot, -1 when it decreases.
  int direction() const { return direction_; }

  Rational at(const PointArgs& a) const { return evaluate(g_, a); }

  friend bool operator==(const DiffOperator& a, const DiffOperator& b) {
    return a.order_ == b.order_ && a.pivot_ == b.pivot_ && a.g_ == b.g_;
  }

 private:
  /// Compares g at pairs of argument tuples differing only in the pivot. The sample is
  /// fixed, so construction is deterministic.
  int spot_check() const {
    std::mt19937_64 rng(0x5eed);
    std::uniform_int_distribution<int> coord(-128, 128);
    auto draw = [&] { return Rational(coord(rng), 16); };
    int dir = 0;
    int compared = 0;
    for (int t = 0; t < 64; ++t) {
      PointArgs a{draw(), draw(), draw(), draw()};
      PointArgs b = a;
      Rational p = draw(), q = draw();
      if (p == q) continue;
      if (q < p) std::swap(p, q);
      auto set = [&](PointArgs& s, const Rational& v) {
        (pivot_ == Var::U ? s.u : pivot_ == Var::U1 ? s.u1 : s.u2) = v;
      };
      set(a, p);
      set(b, q);
      Rational d;
      try {
        d = at(b) - at(a);
      } catch (const Error& e) {
        if (e.code() == ErrorCode::OutOfDomain) continue;
        throw;
      }
      int s = d.sign();
      if (s == 0 || (dir != 0 && s != dir))
        fail(ErrorCode::PivotNotMonotone, "g is not strictly monotone in " + hcont::to_string(pivot_));
      dir = s;
      ++compared;
    }
    if (compared == 0) fail(ErrorCode::PivotNotMonotone, "no admissible sample to check the pivot");
    return dir;
  }

  int order_;
  Expr g_;
  Var pivot_;
  int direction_ = 1;
};

/// T u segment by segment for a point valued u with rational segments. The breakpoints
/// of u stay exceptional (undefined); divisions add their poles as undefined points and
/// min/max add their crossing points with the continuous value.
inline PiecewiseFunction apply_operator(const DiffOperator& t, const PiecewiseFunction& u) {
  if (!u.is_point_valued()) fail(ErrorCode::NotPointValued, "the operator acts on point valued functions");
  std::vector<Rational> bps;
  std::vector<RationalFunction> segs;
  std::vector<BreakpointValue> vals;
  for (std::size_t g = 0; g < u.gap_count(); ++g) {
    const RationalFunction& s = u.lower_segments()[g];
    GapArgs args{RationalFunction(Polynomial::x()), s, s.derivative(), s.derivative().derivative()};
    ExtendedReal l = u.gap_left(g), r = u.gap_right(g);
    GapPieces p = evaluate_on_gap(t.g(), args, l, r);
    if (g > 0) {
      bps.push_back(u.breakpoints()[g - 1]);
      vals.push_back(std::nullopt);
    }
    for (std::size_t k = 0; k < p.funcs.size(); ++k) {
      if (k > 0) {
        const Rational& c = p.cuts[k - 1];
        ExtendedReal a = p.funcs[k - 1].limit(c, Side::Left), b = p.funcs[k].limit(c, Side::Right);
        bps.push_back(c);
        vals.push_back(a.is_finite() && a == b ? BreakpointValue(ExtendedInterval(a)) : std::nullopt);
      }
      segs.push_back(p.funcs[k]);
    }
  }
  return PiecewiseFunction::point_valued(u.domain(), std::move(bps), std::move(segs), std::move(vals));
}

/// P with f - eps <= T P <= f on its certified window [left, right], a neighbourhood of
/// the center clipped to the component of Omega \ Gamma_f that contains it.
struct SubsolutionPatch {
  Polynomial p;
  Rational center;
  Rational radius;
  Rational epsilon;
  Rational left, right;
  std::size_t samples = 0;
};

struct SubsolutionOptions {
  std::size_t samples_per_patch = 1024;
  std::size_t global_samples = 1031;
  Rational min_width = pow2(-24);
  unsigned threads = 1;
};

/// The certified band: f - lower_gap <= T P <= f - upper_gap.
struct Band {
  Rational lower_gap;
  Rational upper_gap;
};

namespace detail {

/// Points of the target's domain where it is undefined or discontinuous.
inline std::vector<Rational> target_exceptional(const PiecewiseFunction& f) {
  if (!f.is_point_valued()) fail(ErrorCode::NotPointValued, "the target must be point valued");
  std::vector<Rational> gamma;
  for (std::size_t i = 0; i < f.breakpoints().size(); ++i) {
    const auto& v = f.breakpoint_values()[i];
    ExtendedReal l = f.left_limit(Endpoint::Lower, i), r = f.right_limit(Endpoint::Lower, i);
    if (!v || !v->is_finite() || !(l == r) || !(v->lower() == l)) gamma.push_back(f.breakpoints()[i]);
  }
  return gamma;
}

/// Value of a point valued target at a point where it is defined and finite.
inline Rational target_at(const PiecewiseFunction& f, const Rational& x) {
  ExtendedInterval v = f.evaluate(x);
  if (!v.lower().is_finite()) fail(ErrorCode::TargetUndefined, "target is infinite at x = " + to_string(x));
  return v.lower().value();
}

/// c0 + c1 (x - x0) [+ c2 (x - x0)^2] with the pivot coefficient set to c and the others 0.
inline Polynomial ansatz(const DiffOperator& t, const Rational& x0, const Rational& c) {
  std::vector<Rational> co(static_cast<std::size_t>(t.order() + 1), Rational(0));
  switch (t.pivot()) {
    case Var::U: co[0] = c; break;
    case Var::U1: co[1] = c; break;
    default: co[2] = c / 2; break;  // u'' = 2 c2
  }
  return Polynomial(std::move(co)).shifted(-x0);
}

inline Rational apply_at(const DiffOperator& t, const Polynomial& p, const Rational& x) {
  Polynomial d1 = p.derivative();
  return t.at({x, p(x), d1(x), d1.derivative()(x)});
}

/// Pivot value c with (T P_c)(x0) = target: bisection on an expanding bracket, with an
/// exact secant probe each step so that affine dependence is solved exactly.
inline Rational solve_pivot(const DiffOperator& t, const Rational& x0, const Rational& target) {
  auto h = [&](const Rational& c) { return Rational(t.direction() * (apply_at(t, ansatz(t, x0, c), x0) - target)); };
  Rational lo = -1, hi = 1;
  Rational hlo = h(lo), hhi = h(hi);
  int expansions = 0;
  while (hlo.sign() > 0 || hhi.sign() < 0) {
    if (++expansions > 64) fail(ErrorCode::PivotBracketFailure, "no bracket for the pivot at x0 = " + to_string(x0));
    if (hlo.sign() > 0) hlo = h(lo *= 2);
    if (hhi.sign() < 0) hhi = h(hi *= 2);
  }
  if (hlo == 0) return lo;
  if (hhi == 0) return hi;
  const Rational tol = pow2(-40);
  for (int it = 0; it < 400; ++it) {
    Rational secant = lo - hlo * (hi - lo) / (hhi - hlo);
    if (lo < secant && secant < hi && h(secant) == 0) return secant;
    Rational mid = (lo + hi) / 2;
    Rational hm = h(mid);
    if (abs(hm) < tol) return mid;
    if (hm.sign() < 0) lo = mid, hlo = hm;
    else hi = mid, hhi = hm;
  }
  fail(ErrorCode::PivotBracketFailure, "bisection for the pivot did not converge at x0 = " + to_string(x0));
}

/// Exact check of the band at an even grid on [left, right] plus dyadic offsets near both
/// ends. Points of gamma and points outside Omega are skipped. Returns the number of
/// points checked, or 0 when some point violates the band.
inline std::size_t certify(const DiffOperator& t, const PiecewiseFunction& f, const Polynomial& p, const Rational& left,
                           const Rational& right, const Band& band, const ExceptionalSet& gamma, std::size_t n) {
  std::vector<Rational> xs;
  Rational w = right - left;
  for (std::size_t j = 0; j <= n; ++j) xs.push_back(left + w * Rational(static_cast<long long>(j), static_cast<long long>(n)));
  for (int k = 12; k <= 30; k += 6) {
    xs.push_back(left + w * pow2(-k));
    xs.push_back(right - w * pow2(-k));
  }
  std::size_t checked = 0;
  for (const auto& x : xs) {
    if (gamma.contains(x) || !f.domain().contains(x)) continue;
    Rational fx = target_at(f, x), tp = apply_at(t, p, x);
    if (tp < fx - band.lower_gap || fx - band.upper_gap < tp) return 0;
    ++checked;
  }
  return checked;
}

/// Closure of the component of Omega \ gamma containing x0.
inline std::pair<ExtendedReal, ExtendedReal> component_of(const PiecewiseFunction& f, const ExceptionalSet& gamma,
                                                          const Rational& x0) {
  ExtendedReal l = f.domain().left(), r = f.domain().right();
  for (const auto& c : gamma.points()) {
    if (c < x0) l = c;
    else if (x0 < c) {
      r = c;
      break;
    }
  }
  return {l, r};
}

inline SubsolutionPatch make_patch(const DiffOperator& t, const PiecewiseFunction& f, const Rational& x0, const Band& band) {
  Rational target = target_at(f, x0) - (band.lower_gap + band.upper_gap) / 2;
  return {ansatz(t, x0, solve_pivot(t, x0, target)), x0, Rational(0), band.lower_gap, x0, x0, 0};
}

inline void require_band(const Band& band) {
  if (band.lower_gap.sign() <= 0 || band.upper_gap.sign() < 0 || !(band.upper_gap < band.lower_gap))
    fail(ErrorCode::OutOfDomain, "epsilon must be positive");
}

inline SubsolutionPatch local_patch(const DiffOperator& t, const PiecewiseFunction& f, const Rational& x0, const Band& band,
                                    const SubsolutionOptions& opt) {
  require_band(band);
  if (!f.domain().contains(x0)) fail(ErrorCode::OutOfDomain, "x0 = " + to_string(x0) + " lies outside the domain");
  ExceptionalSet gamma(target_exceptional(f));
  if (gamma.contains(x0)) fail(ErrorCode::TargetUndefined, "target is undefined or discontinuous at x0 = " + to_string(x0));
  SubsolutionPatch patch = make_patch(t, f, x0, band);
  auto [cl, cr] = component_of(f, gamma, x0);
  for (Rational delta = 1; delta >= opt.min_width; delta /= 2) {
    Rational a = x0 - delta, b = x0 + delta;
    if (cl.is_finite() && a < cl.value()) a = cl.value();
    if (cr.is_finite() && cr.value() < b) b = cr.value();
    if (std::size_t n = certify(t, f, patch.p, a, b, band, gamma, opt.samples_per_patch)) {
      patch.radius = delta;
      patch.left = a;
      patch.right = b;
      patch.samples = n;
      return patch;
    }
  }
  fail(ErrorCode::PatchStall, "no certified neighbourhood at x0 = " + to_string(x0));
}

}  // namespace detail

/// A polynomial with f - eps <= T P <= f near x0, aiming at T P(x0) = f(x0) - eps/2.
inline SubsolutionPatch local_subsolution(const DiffOperator& t, const PiecewiseFunction& f, const Rational& x0,
                                          const Rational& eps, const SubsolutionOptions& opt = {}) {
  return detail::local_patch(t, f, x0, {eps, Rational(0)}, opt);
}

/// U_eps on a compact [left, right]: consecutive patches, each certified on its whole
/// window, smooth off the finite set gamma of patch boundaries and target discontinuities.
struct GlobalSubsolution {
  std::vector<SubsolutionPatch> pieces;
  ExceptionalSet gamma;
  Rational epsilon;
  Band band;
  Rational left, right;
  std::size_t samples = 0;  // global verification points
  Rational max_gap, min_gap;  // of f - T U over those points

  /// U_eps on (left, right), undefined at the interior points of gamma.
  PiecewiseFunction function() const {
    std::vector<Rational> bps;
    std::vector<RationalFunction> segs;
    for (std::size_t k = 0; k < pieces.size(); ++k) {
      if (k > 0) bps.push_back(pieces[k].left);
      segs.emplace_back(pieces[k].p);
    }
    std::vector<BreakpointValue> vals(bps.size());
    return PiecewiseFunction::point_valued(Domain1D(left, right), std::move(bps), std::move(segs), std::move(vals));
  }

  /// The patch covering x when x is not in gamma.
  const SubsolutionPatch* patch_at(const Rational& x) const {
    if (gamma.contains(x)) return nullptr;
    for (const auto& p : pieces)
      if (p.left <= x && x <= p.right) return &p;
    return nullptr;
  }
};

namespace detail {

/// Greedy cover of [s, e]: the next patch spans the longest dyadic fraction of the rest
/// that certifies.
inline std::vector<SubsolutionPatch> cover_component(const DiffOperator& t, const PiecewiseFunction& f, const Rational& s,
                                                     const Rational& e, const Band& band, const ExceptionalSet& gamma,
                                                     const SubsolutionOptions& opt) {
  std::vector<SubsolutionPatch> out;
  Rational left = s;
  while (left < e) {
    Rational right = e;
    for (;;) {
      if (right - left < opt.min_width)
        fail(ErrorCode::PatchStall, "patch width underflow at x0 = " + to_string(left) + " (width below " +
                                        to_string(opt.min_width) + ")");
      Rational x0 = (left + right) / 2;
      SubsolutionPatch p = make_patch(t, f, x0, band);
      if (std::size_t n = certify(t, f, p.p, left, right, band, gamma, opt.samples_per_patch)) {
        p.radius = (right - left) / 2;
        p.left = left;
        p.right = right;
        p.samples = n;
        out.push_back(std::move(p));
        break;
      }
      right = left + (right - left) / 2;
    }
    left = right;
  }
  return out;
}

inline GlobalSubsolution global_patches(const DiffOperator& t, const PiecewiseFunction& f, const Band& band,
                                        const Rational& a, const Rational& b, const SubsolutionOptions& opt) {
  require_band(band);
  if (!(a < b) || !f.domain().contains(a) || !f.domain().contains(b))
    fail(ErrorCode::OutOfDomain, "the compact [a, b] must satisfy a < b inside the domain");
  ExceptionalSet gamma_f(target_exceptional(f));
  std::vector<Rational> ends{a};
  for (const auto& c : gamma_f.points())
    if (a < c && c < b) ends.push_back(c);
  ends.push_back(b);

  std::vector<std::vector<SubsolutionPatch>> parts(ends.size() - 1);
  if (opt.threads <= 1 || parts.size() == 1) {
    for (std::size_t k = 0; k < parts.size(); ++k) parts[k] = cover_component(t, f, ends[k], ends[k + 1], band, gamma_f, opt);
  } else {
    std::vector<std::future<std::vector<SubsolutionPatch>>> jobs;
    for (std::size_t k = 0; k < parts.size(); ++k)
      jobs.push_back(std::async(std::launch::async, cover_component, std::cref(t), std::cref(f), ends[k], ends[k + 1],
                                std::cref(band), std::cref(gamma_f), std::cref(opt)));
    for (std::size_t k = 0; k < parts.size(); ++k) parts[k] = jobs[k].get();
  }

  GlobalSubsolution u;
  u.epsilon = band.lower_gap;
  u.band = band;
  u.left = a;
  u.right = b;
  std::vector<Rational> gamma;
  for (auto& part : parts)
    for (auto& p : part) {
      if (!u.pieces.empty()) gamma.push_back(p.left);
      u.pieces.push_back(std::move(p));
    }
  u.gamma = ExceptionalSet(gamma);

  // Independent sweep on an odd grid of midpoints, away from the dyadic patch ends.
  std::size_t n = opt.global_samples;
  bool first = true;
  for (std::size_t j = 0; j < n; ++j) {
    Rational x = a + (b - a) * Rational(static_cast<long long>(2 * j + 1), static_cast<long long>(2 * n));
    const SubsolutionPatch* p = u.patch_at(x);
    if (!p || gamma_f.contains(x)) continue;
    Rational gap = target_at(f, x) - apply_at(t, p->p, x);
    if (gap < band.upper_gap || band.lower_gap < gap)
      fail(ErrorCode::VerificationFailure, "band violated at x = " + to_string(x));
    u.max_gap = first ? gap : std::max(u.max_gap, gap);
    u.min_gap = first ? gap : std::min(u.min_gap, gap);
    first = false;
    ++u.samples;
  }
  if (u.samples < 1000) fail(ErrorCode::VerificationFailure, "fewer than 1000 verification points off gamma");
  return u;
}

}  // namespace detail

inline GlobalSubsolution global_subsolution(const DiffOperator& t, const PiecewiseFunction& f, const Rational& eps,
                                            const Rational& a, const Rational& b, const SubsolutionOptions& opt = {}) {
  return detail::global_patches(t, f, {eps, Rational(0)}, a, b, opt);
}

struct Assimilation {
  PiecewiseFunction sup;                      // sup over eps of F0(T U_eps)
  std::vector<GlobalSubsolution> stages;
  std::vector<PiecewiseFunction> completions;  // F0(T U_eps)
  std::vector<bool> below_target;              // F0(T U_eps) <= F0(f)
  bool gaps_within_eps = true;
  bool monotone = true;                        // completions increase with the stage
  HClass cls;
};

/// Stage k certifies f - eps_k <= T U <= f - (eps_k + eps_{k+1}) / 2 (the last stage uses
/// the full band [f - eps, f]), so each stage lies strictly below the next and the sup of
/// the completions never needs a crossing point.
inline Assimilation assimilate_solution(const DiffOperator& t, const PiecewiseFunction& f, const std::vector<Rational>& eps,
                                        const Rational& a, const Rational& b, const SubsolutionOptions& opt = {}) {
  if (eps.empty()) fail(ErrorCode::EmptyFamily, "no epsilon given");
  for (std::size_t k = 0; k < eps.size(); ++k)
    if (eps[k].sign() <= 0 || (k > 0 && !(eps[k] < eps[k - 1])))
      fail(ErrorCode::OutOfDomain, "epsilons must be positive and strictly decreasing");
  if (!(a < b) || !f.domain().contains(a) || !f.domain().contains(b))
    fail(ErrorCode::OutOfDomain, "the compact [a, b] must satisfy a < b inside the domain");
  PiecewiseFunction target = graph_completion_map_F0(restrict_to(f, Domain1D(a, b)));
  std::vector<GlobalSubsolution> stages;
  std::vector<PiecewiseFunction> comps;
  std::vector<bool> below;
  bool within = true;
  for (std::size_t k = 0; k < eps.size(); ++k) {
    Band band{eps[k], k + 1 < eps.size() ? Rational((eps[k] + eps[k + 1]) / 2) : Rational(0)};
    GlobalSubsolution u = detail::global_patches(t, f, band, a, b, opt);
    PiecewiseFunction tu = apply_operator(t, u.function());
    PiecewiseFunction h = graph_completion_map_F0(tu);
    below.push_back(pointwise_leq(h, target));
    within = within && u.max_gap <= eps[k];
    stages.push_back(std::move(u));
    comps.push_back(std::move(h));
  }
  PiecewiseFunction s = sup_family(comps);
  bool monotone = true;
  for (std::size_t k = 1; k < comps.size(); ++k) monotone = monotone && pointwise_leq(comps[k - 1], comps[k]);
  HClass cls = classify(s);
  return {std::move(s), std::move(stages), std::move(comps), std::move(below), within, monotone, cls};
}

}  // namespace hcont
