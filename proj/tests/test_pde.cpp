#include <gtest/gtest.h>

#include <functional>

#include "hcont/pde.hpp"
#include "support/generators.hpp"

using namespace hcont;

namespace {

Polynomial P(std::initializer_list<int> c) {
  std::vector<Rational> v;
  for (int k : c) v.emplace_back(k);
  return Polynomial(std::move(v));
}

ErrorCode code_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.code();
  }
  return ErrorCode::VerificationFailure;
}

DiffOperator op(int m, const std::string& g, Var pivot) { return DiffOperator(m, parse_expression(g), pivot); }
DiffOperator d1() { return op(1, "u'", Var::U1); }
DiffOperator ident() { return op(1, "u", Var::U); }
DiffOperator cubic() { return op(1, "u' + u^3", Var::U1); }

const Domain1D kOmega(-1, 1);
PiecewiseFunction constant(int v) { return PiecewiseFunction::constant(kOmega, Rational(v)); }
PiecewiseFunction heaviside() {
  return PiecewiseFunction::point_valued(kOmega, {Rational(0)}, {RationalFunction::constant(Rational(0)), RationalFunction::constant(Rational(1))},
                                         {std::nullopt});
}
PiecewiseFunction parabola() { return PiecewiseFunction::point_valued(kOmega, {}, {Polynomial({Rational(1, 4), Rational(-1), Rational(2)})}, {}); }

const Rational kHalf(1, 2);

}  // namespace

TEST(DiffOperator, Construction) {
  EXPECT_EQ(cubic().direction(), 1);
  EXPECT_EQ(op(1, "x - u'", Var::U1).direction(), -1);
  EXPECT_EQ(code_of([] { op(1, "u'^2", Var::U1); }), ErrorCode::PivotNotMonotone);
  EXPECT_EQ(code_of([] { op(1, "min(u', 1)", Var::U1); }), ErrorCode::PivotNotMonotone);
  EXPECT_EQ(code_of([] { op(1, "u''", Var::U2); }), ErrorCode::ParseError);
  EXPECT_EQ(code_of([] { op(3, "u'", Var::U1); }), ErrorCode::ParseError);
  EXPECT_EQ(code_of([] { op(1, "u", Var::U1); }), ErrorCode::PivotNotMonotone);
  EXPECT_EQ(op(2, "u'' - x*u", Var::U2).order(), 2);
}

TEST(ApplyOperator, Examples) {
  auto sq = PiecewiseFunction::point_valued(kOmega, {}, {P({0, 0, 1})}, {});
  EXPECT_TRUE(same_function(apply_operator(d1(), sq), PiecewiseFunction::point_valued(kOmega, {}, {P({0, 2})}, {})));
  auto x = PiecewiseFunction::point_valued(kOmega, {}, {P({0, 1})}, {});
  EXPECT_TRUE(same_function(apply_operator(cubic(), x), PiecewiseFunction::point_valued(kOmega, {}, {P({1, 0, 0, 1})}, {})));
  auto sign = PiecewiseFunction::point_valued(kOmega, {Rational(0)}, {P({-1}), P({1})}, {ExtendedInterval(ExtendedReal(0))});
  auto t = apply_operator(d1(), sign);
  EXPECT_EQ(t.undefined_points().points(), std::vector<Rational>{Rational(0)});
  EXPECT_EQ(t.evaluate(Rational(1, 2)), ExtendedInterval(ExtendedReal(0)));
  EXPECT_EQ(t.evaluate(Rational(-1, 2)), ExtendedInterval(ExtendedReal(0)));
}

TEST(ApplyOperator, PolesAndCrossings) {
  auto x = PiecewiseFunction::point_valued(kOmega, {}, {P({0, 1})}, {});
  // u / (x - 1/2): a pole at 1/2 becomes an undefined point.
  auto q = apply_operator(op(1, "u' + u / (x - 1/2)", Var::U1), x);
  EXPECT_EQ(q.undefined_points().points(), std::vector<Rational>{kHalf});
  // min(u, 1/4) is continuous with a new breakpoint at 1/4 that keeps its value.
  auto m = apply_operator(op(1, "u' + min(u, 1/4)", Var::U1), x);
  EXPECT_TRUE(m.is_total());
  EXPECT_EQ(m.breakpoints(), std::vector<Rational>{Rational(1, 4)});
  EXPECT_EQ(m.evaluate(Rational(1, 4)), ExtendedInterval(ExtendedReal(Rational(5, 4))));
  EXPECT_EQ(m.evaluate(Rational(3, 4)), ExtendedInterval(ExtendedReal(Rational(5, 4))));
  auto zero = PiecewiseFunction::constant(kOmega, Rational(0));
  EXPECT_EQ(code_of([&] { apply_operator(op(1, "u' + 1/u", Var::U1), zero); }), ErrorCode::DivisionByZeroOnSegment);
}

TEST(ApplyOperator, MatchesPointwiseEvaluation) {
  testgen::Rng rng(601);
  const std::pair<const char*, Var> ops[] = {{"u'", Var::U1}, {"u' + u^3", Var::U1}, {"u - x*u'", Var::U}, {"max(u', u) + u'", Var::U1}};
  for (int t = 0; t < 40; ++t) {
    Domain1D d(-2, 2);
    auto bps = testgen::random_breakpoints(rng, d, 3);
    std::vector<RationalFunction> segs;
    for (std::size_t k = 0; k <= bps.size(); ++k) segs.emplace_back(testgen::random_polynomial(rng, 3));
    auto u = PiecewiseFunction::point_valued(d, bps, segs, std::vector<BreakpointValue>(bps.size(), std::nullopt));
    for (const auto& [g, pivot] : ops) {
      DiffOperator op1(1, parse_expression(g), pivot);
      std::optional<PiecewiseFunction> applied;
      try {
        applied = apply_operator(op1, u);
      } catch (const Error& e) {
        EXPECT_EQ(e.code(), ErrorCode::IrrationalBreakpoint);
        continue;
      }
      const PiecewiseFunction& tu = *applied;
      for (const auto& c : bps) EXPECT_FALSE(tu.is_defined_at(c));
      for (int k = -31; k <= 31; ++k) {
        Rational x(k, 16);
        x += Rational(1, 101);
        if (!tu.is_defined_at(x)) continue;
        const Polynomial& s = u.lower_segments()[u.gap_of(x)].num();
        Rational expect = op1.at({x, s(x), s.derivative()(x), s.derivative().derivative()(x)});
        EXPECT_EQ(tu.evaluate(x), ExtendedInterval(ExtendedReal(expect))) << g;
      }
    }
  }
}

TEST(LocalSubsolution, Examples) {
  Rational eps(1, 10);
  auto a = local_subsolution(d1(), constant(0), Rational(0), eps);
  EXPECT_EQ(a.p, Polynomial({Rational(0), Rational(-1, 20)}));
  EXPECT_GE(a.samples, 1000u);
  auto b = local_subsolution(ident(), constant(3), Rational(0), eps);
  EXPECT_EQ(b.p.coefficient(0), Rational(59, 20));
  auto c = local_subsolution(cubic(), constant(0), Rational(0), eps);
  Rational c0 = c.p(Rational(0)), c1 = c.p.derivative()(Rational(0));
  EXPECT_LT(abs(c0 * c0 * c0 + c1 + Rational(1, 20)), pow2(-40));
  EXPECT_EQ(code_of([&] { local_subsolution(d1(), heaviside(), Rational(0), eps); }), ErrorCode::TargetUndefined);
  EXPECT_EQ(code_of([&] { local_subsolution(d1(), constant(0), Rational(0), Rational(0)); }), ErrorCode::OutOfDomain);
  auto bounded = op(1, "u' / (max(u', -u') + 1)", Var::U1);
  EXPECT_EQ(code_of([&] { local_subsolution(bounded, constant(5), Rational(0), eps); }), ErrorCode::PivotBracketFailure);
}

TEST(LocalSubsolution, PatchSatisfiesInequality) {
  auto p = local_subsolution(ident(), parabola(), Rational(1, 3), Rational(1, 8));
  EXPECT_GT(p.radius, 0);
  for (int k = 0; k <= 200; ++k) {
    Rational x = p.left + (p.right - p.left) * Rational(k, 200);
    Rational f = parabola().evaluate(x).lower().value();
    Rational tp = p.p(x);
    EXPECT_LE(f - Rational(1, 8), tp);
    EXPECT_LE(tp, f);
  }
}

TEST(GlobalSubsolution, Examples) {
  auto u = global_subsolution(d1(), constant(0), Rational(1, 4), -kHalf, kHalf);
  EXPECT_EQ(u.pieces.size(), 1u);
  EXPECT_TRUE(u.gamma.empty());
  EXPECT_GE(u.samples, 1000u);

  auto h = global_subsolution(d1(), heaviside(), Rational(1, 4), -kHalf, kHalf);
  EXPECT_GE(h.pieces.size(), 2u);
  EXPECT_TRUE(h.gamma.contains(Rational(0)));
  EXPECT_LE(h.max_gap, Rational(1, 4));
  EXPECT_GE(h.min_gap, 0);

  std::size_t prev = 0;
  for (int k = 1; k <= 3; ++k) {
    auto q = global_subsolution(ident(), parabola(), pow2(-k), -kHalf, kHalf);
    EXPECT_GE(q.pieces.size(), prev);
    prev = q.pieces.size();
    EXPECT_LE(q.max_gap, pow2(-k));
  }
  SubsolutionOptions coarse;
  coarse.min_width = Rational(1, 4);
  EXPECT_EQ(code_of([&] { global_subsolution(ident(), parabola(), pow2(-12), -kHalf, kHalf, coarse); }), ErrorCode::PatchStall);
  EXPECT_EQ(code_of([&] { global_subsolution(d1(), constant(0), kHalf, Rational(-2), kHalf); }), ErrorCode::OutOfDomain);
}

TEST(GlobalSubsolution, ThreadedCoverIsIdentical) {
  SubsolutionOptions par;
  par.threads = 4;
  auto f = PiecewiseFunction::point_valued(kOmega, {Rational(-1, 4), Rational(1, 4)}, {P({0, 1}), P({1}), P({0, 0, 1})},
                                           {std::nullopt, std::nullopt});
  auto a = global_subsolution(ident(), f, Rational(1, 8), -kHalf, kHalf);
  auto b = global_subsolution(ident(), f, Rational(1, 8), -kHalf, kHalf, par);
  ASSERT_EQ(a.pieces.size(), b.pieces.size());
  for (std::size_t k = 0; k < a.pieces.size(); ++k) EXPECT_EQ(a.pieces[k].p, b.pieces[k].p);
  EXPECT_TRUE(same_function(a.function(), b.function()));
}

TEST(GlobalSubsolution, IndependentOracle) {
  // Exact recheck of the band at points the cover never sampled.
  testgen::Rng rng(602);
  const PiecewiseFunction targets[] = {constant(0), parabola(), heaviside()};
  const DiffOperator ops[] = {d1(), ident(), cubic()};
  for (const auto& t : ops)
    for (const auto& f : targets) {
      Rational eps = pow2(-testgen::uniform_int(rng, 1, 3));
      auto u = global_subsolution(t, f, eps, -kHalf, kHalf);
      auto tu = apply_operator(t, u.function());
      for (int k = 0; k < 300; ++k) {
        Rational x = -kHalf + Rational(2 * k + 1, 600) + Rational(1, 7919);
        if (!tu.is_defined_at(x) || !f.is_defined_at(x)) continue;
        Rational fx = f.evaluate(x).lower().value(), v = tu.evaluate(x).lower().value();
        EXPECT_LE(fx - eps, v);
        EXPECT_LE(v, fx);
      }
    }
}

TEST(Assimilate, Examples) {
  std::vector<Rational> eps{kHalf, Rational(1, 4), Rational(1, 8)};
  auto z = assimilate_solution(d1(), constant(0), eps, -kHalf, kHalf);
  EXPECT_TRUE(z.gaps_within_eps);
  EXPECT_TRUE(z.monotone);
  for (bool b : z.below_target) EXPECT_TRUE(b);
  // The last stage sits in [-1/8, 0], so the sup is within 1/8 of 0.
  auto v = z.sup.evaluate(Rational(0));
  EXPECT_LE(Rational(-1, 8), v.lower().value());
  EXPECT_LE(v.upper().value(), 0);
  EXPECT_NE(z.cls.tag, HClassTag::General);

  auto h = assimilate_solution(d1(), heaviside(), eps, -kHalf, kHalf);
  EXPECT_TRUE(is_hausdorff_continuous(h.sup));
  EXPECT_TRUE(h.sup.evaluate(Rational(0)).is_proper());
  for (bool b : h.below_target) EXPECT_TRUE(b);
  auto target = graph_completion_map_F0(restrict_to(heaviside(), Domain1D(-kHalf, kHalf)));
  EXPECT_EQ(target.evaluate(Rational(0)), ExtendedInterval(ExtendedReal(0), ExtendedReal(1)));

  auto single = assimilate_solution(cubic(), parabola(), {Rational(1, 4)}, -kHalf, kHalf);
  auto u = global_subsolution(cubic(), parabola(), Rational(1, 4), -kHalf, kHalf);
  EXPECT_TRUE(same_function(single.sup, graph_completion_map_F0(apply_operator(cubic(), u.function()))));
  EXPECT_EQ(code_of([&] { assimilate_solution(d1(), constant(0), {Rational(1, 4), kHalf}, -kHalf, kHalf); }),
            ErrorCode::OutOfDomain);
}
