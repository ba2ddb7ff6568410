// Piecewise polynomial subsolutions of u' + u^3 = H (Heaviside) on [-1/2, 1/2] and the
// H-continuous function they assimilate to.

#include <cstdio>

#include "hcont/hcont.hpp"

using namespace hcont;

int main() {
  Domain1D omega(-1, 1);
  DiffOperator t(1, parse_expression("u' + u^3"), Var::U1);
  PiecewiseFunction f = PiecewiseFunction::point_valued(
      omega, {Rational(0)}, {RationalFunction::constant(Rational(0)), RationalFunction::constant(Rational(1))}, {std::nullopt});
  std::vector<Rational> eps = {Rational(1, 2), Rational(1, 4), Rational(1, 8), Rational(1, 16)};
  SubsolutionOptions opt;
  opt.threads = 4;

  Assimilation s = assimilate_solution(t, f, eps, Rational(-1, 2), Rational(1, 2), opt);
  std::printf("%-8s %-8s %-10s %-24s %s\n", "eps", "patches", "checked", "gap range", "below F0(f)");
  for (std::size_t k = 0; k < s.stages.size(); ++k) {
    const auto& u = s.stages[k];
    std::printf("%-8s %-8zu %-10zu [%.6f, %.6f]   %s\n", to_string(u.epsilon).c_str(), u.pieces.size(), u.samples,
                to_double(u.min_gap), to_double(u.max_gap), s.below_target[k] ? "yes" : "no");
  }
  std::printf("sup class %s, H-continuous: %s\n", to_string(s.cls.tag).c_str(),
              is_hausdorff_continuous(s.sup) ? "yes" : "no");
  std::printf("\n%-8s %-22s %s\n", "x", "sup", "f");
  for (int k = -4; k <= 4; ++k) {
    Rational x(k, 9);
    ExtendedInterval v = s.sup.evaluate(x);
    std::printf("%-8s [%.6f, %.6f]   %s\n", to_string(x).c_str(), to_double(v.lower().value()), to_double(v.upper().value()),
                f.is_defined_at(x) ? to_string(f.evaluate(x).lower()).c_str() : "undefined");
  }
}
