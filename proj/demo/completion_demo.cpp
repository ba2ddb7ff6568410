// Envelopes, graph completion and reconstruction from continuous minorants for a
// function with a jump, a removable point and a pole.

#include <cstdio>

#include "hcont/hcont.hpp"

using namespace hcont;

int main() {
  Domain1D omega(-2, 2);
  Polynomial x = Polynomial::x();
  // u = x^2 left of -1, 1/x on (-1, 0) with a pole at 0, 1 - x on (0, 1), 0 right of 1.
  PiecewiseFunction u = PiecewiseFunction::point_valued(
      omega, {Rational(-1), Rational(0), Rational(1)},
      {RationalFunction(x * x), RationalFunction(Polynomial::constant(Rational(1)), x),
       RationalFunction(Polynomial::constant(Rational(1)) - x), RationalFunction::constant(Rational(0))},
      {ExtendedInterval(ExtendedReal(5)), std::nullopt, ExtendedInterval(ExtendedReal(0))});
  std::printf("u        = %s\n", u.to_string().c_str());

  DenseDomain d = definition_domain(u);
  std::printf("I(u)     = %s\n", lower_baire(d, u).to_string().c_str());
  std::printf("S(u)     = %s\n", upper_baire(d, u).to_string().c_str());

  PiecewiseFunction h = graph_completion_map_F0(u);
  HClass c = classify(h);
  std::printf("F0(u)    = %s\n", h.to_string().c_str());
  std::printf("class    = %s, H-continuous: %s\n", to_string(c.tag).c_str(), is_hausdorff_continuous(h) ? "yes" : "no");

  StationaryFamily minorants = continuous_minorants(h, 6);
  PiecewiseFunction back = sup_of_stationary_family(minorants, h);
  std::printf("sup of %zu continuous minorants reproduces F0(u): %s\n", minorants.members.size(),
              same_function(back, h) ? "yes" : "no");

  PiecewiseFunction v = u.with_values({ExtendedInterval(ExtendedReal(-7)), std::nullopt, ExtendedInterval(ExtendedReal(1))});
  std::printf("u ~ u redefined at -1 and 1: %s\n", equivalent(u, v) ? "yes" : "no");
}
