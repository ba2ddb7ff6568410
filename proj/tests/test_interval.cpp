#include <gtest/gtest.h>

#include <random>

#include "hcont/interval.hpp"
#include "support/generators.hpp"

using namespace hcont;

namespace {

ExtendedInterval iv(const char* a, const char* b) { return {parse_extended_real(a), parse_extended_real(b)}; }
const ExtendedReal kInf = ExtendedReal::pos_inf();
const ExtendedReal kNegInf = ExtendedReal::neg_inf();

}  // namespace

TEST(ExtendedReal, TotalOrderWithInfinities) {
  EXPECT_LT(kNegInf, ExtendedReal(-1000000));
  EXPECT_LT(ExtendedReal(Rational(7, 3)), kInf);
  EXPECT_EQ(kInf, kInf);
  EXPECT_GT(ExtendedReal(Rational(1, 2)), ExtendedReal(Rational(1, 3)));
}

TEST(ExtendedReal, IndeterminateFormsThrow) {
  EXPECT_THROW(kInf - kInf, Error);
  EXPECT_THROW(kNegInf + kInf, Error);
  EXPECT_THROW(ExtendedReal(0) * kInf, Error);
  EXPECT_EQ(kInf + ExtendedReal(5), kInf);
  EXPECT_EQ(ExtendedReal(-2) * kInf, kNegInf);
  EXPECT_EQ(kNegInf * kNegInf, kInf);
}

TEST(ExtendedReal, TextRoundTrip) {
  for (const char* s : {"-inf", "+inf", "0", "-7", "3/4", "-22/7"}) EXPECT_EQ(to_string(parse_extended_real(s)), s);
  EXPECT_EQ(parse_extended_real("0.125"), ExtendedReal(Rational(1, 8)));
  EXPECT_EQ(parse_extended_real("6/8"), ExtendedReal(Rational(3, 4)));
  EXPECT_THROW(parse_extended_real("1/0"), Error);
  EXPECT_THROW(parse_extended_real("abc"), Error);
}

TEST(ExtendedInterval, RejectsReversedEndpoints) {
  EXPECT_THROW(iv("2", "1"), Error);
  EXPECT_THROW(ExtendedInterval(kInf, kNegInf), Error);
  EXPECT_NO_THROW(iv("-inf", "+inf"));
}

TEST(Width, ThreeCaseTable) {
  EXPECT_EQ(width(iv("1", "3")), ExtendedReal(2));
  EXPECT_EQ(width(iv("0", "+inf")), kInf);
  EXPECT_EQ(width(iv("-inf", "0")), kInf);
  EXPECT_EQ(width(iv("-inf", "+inf")), kInf);
  EXPECT_EQ(width(iv("+inf", "+inf")), ExtendedReal(0));
  EXPECT_EQ(width(iv("-inf", "-inf")), ExtendedReal(0));
  EXPECT_TRUE(iv("2", "2").is_degenerate());
  EXPECT_TRUE(iv("1/3", "1/2").is_proper());
}

TEST(Modulus, MaxOfAbsoluteEndpoints) {
  EXPECT_EQ(modulus(iv("-3", "2")), ExtendedReal(3));
  EXPECT_EQ(modulus(iv("0", "0")), ExtendedReal(0));
  EXPECT_EQ(modulus(iv("-inf", "1")), kInf);
}

TEST(Orders, Examples) {
  EXPECT_TRUE(leq(iv("0", "1"), iv("1", "2")));
  EXPECT_FALSE(leq(iv("0", "3"), iv("1", "2")));
  EXPECT_FALSE(leq(iv("1", "2"), iv("0", "3")));
  EXPECT_TRUE(leq(iv("5", "5"), iv("5", "5")));

  EXPECT_TRUE(subset_of(iv("1", "2"), iv("0", "3")));
  EXPECT_FALSE(subset_of(iv("0", "3"), iv("1", "2")));
  EXPECT_TRUE(subset_of(iv("2", "2"), iv("2", "2")));

  EXPECT_TRUE(strong_leq(iv("0", "1"), iv("1", "2")));
  EXPECT_FALSE(strong_leq(iv("0", "2"), iv("1", "3")));
  // A proper interval and its small translate are not strongly comparable.
  auto a = iv("0", "1");
  auto b = iv("1/1000", "1001/1000");
  EXPECT_FALSE(strong_leq(a, b));
  EXPECT_FALSE(strong_leq(b, a));
  EXPECT_TRUE(leq(a, b));
}

TEST(Lattice, JoinMeetExamples) {
  EXPECT_EQ(join(iv("0", "1"), iv("-1", "2")), iv("0", "2"));
  EXPECT_EQ(meet(iv("0", "1"), iv("-1", "2")), iv("-1", "1"));
  auto a = iv("-1/2", "+inf");
  EXPECT_EQ(join(a, a), a);
  EXPECT_EQ(meet(a, a), a);
}

TEST(Orders, PartialOrderAxiomsOnRandomTriples) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 3000; ++trial) {
    auto a = testgen::random_interval(rng), b = testgen::random_interval(rng), c = testgen::random_interval(rng);
    for (auto rel : {&leq, &subset_of}) {
      EXPECT_TRUE(rel(a, a));
      if (rel(a, b) && rel(b, a)) { EXPECT_EQ(a, b); }
      if (rel(a, b) && rel(b, c)) { EXPECT_TRUE(rel(a, c)); }
    }
    // strong_leq is reflexive only on degenerate intervals.
    EXPECT_EQ(strong_leq(a, a), a.is_degenerate());
    if (strong_leq(a, b) && strong_leq(b, c)) { EXPECT_TRUE(strong_leq(a, c)); }
    if (strong_leq(a, b)) { EXPECT_TRUE(leq(a, b)); }
    if (a.is_degenerate() && b.is_degenerate()) {
      bool real_leq = a.lower() <= b.lower();
      EXPECT_EQ(leq(a, b), real_leq);
      EXPECT_EQ(strong_leq(a, b), real_leq);
      EXPECT_EQ(subset_of(a, b), a == b);
    }
  }
}

TEST(Lattice, AbsorptionAndMonotonicity) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 2000; ++trial) {
    auto a = testgen::random_interval(rng), b = testgen::random_interval(rng), c = testgen::random_interval(rng);
    EXPECT_EQ(join(a, meet(a, b)), a);
    EXPECT_EQ(meet(a, join(a, b)), a);
    EXPECT_TRUE(leq(a, join(a, b)));
    EXPECT_TRUE(leq(meet(a, b), b));
    if (leq(a, b)) {
      EXPECT_TRUE(leq(join(a, c), join(b, c)));
      EXPECT_TRUE(leq(meet(c, a), meet(c, b)));
    }
    EXPECT_GE(width(a), ExtendedReal(0));
    EXPECT_GE(modulus(a), ExtendedReal(0));
  }
}
