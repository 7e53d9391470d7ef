#include <gtest/gtest.h>

#include "test_support.hpp"

using namespace falin;
using falin::testing::random_laurent;

namespace {

LaurentPoly t(std::size_t nvars, std::size_t k, int power = 1) {
  return LaurentPoly::variable(nvars, k, power);
}

LaurentPoly c(std::size_t nvars, const Rational& v) { return LaurentPoly::constant(nvars, v); }

} // namespace

TEST(Rational, CanonicalForm) {
  Rational r(6, -4);
  r.canonicalize();
  EXPECT_EQ(to_string(r), "-3/2");
  EXPECT_EQ(to_string(Rational(0)), "0");
  EXPECT_EQ(parse_rational("10/4"), Rational(5, 2));
  EXPECT_THROW(parse_rational("1/0"), DomainError);
  EXPECT_THROW(parse_rational("x"), DomainError);
}

TEST(Rational, ConvergentsRecoverSmallFractions) {
  // 355/113 + tiny perturbation rounds back to 355/113.
  Rational x = Rational(355, 113) + Rational(1, Integer("1000000000000000000000"));
  EXPECT_EQ(round_to_denominator(x, 1000), Rational(355, 113));
  EXPECT_EQ(convergents(Rational(7, 3)).back(), Rational(7, 3));
  EXPECT_EQ(round_to_denominator(Rational(-5, 2), 1), Rational(-3));
}

TEST(Laurent, AddCancels) {
  auto p = t(2, 0) + t(2, 1);
  EXPECT_EQ(p + (-t(2, 0)), t(2, 1));
  // 2/t1 + 1/(2 t1) = 5/(2 t1)
  auto a = l_scale(t(1, 0, -1), 2);
  auto b = l_scale(t(1, 0, -1), Rational(1, 2));
  EXPECT_EQ(a + b, l_scale(t(1, 0, -1), Rational(5, 2)));
  EXPECT_EQ(p + LaurentPoly(2), p);
}

TEST(Laurent, Multiply) {
  EXPECT_EQ(t(1, 0, 2) * t(1, 0, -2), c(1, 1));
  EXPECT_EQ((t(2, 0) - t(2, 1)) * (t(2, 0) + t(2, 1)), t(2, 0, 2) - t(2, 1, 2));
  auto p = t(2, 0) - l_scale(t(2, 1, -3), 7);
  EXPECT_EQ(p * c(2, 1), p);
}

TEST(Laurent, MismatchedVariableCountThrows) {
  EXPECT_THROW(t(1, 0) + t(2, 0), DimensionMismatch);
  EXPECT_THROW(t(1, 0) * t(2, 0), DimensionMismatch);
}

TEST(Laurent, Eval) {
  auto p = t(1, 0, 2) - c(1, 1);
  std::vector<Rational> three{3}, one{1}, two{2}, zero{0};
  EXPECT_EQ(l_eval(p, three), 8);
  EXPECT_EQ(l_eval(p, one), 0);
  EXPECT_EQ(l_eval(t(1, 0, -1), two), Rational(1, 2));
  EXPECT_THROW(l_eval(p, zero), DomainError);
}

TEST(Laurent, SubstMonomial) {
  // t1 -> s1 t1 over (t1, s1)
  std::vector<LaurentPoly> images{t(2, 0) * t(2, 1)};
  EXPECT_EQ(l_subst_monomial(t(1, 0, 2), images, 2), t(2, 0, 2) * t(2, 1, 2));

  auto p = t(2, 0) - l_scale(t(2, 1, -1), 3);
  std::vector<LaurentPoly> ident{t(2, 0), t(2, 1)};
  EXPECT_EQ(l_subst_monomial(p, ident, 2), p);

  std::vector<LaurentPoly> to_one{c(1, 1)};
  EXPECT_EQ(l_subst_monomial(t(1, 0) + c(1, 2), to_one, 1), c(1, 3));

  std::vector<LaurentPoly> bad{t(1, 0) + c(1, 1)};
  EXPECT_THROW(l_subst_monomial(t(1, 0), bad, 1), DomainError);
  std::vector<LaurentPoly> scaled{l_scale(t(1, 0), 2)};
  EXPECT_THROW(l_subst_monomial(t(1, 0), scaled, 1), DomainError);
}

TEST(Laurent, CanonicalEquality) {
  // Same polynomial built in different orders compares equal; a zero term is never stored.
  LaurentPoly a(2), b(2);
  a.add_term({1, 0}, 2);
  a.add_term({0, -1}, 3);
  b.add_term({0, -1}, 1);
  b.add_term({1, 0}, 2);
  b.add_term({0, -1}, 2);
  EXPECT_EQ(a, b);
  b.add_term({5, 5}, 1);
  b.add_term({5, 5}, -1);
  EXPECT_EQ(a, b);
  EXPECT_EQ(b.size(), 2u);
}

TEST(LaurentProperty, RingLaws) {
  std::mt19937_64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    auto a = random_laurent(rng, 2), b = random_laurent(rng, 2), d = random_laurent(rng, 2);
    EXPECT_EQ((a + b) + d, a + (b + d));
    EXPECT_EQ(a + b, b + a);
    EXPECT_EQ((a * b) * d, a * (b * d));
    EXPECT_EQ(a * b, b * a);
    EXPECT_EQ(a * (b + d), a * b + a * d);
  }
}

TEST(LaurentProperty, EvalIsMultiplicative) {
  std::mt19937_64 rng(12);
  for (int trial = 0; trial < 200; ++trial) {
    auto a = random_laurent(rng, 3), b = random_laurent(rng, 3);
    std::vector<Rational> x;
    for (int k = 0; k < 3; ++k) {
      Rational v = falin::testing::small_rational(rng);
      x.push_back(v == 0 ? Rational(5, 7) : v);
    }
    EXPECT_EQ(l_eval(a * b, x), l_eval(a, x) * l_eval(b, x));
    EXPECT_EQ(l_eval(a + b, x), l_eval(a, x) + l_eval(b, x));
  }
}

TEST(LaurentProperty, SubstMonomialIsHomomorphism) {
  std::mt19937_64 rng(13);
  // t1 -> t1 s1^2, t2 -> s2^-1 over (t1, t2, s1, s2)
  std::vector<LaurentPoly> images{t(4, 0) * t(4, 2, 2), t(4, 3, -1)};
  for (int trial = 0; trial < 200; ++trial) {
    auto a = random_laurent(rng, 2), b = random_laurent(rng, 2);
    auto sa = l_subst_monomial(a, images, 4);
    auto sb = l_subst_monomial(b, images, 4);
    EXPECT_EQ(l_subst_monomial(a + b, images, 4), sa + sb);
    EXPECT_EQ(l_subst_monomial(a * b, images, 4), sa * sb);
  }
}
