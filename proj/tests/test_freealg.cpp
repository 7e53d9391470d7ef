#include <gtest/gtest.h>

#include "test_support.hpp"

using namespace falin;
using namespace falin::testing;

namespace {

ScalarPoly z(std::size_t rank, int k) { return ScalarPoly::generator(rank, {}, k); }
ScalarPoly k(std::size_t rank, const Rational& v) { return ScalarPoly::constant(rank, {}, v); }
ScalarPoly word(std::size_t rank, std::initializer_list<int> letters) {
  return ScalarPoly::monomial(rank, {}, Word(letters), 1);
}

} // namespace

TEST(Word, GradedLexOrder) {
  EXPECT_LT(Word{}, Word{2});
  EXPECT_LT((Word{2}), (Word{1, 1}));
  EXPECT_LT((Word{1, 2}), (Word{2, 1}));
  EXPECT_EQ((Word{1} + Word{2}), (Word{1, 2}));
  EXPECT_THROW(Word{0}, DomainError);
}

TEST(FreeAlg, MultiplicationIsConcatenation) {
  EXPECT_EQ(z(2, 1) * z(2, 2), word(2, {1, 2}));
  EXPECT_EQ(z(2, 2) * z(2, 1), word(2, {2, 1}));
  EXPECT_NE(z(2, 1) * z(2, 2), z(2, 2) * z(2, 1));
  EXPECT_EQ((z(2, 1) + z(2, 2)) * z(2, 1), word(2, {1, 1}) + word(2, {2, 1}));
  auto sq = (z(2, 1) + z(2, 2)) * (z(2, 1) + z(2, 2));
  EXPECT_EQ(sq, word(2, {1, 1}) + word(2, {1, 2}) + word(2, {2, 1}) + word(2, {2, 2}));
  EXPECT_EQ(sq.size(), 4u);
}

TEST(FreeAlg, MismatchedRingsThrow) {
  EXPECT_THROW(z(2, 1) * z(3, 1), DimensionMismatch);
  ActionPoly a(2, LaurentRing{2}), b(2, LaurentRing{1});
  EXPECT_THROW(a + b, DimensionMismatch);
  EXPECT_THROW(ScalarPoly::generator(2, {}, 3), DomainError);
}

TEST(FreeAlg, Substitute) {
  const Rational cst(3, 2);
  std::vector<ScalarPoly> shift{z(1, 1) + k(1, cst)};
  EXPECT_EQ(f_substitute(word(1, {1, 1}), shift),
            word(1, {1, 1}) + Rational(2) * cst * z(1, 1) + k(1, cst * cst));

  auto p = word(2, {1, 2}) + Rational(5) * z(2, 2) + k(2, 7);
  std::vector<ScalarPoly> id{z(2, 1), z(2, 2)};
  EXPECT_EQ(f_substitute(p, id), p);

  std::vector<ScalarPoly> swap{z(2, 2), z(2, 1)};
  EXPECT_EQ(f_substitute(word(2, {1, 2}), swap), word(2, {2, 1}));

  std::vector<ScalarPoly> wrong{z(2, 1)};
  EXPECT_THROW(f_substitute(p, wrong), DimensionMismatch);
}

TEST(FreeAlg, SubstituteScalarIntoLaurent) {
  // Scalar coefficients embed into Laurent images.
  const LaurentRing ring{1};
  std::vector<ActionPoly> images{
      ActionPoly::monomial(1, ring, Word{1}, LaurentPoly::variable(1, 0))};
  auto r = f_substitute(word(1, {1, 1}) + k(1, 2), images);
  ActionPoly expect(1, ring);
  expect.add_term(Word{1, 1}, LaurentPoly::variable(1, 0, 2));
  expect.add_term(Word{}, LaurentPoly::constant(1, 2));
  EXPECT_EQ(r, expect);
}

TEST(FreeAlg, Degree) {
  EXPECT_EQ(f_degree(word(2, {1, 2, 1})), 3);
  EXPECT_EQ(f_degree(ScalarPoly(2)), -1);
  EXPECT_EQ(f_degree(k(1, 5) + z(1, 1)), 1);
}

TEST(FreeAlg, Abelianize) {
  auto comm = word(2, {1, 2}) - word(2, {2, 1});
  EXPECT_TRUE(abelianize(comm).is_zero());
  EXPECT_EQ(abelianize(word(2, {1, 2, 1})), LaurentPoly::monomial({2, 1}));
  auto lin = Rational(3) * z(2, 1) - z(2, 2);
  LaurentPoly expect(2);
  expect.add_term({1, 0}, 3);
  expect.add_term({0, 1}, -1);
  EXPECT_EQ(abelianize(lin), expect);
}

TEST(FreeAlg, AbelianizeLaurentPutsTorusFirst) {
  auto p = parse_action_poly("(t2 - t1^2)*z1*z2", 2);
  LaurentPoly expect(4);
  expect.add_term({0, 1, 1, 1}, 1);
  expect.add_term({2, 0, 1, 1}, -1);
  EXPECT_EQ(abelianize(p), expect);
}

TEST(FreeAlgProperty, RingLaws) {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 200; ++trial) {
    auto a = random_scalar_poly(rng, 2), b = random_scalar_poly(rng, 2),
         c = random_scalar_poly(rng, 2);
    EXPECT_EQ((a + b) + c, a + (b + c));
    EXPECT_EQ(a + b, b + a);
    EXPECT_EQ((a * b) * c, a * (b * c));
    EXPECT_EQ(a * (b + c), a * b + a * c);
    EXPECT_EQ((a + b) * c, a * c + b * c);
    EXPECT_TRUE((a - a).is_zero());
  }
}

TEST(FreeAlgProperty, MultiplicationMatchesMatrixOracle) {
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 100; ++trial) {
    auto a = random_scalar_poly(rng, 3), b = random_scalar_poly(rng, 3);
    auto pt = random_point(rng, 3);
    EXPECT_EQ(eval_at_matrices(a * b, pt), eval_at_matrices(a, pt) * eval_at_matrices(b, pt));
  }
}

TEST(FreeAlgProperty, SubstituteIsHomomorphism) {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 100; ++trial) {
    auto p = random_scalar_poly(rng, 2), q = random_scalar_poly(rng, 2);
    std::vector<ScalarPoly> g{random_scalar_poly(rng, 2), random_scalar_poly(rng, 2)};
    EXPECT_EQ(f_substitute(p * q, g), f_substitute(p, g) * f_substitute(q, g));
    // Oracle: evaluating the substituted polynomial equals evaluating p at the images.
    auto pt = random_point(rng, 2);
    std::vector<Mat> inner{eval_at_matrices(g[0], pt), eval_at_matrices(g[1], pt)};
    EXPECT_EQ(eval_at_matrices(f_substitute(p, g), pt), eval_at_matrices(p, inner));
  }
}

TEST(FreeAlgProperty, TruncatedSubstituteDropsOnlyLongWords) {
  std::mt19937_64 rng(24);
  for (int trial = 0; trial < 50; ++trial) {
    auto p = random_scalar_poly(rng, 2, 4, 3);
    std::vector<ScalarPoly> g{random_scalar_poly(rng, 2), random_scalar_poly(rng, 2)};
    EXPECT_EQ(f_substitute(p, g, 3), f_substitute(p, g).truncated(3));
  }
}

TEST(FreeAlgProperty, AbelianizeIsHomomorphism) {
  std::mt19937_64 rng(25);
  for (int trial = 0; trial < 200; ++trial) {
    auto a = random_scalar_poly(rng, 3), b = random_scalar_poly(rng, 3);
    EXPECT_EQ(abelianize(a * b), abelianize(a) * abelianize(b));
    EXPECT_TRUE(abelianize(a * b - b * a).is_zero());
  }
}

TEST(FreeAlgProperty, DegreeOfProduct) {
  std::mt19937_64 rng(26);
  for (int trial = 0; trial < 200; ++trial) {
    auto a = random_scalar_poly(rng, 2), b = random_scalar_poly(rng, 2);
    if (a.is_zero() || b.is_zero())
      continue;
    EXPECT_LE(f_degree(a * b), f_degree(a) + f_degree(b));
    auto wa = ScalarPoly::monomial(2, {}, random_word(rng, 2, 4), 2);
    auto wb = ScalarPoly::monomial(2, {}, random_word(rng, 2, 4), -3);
    EXPECT_EQ(f_degree(wa * wb), f_degree(wa) + f_degree(wb));
  }
}
