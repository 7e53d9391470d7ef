#include <gtest/gtest.h>

#include "test_support.hpp"

using namespace falin;
using namespace falin::testing;

TEST(Corpus, ExAFromExplicitConjugator) {
  auto alpha = parse_map("rank 2\nmap\nz1 -> z1\nz2 -> z2 + z1^2\nend\n");
  auto alpha_inv = invert(alpha);
  auto sigma = conjugate_diagonal(alpha, alpha_inv, int_matrix({{1, 0}, {0, 1}}));
  EXPECT_EQ(print(sigma), ex_a_text());
}

TEST(Corpus, ElementaryFactor) {
  auto e = make_elementary(2, 1, parse_scalar_poly("z1^2 - 3*z1", 2));
  EXPECT_EQ(e.map, parse_map("rank 2\nmap\nz1 -> z1\nz2 -> z2 + z1^2 - 3*z1\nend\n"));
  EXPECT_EQ(e.inverse, parse_map("rank 2\nmap\nz1 -> z1\nz2 -> z2 - z1^2 + 3*z1\nend\n"));
  EXPECT_THROW(make_elementary(2, 1, parse_scalar_poly("z2*z1", 2)), DomainError);
  EXPECT_THROW(make_elementary(2, 2, parse_scalar_poly("z1", 2)), DimensionMismatch);
}

TEST(Corpus, Deterministic) {
  CorpusSpec spec;
  spec.rank = 3;
  spec.seed = 77;
  spec.n_elementary = 3;
  spec.max_poly_degree = 3;
  spec.weight_bound = 3;
  auto a = gen_action(spec);
  auto b = gen_action(spec);
  EXPECT_EQ(print(a.sigma), print(b.sigma));
  EXPECT_EQ(a.alpha, b.alpha);
  EXPECT_EQ(a.weights, b.weights);
  spec.seed = 78;
  EXPECT_NE(print(gen_action(spec).sigma), print(a.sigma));
}

TEST(Corpus, RespectsBounds) {
  for (std::uint64_t seed = 0; seed < 40; ++seed) {
    CorpusSpec spec;
    spec.rank = 1 + seed % 3;
    spec.seed = seed;
    spec.n_elementary = 3;
    spec.max_poly_degree = 3;
    spec.weight_bound = 3;
    auto gen = gen_action(spec);
    EXPECT_LE(gen.sigma.degree(), spec.degree_cap);
    EXPECT_TRUE(is_effective(gen.weights));
    for (std::size_t i = 0; i < spec.rank; ++i)
      for (std::size_t j = 0; j < spec.rank; ++j)
        EXPECT_LE(std::abs(gen.weights(i, j)), 3);
    EXPECT_EQ(compose(gen.alpha, gen.alpha_inverse), ScalarMap::identity(spec.rank));
    EXPECT_EQ(compose(gen.alpha_inverse, gen.alpha), ScalarMap::identity(spec.rank));
  }
}

TEST(Corpus, ExplicitAndSingularWeights) {
  CorpusSpec spec;
  spec.rank = 2;
  spec.seed = 3;
  spec.weights = int_matrix({{2, 1}, {4, 2}});
  auto gen = gen_action(spec);
  EXPECT_EQ(gen.weights, int_matrix({{2, 1}, {4, 2}}));
  EXPECT_TRUE(check_axioms(gen.sigma).passed());

  CorpusSpec loose;
  loose.rank = 2;
  loose.force_effective = false;
  bool saw_singular = false;
  for (std::uint64_t seed = 0; seed < 200 && !saw_singular; ++seed) {
    loose.seed = seed;
    saw_singular = !is_effective(gen_action(loose).weights);
  }
  EXPECT_TRUE(saw_singular);
}

TEST(Corpus, RejectsBadSpecs) {
  CorpusSpec spec;
  spec.rank = 0;
  EXPECT_THROW(gen_action(spec), DomainError);
  spec.rank = 2;
  spec.weights = IntMatrix(3, 3, 1);
  EXPECT_THROW(gen_action(spec), DimensionMismatch);
}

TEST(CorpusProperty, GroundTruthConjugates) {
  for (std::uint64_t seed = 100; seed < 140; ++seed) {
    CorpusSpec spec;
    spec.rank = 1 + seed % 3;
    spec.seed = seed;
    spec.n_elementary = 3;
    spec.max_poly_degree = 3;
    spec.weight_bound = 3;
    auto gen = gen_action(spec);
    EXPECT_TRUE(verify_conjugation(gen.sigma, gen.alpha, gen.weights)) << "seed " << seed;
    EXPECT_TRUE(check_axioms(gen.sigma).passed()) << "seed " << seed;
  }
}
