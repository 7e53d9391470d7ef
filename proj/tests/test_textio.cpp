#include <gtest/gtest.h>

#include "test_support.hpp"

using namespace falin;
using namespace falin::testing;

namespace {

// Line and column of the ParseError thrown for text, or (0, 0).
std::pair<std::size_t, std::size_t> error_at(const std::string& text) {
  try {
    parse_action(text);
  } catch (const ParseError& e) {
    return {e.line(), e.column()};
  } catch (const Error&) {
  }
  try {
    parse_map(text);
  } catch (const ParseError& e) {
    return {e.line(), e.column()};
  } catch (const Error&) {
  }
  return {0, 0};
}

} // namespace

TEST(Print, ScalarPolynomials) {
  EXPECT_EQ(print(parse_scalar_poly("z2*z1 + z1*z2", 2)), "z1*z2 + z2*z1");
  EXPECT_EQ(print(parse_scalar_poly("z1*z1*z1 - 1/2 + 3*z2", 2)), "-1/2 + 3*z2 + z1^3");
  EXPECT_EQ(print(parse_scalar_poly("0*z1", 1)), "0");
  EXPECT_EQ(print(parse_scalar_poly("-z1^2*z2*z1", 2)), "-z1^2*z2*z1");
}

TEST(Print, ActionPolynomials) {
  EXPECT_EQ(print(parse_action_poly("(t2 - t1^2)*z1^2 + t2*z2", 2)), "t2*z2 + (t2 - t1^2)*z1^2");
  EXPECT_EQ(print(parse_action_poly("-1/2*t1^2*z2", 2)), "-1/2*t1^2*z2");
  EXPECT_EQ(print(parse_action_poly("t1^-1 + 2", 1)), "(t1^-1 + 2)");
  EXPECT_EQ(print(parse_action_poly("(t1 + 1)*(t1 - 1)", 1)), "(-1 + t1^2)");
}

TEST(Print, ExADocument) {
  EXPECT_EQ(print(parse_action(ex_a_text())), ex_a_text());
}

TEST(Parse, CommentsBlankLinesAndContinuation) {
  const char* text = "# comment\n\nrank 2   # trailing\naction\n"
                     "z2 -> t2*z2 + (t2\n - t1^2)*z1^2\n"
                     "z1 -> t1*z1\n\nend\n";
  EXPECT_EQ(print(parse_action(text)), ex_a_text());
}

TEST(Parse, PowersAndUnaryMinus) {
  EXPECT_EQ(parse_scalar_poly("(z1 + z2)^2", 2), parse_scalar_poly("z1^2 + z1*z2 + z2*z1 + z2^2", 2));
  EXPECT_EQ(parse_scalar_poly("-z1^2", 1), parse_scalar_poly("-1*z1*z1", 1));
  EXPECT_EQ(parse_action_poly("t1^-2*t1^3", 1), parse_action_poly("t1", 1));
  EXPECT_EQ(parse_action_poly("(2*t1)^-1", 1), parse_action_poly("1/2*t1^-1", 1));
  EXPECT_EQ(parse_scalar_poly("6/4", 1), parse_scalar_poly("3/2", 1));
}

TEST(Parse, ErrorPositions) {
  // Header is "rank 2\naction\n"; bindings start on line 3.
  EXPECT_EQ(error_at("rank 2\naction\nz1 -> t1*z1 +\nz2 -> t2*z2\nend\n"),
            (std::pair<std::size_t, std::size_t>{3, 14}));
  EXPECT_EQ(error_at("rank 2\naction\nz1 -> t1*z1\nz3 -> z1\nend\n"),
            (std::pair<std::size_t, std::size_t>{4, 1}));
  EXPECT_EQ(error_at("rank 1\naction\nz1 -> 1/0\nend\n"), (std::pair<std::size_t, std::size_t>{3, 9}));
  EXPECT_EQ(error_at("rank 1\nmap\nz1 -> t1*z1\nend\n"), (std::pair<std::size_t, std::size_t>{3, 7}));
  EXPECT_EQ(error_at("rank 1\naction\nz1 -> z1^-1\nend\n"), (std::pair<std::size_t, std::size_t>{3, 9}));
  EXPECT_EQ(error_at("rank 1\naction\nz1 -> z1 $\nend\n"), (std::pair<std::size_t, std::size_t>{3, 10}));
  EXPECT_EQ(error_at("rank 1\naction\nz1 -> z1\nz1 -> z1\nend\n"),
            (std::pair<std::size_t, std::size_t>{4, 1}));
  EXPECT_EQ(error_at("rank 2\naction\nz1 -> z1\nend\n"), (std::pair<std::size_t, std::size_t>{4, 1}));
  EXPECT_EQ(error_at("rank 1\naction\nz1 -> z1\n"), (std::pair<std::size_t, std::size_t>{4, 1}));
  EXPECT_EQ(error_at("rank 1\naction\nz1 -> z1\nend\nz1\n"), (std::pair<std::size_t, std::size_t>{5, 1}));
  EXPECT_EQ(error_at("rank 0\naction\nend\n"), (std::pair<std::size_t, std::size_t>{1, 6}));
  EXPECT_EQ(error_at("rank 1\nactoin\n"), (std::pair<std::size_t, std::size_t>{2, 1}));
  EXPECT_EQ(error_at("rank 1\naction\nz1 -> (z1 + 1\nend\n"), (std::pair<std::size_t, std::size_t>{4, 1}));
  EXPECT_EQ(error_at("rank 1\naction\nz1 -> (t1 - t1)^-1\nend\n"),
            (std::pair<std::size_t, std::size_t>{3, 16}));
}

TEST(Parse, ErrorMessageNamesPosition) {
  try {
    parse_action("rank 1\naction\nz1 -> z1 $\nend\n");
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_STREQ(e.what(), "line 3, column 10: unexpected character '$'");
  }
}

TEST(Report, ExAGolden) {
  auto report = linearize(parse_action(ex_a_text()));
  EXPECT_EQ(emit_report(report),
            R"({"rank":2,"effective":true,"fixed_point":["0","0"],"base_change":[["1","0"],["0","1"]],)"
            R"("weights":[[1,0],[0,1]],"beta":{"z1":"z1","z2":"z2 + z1^2"},)"
            R"("beta_inverse":{"z1":"z1","z2":"z2 - z1^2"},"degree":2,"verified":true})");
}

TEST(Report, PartialReportOmitsBeta) {
  LinearizationReport r;
  r.rank = 1;
  r.fixed_point = {Rational(-1, 2)};
  r.base_change = identity_matrix(1);
  r.weights = IntMatrix(1, 1, 0);
  EXPECT_EQ(emit_report(r), R"({"rank":1,"effective":false,"fixed_point":["-1/2"],)"
                            R"("base_change":[["1"]],"weights":[[0]],"degree":0,"verified":false})");
}

TEST(RoundTripProperty, ParsePrintScalar) {
  std::mt19937_64 rng(51);
  for (int trial = 0; trial < 300; ++trial) {
    auto p = random_scalar_poly(rng, 3);
    EXPECT_EQ(parse_scalar_poly(print(p), 3), p) << print(p);
  }
}

TEST(RoundTripProperty, ParsePrintAction) {
  std::mt19937_64 rng(52);
  for (int trial = 0; trial < 300; ++trial) {
    auto p = random_action_poly(rng, 2);
    EXPECT_EQ(parse_action_poly(print(p), 2), p) << print(p);
  }
}

TEST(RoundTripProperty, PrintParseIdempotentOnGeneratedDocuments) {
  for (std::uint64_t seed = 0; seed < 30; ++seed) {
    CorpusSpec spec;
    spec.rank = 1 + seed % 3;
    spec.seed = seed;
    auto gen = gen_action(spec);
    const auto text = print(gen.sigma);
    EXPECT_EQ(print(parse(text)), text);
    EXPECT_EQ(parse_action(text).map(), gen.sigma.map());
    EXPECT_EQ(print(parse_map(print(gen.alpha))), print(gen.alpha));
  }
}
