#include <gtest/gtest.h>

#include <cmath>
#include <random>

#include <boost/multiprecision/cpp_dec_float.hpp>

#include "support.hpp"
#include "tilelab/verify.hpp"

namespace tilelab {
namespace {

using testing::random_arrangement;
using testing::random_seq;
using testing::sample_grid;
using Dec = boost::multiprecision::cpp_dec_float_50;

// Sum of logarithms rather than the log of the product.
Dec log4_factorial_by_sum(int n) {
  Dec s = 0;
  for (int i = 2; i <= n * n; ++i) s += boost::multiprecision::log(Dec(i));
  return s / boost::multiprecision::log(Dec(4));
}

TEST(Verify, SampleSequences) {
  EXPECT_TRUE(verify_solution(sample_grid(), MoveSeq::parse("RDDRD")));
  EXPECT_TRUE(verify_solution(goal(4), MoveSeq{}));
  EXPECT_FALSE(verify_solution(sample_grid(), MoveSeq::parse("RDDR")));
  EXPECT_EQ(apply_seq(sample_grid(), MoveSeq::parse("RDDR")).blank(), (Position{3, 4}));
}

TEST(Verify, IllegalStepsAreSkippedNotFatal) {
  // off-board U at the top row is a no-op in total mode
  EXPECT_TRUE(verify_solution(sample_grid(), MoveSeq::parse("URDDRD")));
  EXPECT_FALSE(verify_solution(goal(3), MoveSeq::parse("U")));
}

TEST(VerifyProperty, MatchesDefinition) {
  std::mt19937_64 rng(31);
  int hits = 0;
  for (int i = 0; i < 20000; ++i) {
    const int n = 2 + i % 3;
    const TileGrid g = (i % 5 == 0) ? testing::random_walk(goal(n), 1 + i % 7, rng).first : random_arrangement(n, rng);
    const MoveSeq s = random_seq(i % 9, rng);
    const bool expected = grids_equal(apply_seq(g, s, ApplyMode::Total), goal(n));
    EXPECT_EQ(verify_solution(g, s), expected);
    hits += expected;
  }
  EXPECT_GT(hits, 0);
}

TEST(Bounds, SmallValues) {
  EXPECT_EQ(bound_thm4(3), 8);
  EXPECT_EQ(bound_cor1(3), 16);
  EXPECT_EQ(bound_thm4(4), 32);
  EXPECT_EQ(bound_cor1(4), 40);
  EXPECT_EQ(count_lemma1(2), 24);
  EXPECT_EQ(count_lemma1(3), 362880);
  EXPECT_EQ(count_lemma1(4), BigInt("20922789888000"));
  EXPECT_NEAR(bound_thm2(2), std::log(24.0) / std::log(4.0), 1e-12);
}

TEST(Bounds, LogFactorialAgainstIndependentRecomputation) {
  for (int n = 2; n <= 12; ++n) {
    const double expected = log4_factorial_by_sum(n).convert_to<double>();
    EXPECT_NEAR(bound_thm2(n), expected, 1e-9 * expected) << n;
    const double via_gamma = std::lgamma(n * n + 1.0) / std::log(4.0);
    EXPECT_NEAR(bound_thm2(n), via_gamma, 1e-9 * via_gamma) << n;
    EXPECT_EQ(bound_thm2_string(n, 20).substr(0, 12), log4_factorial_by_sum(n).str(20).substr(0, 12)) << n;
  }
  EXPECT_EQ(bound_thm2_string(3), "9.23456650991479559056362226126");
}

TEST(Bounds, ExponentFormulaAgainstIndependentRecomputation) {
  for (int n = 2; n <= 12; ++n) {
    const Dec half = (log4_factorial_by_sum(n) - 1) / 2;
    const auto f = static_cast<unsigned>(boost::multiprecision::floor(half).convert_to<long long>());
    BigInt expected = 4;
    for (unsigned i = 0; i < f; ++i) expected *= 12;
    expected += 4;
    EXPECT_EQ(bound_thm3(n), expected) << n;
  }
  // f = floor((9.2346 - 1) / 2) = 4
  EXPECT_EQ(bound_thm3(3), BigInt(4 * 20736 + 4));
}

TEST(Bounds, Domains) {
  EXPECT_THROW(bound_thm4(2), DomainError);
  EXPECT_THROW(bound_cor1(2), DomainError);
  EXPECT_THROW(bound_thm2(1), DomainError);
  EXPECT_THROW(count_lemma1(0), DomainError);
  EXPECT_THROW(claim_report(4), DomainError);
  EXPECT_NO_THROW(bound_thm2(64));
}

TEST(Bounds, PureOnRepeatedCalls) {
  EXPECT_EQ(bound_thm2_string(5), bound_thm2_string(5));
  EXPECT_EQ(bound_thm3(7), bound_thm3(7));
}

TEST(ClaimReport, TwoByTwo) {
  const BoundReport r = claim_report(2);
  EXPECT_EQ(r.ground_truth_count, 12u);
  EXPECT_EQ(r.ground_truth_diameter, 6);
  EXPECT_NEAR(r.thm2_bound, 2.2925, 1e-4);
  EXPECT_EQ(r.thm2, Verdict::Fails);
  EXPECT_EQ(r.thm3_bound, BigInt(8));
  EXPECT_EQ(r.thm3, Verdict::Fails);
  EXPECT_EQ(r.thm4, Verdict::Untested);
  EXPECT_EQ(r.cor1, Verdict::Untested);
  EXPECT_EQ(r.lemma1_enumerated, 24u);
  EXPECT_EQ(r.lemma1, Verdict::Holds);
}

TEST(ClaimReport, ThreeByThree) {
  const BoundReport r = claim_report(3);
  EXPECT_EQ(r.ground_truth_count, 181440u);
  EXPECT_EQ(r.ground_truth_diameter, 31);
  EXPECT_EQ(r.thm2, Verdict::Fails);
  EXPECT_EQ(r.thm3, Verdict::Fails);
  EXPECT_EQ(r.thm4, Verdict::Fails);
  EXPECT_EQ(r.cor1, Verdict::Fails);
  EXPECT_EQ(r.lemma1, Verdict::Holds);
  EXPECT_EQ(r.lemma1_enumerated, 362880u);
  EXPECT_EQ(r.thm4_bound, 8);
  EXPECT_EQ(r.cor1_bound, 16);
}

}  // namespace
}  // namespace tilelab
