#include <gtest/gtest.h>

#include <random>

#include "support.hpp"
#include "tilelab/cost.hpp"
#include "tilelab/search.hpp"
#include "tilelab/verify.hpp"

namespace tilelab {
namespace {

using testing::random_arrangement;
using testing::random_seq;
using testing::sample_grid;

std::uint64_t verify_cost(const TileGrid& g, const MoveSeq& s) {
  CostLedger ledger;
  instrumented_verify(g, s, ledger);
  return ledger.decisions();
}

BigInt verify_ceiling(int n, std::size_t k) { return budget(BudgetKind::Verify, n, k).ceiling; }

TEST(CostProperty, PerMoveTalliesStayUnderCeilings) {
  std::mt19937_64 rng(41);
  for (int i = 0; i < 10000; ++i) {
    const TileGrid g = random_arrangement(2 + i % 4, rng);
    for (Move m : kAllMoves) {
      CostLedger ledger;
      MoveTally tally;
      const TileGrid next = instrumented_apply(g, m, ledger, &tally);
      EXPECT_EQ(next, apply_move_total(g, m));
      EXPECT_LE(tally.rho, kRhoCeiling);
      EXPECT_LE(tally.tau, kTauCeiling);
      EXPECT_LE(tally.sigma, kSigmaCeiling);
      EXPECT_LE(tally.phi, kPhiCeiling);
      EXPECT_EQ(tally.phi, ledger.decisions());
      if (!g.can_move(m)) EXPECT_LE(ledger.decisions(), 5u);
    }
  }
  EXPECT_EQ(kPhiCeiling, 27u);
  EXPECT_EQ(kSigmaCeiling, 22u);
}

TEST(Cost, IllegalMoveLeavesGridAndCostsLittle) {
  CostLedger ledger;
  EXPECT_EQ(instrumented_apply(goal(4), Move::Right, ledger), goal(4));
  EXPECT_GE(ledger.decisions(), 1u);
  EXPECT_LE(ledger.decisions(), 5u);
}

TEST(Cost, SampleVerification) {
  CostLedger ledger;
  EXPECT_TRUE(instrumented_verify(sample_grid(), MoveSeq::parse("RDDRD"), ledger));
  EXPECT_LE(BigInt(ledger.decisions()), verify_ceiling(4, 5));
  EXPECT_EQ(verify_ceiling(4, 5), 152);
  EXPECT_LE(BigInt(verify_cost(goal(3), MoveSeq{})), 10);
}

TEST(Cost, LedgerBreakdownSumsToTotal) {
  CostLedger ledger;
  instrumented_verify(sample_grid(), MoveSeq::parse("RDDRDUL"), ledger);
  std::uint64_t sum = 0;
  for (const auto& [name, count] : ledger.per_primitive()) sum += count;
  EXPECT_EQ(sum, ledger.decisions());
  EXPECT_EQ(ledger.per_primitive().size(), kPrimitiveCount);
  CostLedger twice = ledger;
  twice += ledger;
  EXPECT_EQ(twice.decisions(), 2 * ledger.decisions());
}

TEST(Cost, CompareStopsAtFirstMismatch) {
  CostLedger equal, differ;
  EXPECT_TRUE(instrumented_equal(goal(3), goal(3), equal));
  EXPECT_FALSE(instrumented_equal(TileGrid::from_raw(3, {2, 1, 3, 4, 5, 6, 7, 8, 0}), goal(3), differ));
  EXPECT_EQ(equal.decisions(), 10u);
  EXPECT_LT(differ.decisions(), equal.decisions());
}

TEST(CostProperty, VerifyWithinBudgetOnEveryTwoByTwoState) {
  const auto table = enumerate_reachable(2);
  for (const auto& level : table.levels())
    for (std::uint64_t key : level) {
      const TileGrid g = decode_state(2, key);
      const auto r = solve_optimal(g);
      EXPECT_LE(BigInt(verify_cost(g, r.seq)), verify_ceiling(2, r.seq.size()));
    }
  EXPECT_EQ(verify_ceiling(2, 6), 167);
}

TEST(CostProperty, VerifyWithinBudgetOnRandomPairs) {
  std::mt19937_64 rng(42);
  for (int i = 0; i < 10000; ++i) {
    const int n = 3 + i % 2;
    const TileGrid g = random_arrangement(n, rng);
    const MoveSeq s = random_seq(i % 40, rng);
    EXPECT_LE(BigInt(verify_cost(g, s)), verify_ceiling(n, s.size()));
  }
}

TEST(Budget, Formulas) {
  EXPECT_EQ(budget(BudgetKind::Verify, 4, 5).ceiling, 152);
  EXPECT_EQ(budget(BudgetKind::Search, 2, 1).ceiling, 51);
  EXPECT_EQ(budget(BudgetKind::Search, 3, 3).ceiling, 785);
  EXPECT_EQ(search_ceiling_summed(2, 0), 6);
  EXPECT_EQ(search_ceiling_summed(2, 1), 6 + 4 * (6 + 27));
}

std::uint64_t exhaust_cost(const TileGrid& g, int k_max) {
  CostLedger ledger;
  try {
    exhaust_sequences(g, k_max, &ledger);
  } catch (const NotFound&) {
  }
  return ledger.decisions();
}

// Worst case is a state the search cannot reach, so every candidate is tried.
std::vector<TileGrid> exhaust_cases(int n) {
  std::mt19937_64 rng(43);
  std::vector<TileGrid> out{goal(n)};
  for (int i = 0; i < 6; ++i) out.push_back(random_arrangement(n, rng));
  return out;
}

TEST(CostProperty, ExhaustWithinPrintedSearchBudget) {
  int runs = 0, over = 0;
  std::string first;
  for (int n = 2; n <= 3; ++n)
    for (int k_max = 0; k_max <= 6; ++k_max)
      for (const TileGrid& g : exhaust_cases(n)) {
        const BigInt cost = exhaust_cost(g, k_max);
        const BigInt ceiling = budget(BudgetKind::Search, n, k_max).ceiling;
        ++runs;
        if (cost > ceiling) {
          if (over++ == 0) first = "n=" + std::to_string(n) + " k_max=" + std::to_string(k_max) + ": " + cost.str() + " > " + ceiling.str();
        }
      }
  EXPECT_EQ(over, 0) << over << " of " << runs << " runs exceed 4^k(n^2+2)+27k; first " << first;
}

TEST(CostProperty, ExhaustWithinSummedCeiling) {
  for (int n = 2; n <= 3; ++n)
    for (int k_max = 0; k_max <= 6; ++k_max)
      for (const TileGrid& g : exhaust_cases(n)) {
        EXPECT_LE(BigInt(exhaust_cost(g, k_max)), search_ceiling_summed(n, k_max))
            << "n=" << n << " k_max=" << k_max;
      }
}

TEST(Length, Examples) {
  EXPECT_EQ(program_length("1!+456j"), 7u);
  EXPECT_EQ(program_length("y=3; for(i=1; i<k; i++){ y=y+i;}"), 28u);
  EXPECT_EQ(program_length(""), 0u);
  EXPECT_EQ(program_length("\xCE\xBB x"), 2u);
}

TEST(LengthProperty, WhitespaceInsensitive) {
  const std::vector<std::string> spaces{" ", "\t", "\n", "\r\n", "\xC2\xA0", "\xE3\x80\x80", "\xE2\x80\x83",
                                        "\xE2\x80\xA8"};
  const std::string base = "y=3;for(i=1;i<k;i++){y=y+i;}\xCE\xBB";
  std::mt19937_64 rng(44);
  for (int trial = 0; trial < 2000; ++trial) {
    std::string s;
    for (char c : base) {
      s += c;
      if ((static_cast<unsigned char>(c) & 0xC0) == 0xC0) continue;  // keep multi-byte code points whole
      if (rng() % 3 == 0) s += spaces[rng() % spaces.size()];
    }
    EXPECT_EQ(program_length(s), program_length(base));
  }
}

TEST(Witness, Examples) {
  EXPECT_TRUE(polytime_witness(152, 1, 4, 5));
  EXPECT_TRUE(polytime_witness(0, 1, 3, 0));
  EXPECT_TRUE(polytime_witness(0, 1000, 3, 7));
  EXPECT_THROW(polytime_witness(1, 0, 2, 0), DomainError);
}

TEST(Witness, ExactCeilingBoundary) {
  // length 3 gives base 10; n = 1, k = 0 gives exponent 2, so the ceiling is 100
  EXPECT_TRUE(polytime_witness(100, 3, 1, 0));
  EXPECT_FALSE(polytime_witness(101, 3, 1, 0));
  // n = 2, k = 1: exponent 32, base 2
  const BigInt ceiling = boost::multiprecision::pow(BigInt(2), 32);
  EXPECT_TRUE(polytime_witness(ceiling, 1, 2, 1));
  EXPECT_FALSE(polytime_witness(ceiling + 1, 1, 2, 1));
}

TEST(WitnessProperty, MonotoneInEveryArgument) {
  std::mt19937_64 rng(45);
  for (int i = 0; i < 2000; ++i) {
    const BigInt d = BigInt(rng() % 100000) * (rng() % 1000);
    const std::uint64_t len = 1 + rng() % 4;
    const int n = 1 + static_cast<int>(rng() % 2);
    const std::uint64_t k = rng() % 2;
    const bool w = polytime_witness(d, len, n, k);
    if (w) {
      EXPECT_TRUE(polytime_witness(d, len + 1, n, k));
      EXPECT_TRUE(polytime_witness(d, len, n + 1, k));
      EXPECT_TRUE(polytime_witness(d, len, n, k + 1));
      if (d > 0) EXPECT_TRUE(polytime_witness(d - 1, len, n, k));
    } else {
      EXPECT_FALSE(polytime_witness(d + 1, len, n, k));
    }
  }
}

}  // namespace
}  // namespace tilelab
