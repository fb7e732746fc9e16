#pragma once

// Solution checking and the published bound formulas, evaluated as claims
// against breadth-first ground truth.

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>

#include "tilelab/cost.hpp"
#include "tilelab/grid.hpp"
#include "tilelab/search.hpp"

namespace tilelab {

/// Applies `seq` in total mode, then compares all n^2 components with goal(n).
bool verify_solution(const TileGrid& grid, const MoveSeq& seq);
/// Same, charging decisions to `ledger`.
bool verify_solution(const TileGrid& grid, const MoveSeq& seq, CostLedger& ledger);

/// log4((n^2)!) from the exact factorial, evaluated at 100 decimal digits.
double bound_thm2(int n);
/// log4((n^2)!) as a decimal string with `digits` significant digits.
std::string bound_thm2_string(int n, int digits = 30);
/// 4 * 3^f * 4^f + 4 with f = floor((log4((n^2)!) - 1) / 2).
BigInt bound_thm3(int n);
/// 4 (n^2 - n - 4); requires n >= 3.
std::int64_t bound_thm4(int n);
/// 4 (n^2 - n - 2); requires n >= 3.
std::int64_t bound_cor1(int n);
/// (n^2)!
BigInt count_lemma1(int n);

enum class Verdict { Holds, Fails, Untested };
std::string_view verdict_name(Verdict v) noexcept;

struct BoundReport {
  int n = 0;
  double thm2_bound = 0;
  std::string thm2_bound_exact;
  BigInt thm3_bound;
  std::optional<std::int64_t> thm4_bound;
  std::optional<std::int64_t> cor1_bound;
  BigInt lemma1_count;
  /// Arrangements of n^2 distinct symbols counted by enumeration.
  std::uint64_t lemma1_enumerated = 0;
  std::uint64_t ground_truth_count = 0;
  int ground_truth_diameter = 0;

  // diameter <= thm2, count <= thm3, count <= thm4, diameter <= cor1,
  // enumerated arrangements == (n^2)!
  Verdict thm2 = Verdict::Untested;
  Verdict thm3 = Verdict::Untested;
  Verdict thm4 = Verdict::Untested;
  Verdict cor1 = Verdict::Untested;
  Verdict lemma1 = Verdict::Untested;
};

/// Runs BFS for n in {2, 3} and records each verdict without filtering.
BoundReport claim_report(int n, const SearchLimits& limits = {});

}  // namespace tilelab
