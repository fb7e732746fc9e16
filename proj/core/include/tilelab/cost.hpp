#pragma once

// Decision accounting for move application and solution checking.
//
// A "decision" is one case-arm evaluation. The instrumented interpreter below
// evaluates the same case statements the move definitions use:
//
//   phi    guard: blank test, then neighbour tests in label order up to k
//   sigma  which branch of the cell update applies
//   rho    which of the four index shifts the label selects
//   lambda which inverse shift matches rho's output
//   tau    whether the lambda cell is the blank
//   compare component checks of the final equality test plus its result arm
//
// Ledgers are plain values owned by one execution; nothing here is global.

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

#include "tilelab/grid.hpp"

namespace tilelab {

using BigInt = boost::multiprecision::cpp_int;

enum class Primitive : std::uint8_t { Rho, Tau, Lambda, Sigma, Phi, Compare };
inline constexpr std::size_t kPrimitiveCount = 6;

std::string_view primitive_name(Primitive p) noexcept;

class CostLedger {
 public:
  void add(Primitive p, std::uint64_t count = 1) noexcept {
    counts_[static_cast<std::size_t>(p)] += count;
    decisions_ += count;
  }
  std::uint64_t decisions() const noexcept { return decisions_; }
  std::uint64_t count(Primitive p) const noexcept { return counts_[static_cast<std::size_t>(p)]; }
  /// Keyed by primitive name; sums to decisions().
  std::map<std::string, std::uint64_t> per_primitive() const;

  CostLedger& operator+=(const CostLedger& other) noexcept;

 private:
  std::array<std::uint64_t, kPrimitiveCount> counts_{};
  std::uint64_t decisions_ = 0;
};

/// Per-call tallies, each inclusive of the sub-steps it invokes
/// (sigma includes rho and tau, phi includes sigma).
struct MoveTally {
  std::uint64_t rho = 0;
  std::uint64_t tau = 0;
  std::uint64_t sigma = 0;
  std::uint64_t phi = 0;
};

inline constexpr std::uint64_t kRhoCeiling = 4;
inline constexpr std::uint64_t kTauCeiling = 17;
inline constexpr std::uint64_t kSigmaCeiling = 1 + kRhoCeiling + kTauCeiling;
inline constexpr std::uint64_t kPhiCeiling = 5 + kSigmaCeiling;

/// Total-mode move with decisions charged to `ledger`. Throws std::logic_error
/// if a per-call tally ever exceeds its ceiling.
TileGrid instrumented_apply(const TileGrid& grid, Move m, CostLedger& ledger, MoveTally* tally = nullptr);

/// Component-wise equality with decisions charged under Compare
/// (at most n^2 component checks plus one result arm).
bool instrumented_equal(const TileGrid& a, const TileGrid& b, CostLedger& ledger);

/// Applies `seq` in total mode and compares against goal(n).
bool instrumented_verify(const TileGrid& grid, const MoveSeq& seq, CostLedger& ledger);

enum class BudgetKind { Verify, Search };

struct Budget {
  BudgetKind kind = BudgetKind::Verify;
  int n = 0;
  std::uint64_t k = 0;
  BigInt ceiling;
};

/// verify: n^2 + 27k + 1.  search: 4^k (n^2 + 2) + 27k, exactly as printed.
Budget budget(BudgetKind kind, int n, std::uint64_t k);

/// sum over j = 0..k of 4^j (n^2 + 2 + 27j): every candidate of length j costs
/// at most 27j for its moves, n^2 + 1 for the comparison and one arm for the
/// loop test. Reported next to the printed search budget.
BigInt search_ceiling_summed(int n, std::uint64_t k);

/// Number of non-whitespace code points in a UTF-8 string. Whitespace is the
/// Unicode White_Space set.
std::size_t program_length(std::string_view text);

/// decisions <= (length^2 + 1)^(n^2 + 27k + 1), in exact arithmetic.
bool polytime_witness(const BigInt& decisions, std::uint64_t program_length, int n, std::uint64_t k);

}  // namespace tilelab
