#pragma once

#include <chrono>
#include <cstdint>
#include <optional>
#include <unordered_map>
#include <vector>

#include "tilelab/cost.hpp"
#include "tilelab/grid.hpp"

namespace tilelab {

/// Caps shared by the search operations. Exceeding one raises ResourceLimit.
struct SearchLimits {
  std::uint64_t max_states = 20'000'000;
  std::uint64_t max_nodes = 2'000'000'000;
  std::uint64_t max_sequences = 100'000'000;
  std::optional<std::chrono::steady_clock::duration> timeout;
  /// 0 = take TILELAB_THREADS from the environment, else 1.
  unsigned threads = 0;
};

/// Worker count from SearchLimits::threads or the TILELAB_THREADS variable.
unsigned resolve_threads(const SearchLimits& limits);

/// Packs a grid with n <= 4 into 4-bit cells, cell 0 in the low nibble.
std::uint64_t encode_state(const TileGrid& grid);
TileGrid decode_state(int n, std::uint64_t key);

/// Breadth-first closure of goal(n) under legal moves.
class ReachabilityTable {
 public:
  int n() const noexcept { return n_; }
  std::uint64_t count() const noexcept { return depths_.size(); }
  int diameter() const noexcept { return static_cast<int>(levels_.size()) - 1; }
  /// Exact distance to goal, or nullopt when unreachable (or beyond the limit).
  std::optional<int> depth_of(const TileGrid& grid) const;
  std::optional<int> depth_of_key(std::uint64_t key) const;
  /// States per depth, index = depth.
  std::vector<std::uint64_t> depth_histogram() const;
  /// Encoded states grouped by depth in deterministic BFS order.
  const std::vector<std::vector<std::uint64_t>>& levels() const noexcept { return levels_; }
  /// True when a depth limit cut the search short.
  bool truncated() const noexcept { return truncated_; }

 private:
  friend ReachabilityTable enumerate_reachable(int, std::optional<int>, const SearchLimits&);

  int n_ = 0;
  bool truncated_ = false;
  std::unordered_map<std::uint64_t, std::uint8_t> depths_;
  std::vector<std::vector<std::uint64_t>> levels_;
};

/// BFS from the goal. Full enumeration needs n <= 3; n = 4 requires a depth
/// limit. Deterministic regardless of the worker count.
ReachabilityTable enumerate_reachable(int n, std::optional<int> depth_limit = std::nullopt,
                                      const SearchLimits& limits = {});

struct SearchResult {
  int psi = 0;
  MoveSeq seq;
  std::uint64_t expanded = 0;
};

enum class SearchAlgorithm { Auto, Bfs, IdaStar };

/// Optimal solution. Auto picks BFS for n <= 3 and IDA* with the Manhattan
/// heuristic otherwise. Throws Unsolvable or ResourceLimit.
SearchResult solve_optimal(const TileGrid& grid, SearchAlgorithm algo = SearchAlgorithm::Auto,
                           const SearchLimits& limits = {});

/// Parity test: the permutation of all n^2 cells (blank counted as n^2) has
/// the parity of the blank's Manhattan distance from (n, n).
bool is_solvable(const TileGrid& grid) noexcept;

/// Sum of tile Manhattan distances to their goal cells.
int manhattan_heuristic(const TileGrid& grid) noexcept;

/// Tries every move sequence of length 0, 1, ..., k_max in that order
/// (lexicographic U < D < R < L within a length), applying each candidate from
/// scratch in total mode. Returns the first that reaches the goal; `expanded`
/// counts the candidates tried. Decisions are charged to `ledger` when given.
/// Throws NotFound.
SearchResult exhaust_sequences(const TileGrid& grid, int k_max, CostLedger* ledger = nullptr,
                               const SearchLimits& limits = {});

}  // namespace tilelab
