#include "tilelab/search.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <limits>
#include <string>
#include <thread>

namespace tilelab {

unsigned resolve_threads(const SearchLimits& limits) {
  if (limits.threads > 0) return limits.threads;
  if (const char* env = std::getenv("TILELAB_THREADS")) {
    try {
      const long v = std::stol(env);
      if (v > 0) return static_cast<unsigned>(std::min<long>(v, 256));
    } catch (const std::exception&) {
    }
  }
  return 1;
}

namespace {

class Deadline {
 public:
  explicit Deadline(const SearchLimits& limits) {
    if (limits.timeout) at_ = std::chrono::steady_clock::now() + *limits.timeout;
  }
  void check() const {
    if (at_ && std::chrono::steady_clock::now() > *at_) throw ResourceLimit("timeout exceeded");
  }

 private:
  std::optional<std::chrono::steady_clock::time_point> at_;
};

inline int nibble(std::uint64_t key, int i) noexcept { return static_cast<int>((key >> (4 * i)) & 0xF); }

int blank_of(std::uint64_t key, int area) noexcept {
  for (int i = 0; i < area; ++i) {
    if (nibble(key, i) == 0) return i;
  }
  return -1;
}

// Blank at `blank` swaps with `target`; the moving tile lands where the blank was.
inline std::uint64_t swap_blank(std::uint64_t key, int blank, int target) noexcept {
  const std::uint64_t tile = (key >> (4 * target)) & 0xF;
  key &= ~(std::uint64_t{0xF} << (4 * target));
  key |= tile << (4 * blank);
  return key;
}

inline int neighbour(int n, int blank, Move m) noexcept {
  const int row = blank / n;
  const int col = blank % n;
  switch (m) {
    case Move::Up: return row > 0 ? blank - n : -1;
    case Move::Down: return row + 1 < n ? blank + n : -1;
    case Move::Right: return col + 1 < n ? blank + 1 : -1;
    case Move::Left: return col > 0 ? blank - 1 : -1;
  }
  return -1;
}

void require_packable(int n) {
  if (n < 2 || n > 4) throw DomainError("state packing supports 2 <= n <= 4");
}

}  // namespace

std::uint64_t encode_state(const TileGrid& grid) {
  require_packable(grid.n());
  std::uint64_t key = 0;
  const auto cells = grid.raw();
  for (std::size_t i = 0; i < cells.size(); ++i) key |= static_cast<std::uint64_t>(cells[i]) << (4 * i);
  return key;
}

TileGrid decode_state(int n, std::uint64_t key) {
  require_packable(n);
  std::vector<std::uint8_t> cells(static_cast<std::size_t>(n * n));
  for (int i = 0; i < n * n; ++i) cells[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(nibble(key, i));
  return TileGrid::from_raw(n, std::move(cells));
}

std::optional<int> ReachabilityTable::depth_of_key(std::uint64_t key) const {
  auto it = depths_.find(key);
  if (it == depths_.end()) return std::nullopt;
  return it->second;
}

std::optional<int> ReachabilityTable::depth_of(const TileGrid& grid) const {
  if (grid.n() != n_) return std::nullopt;
  return depth_of_key(encode_state(grid));
}

std::vector<std::uint64_t> ReachabilityTable::depth_histogram() const {
  std::vector<std::uint64_t> out;
  out.reserve(levels_.size());
  for (const auto& level : levels_) out.push_back(level.size());
  return out;
}

ReachabilityTable enumerate_reachable(int n, std::optional<int> depth_limit, const SearchLimits& limits) {
  require_packable(n);
  if (n >= 4 && !depth_limit) throw DomainError("full enumeration is limited to n <= 3; pass a depth limit");
  if (depth_limit && *depth_limit < 0) throw DomainError("depth limit must be non-negative");
  if (depth_limit && *depth_limit > 255) throw DomainError("depth limit must be at most 255");

  const Deadline deadline(limits);
  const int area = n * n;
  const unsigned workers = resolve_threads(limits);

  ReachabilityTable table;
  table.n_ = n;
  const std::uint64_t start = encode_state(TileGrid::goal(n));
  table.depths_.emplace(start, 0);
  table.levels_.push_back({start});

  for (int depth = 1;; ++depth) {
    const auto& frontier = table.levels_.back();
    if (frontier.empty()) break;
    if (depth_limit && depth > *depth_limit) {
      table.truncated_ = true;
      break;
    }
    deadline.check();

    // Workers expand contiguous slices against the read-only visited map;
    // the merge walks slices in order, so the next level is schedule-independent.
    const std::size_t chunks = std::min<std::size_t>(workers, std::max<std::size_t>(1, frontier.size() / 4096));
    std::vector<std::vector<std::uint64_t>> produced(chunks);
    auto expand = [&](std::size_t chunk) {
      const std::size_t lo = frontier.size() * chunk / chunks;
      const std::size_t hi = frontier.size() * (chunk + 1) / chunks;
      auto& out = produced[chunk];
      for (std::size_t i = lo; i < hi; ++i) {
        const std::uint64_t key = frontier[i];
        const int blank = blank_of(key, area);
        for (Move m : kAllMoves) {
          const int target = neighbour(n, blank, m);
          if (target < 0) continue;
          const std::uint64_t next = swap_blank(key, blank, target);
          if (!table.depths_.contains(next)) out.push_back(next);
        }
      }
    };
    if (chunks == 1) {
      expand(0);
    } else {
      std::vector<std::thread> pool;
      pool.reserve(chunks);
      for (std::size_t c = 0; c < chunks; ++c) pool.emplace_back(expand, c);
      for (auto& t : pool) t.join();
    }

    std::vector<std::uint64_t> next_level;
    for (const auto& part : produced) {
      for (std::uint64_t key : part) {
        if (table.depths_.emplace(key, static_cast<std::uint8_t>(depth)).second) {
          next_level.push_back(key);
          if (table.depths_.size() > limits.max_states) {
            throw ResourceLimit("state count exceeds cap of " + std::to_string(limits.max_states));
          }
        }
      }
    }
    if (next_level.empty()) break;
    table.levels_.push_back(std::move(next_level));
  }
  return table;
}

bool is_solvable(const TileGrid& grid) noexcept {
  const auto cells = grid.raw();
  const int area = static_cast<int>(cells.size());
  auto value = [&](int i) { return cells[static_cast<std::size_t>(i)] == 0 ? area : cells[static_cast<std::size_t>(i)]; };
  int inversions = 0;
  for (int i = 0; i < area; ++i) {
    for (int j = i + 1; j < area; ++j) {
      if (value(i) > value(j)) ++inversions;
    }
  }
  return (inversions % 2) == (blank_distance_to_corner(grid) % 2);
}

int manhattan_heuristic(const TileGrid& grid) noexcept {
  const int n = grid.n();
  const auto cells = grid.raw();
  int total = 0;
  for (int i = 0; i < n * n; ++i) {
    const int v = cells[static_cast<std::size_t>(i)];
    if (v == 0) continue;
    const int goal = v - 1;
    total += std::abs(i / n - goal / n) + std::abs(i % n - goal % n);
  }
  return total;
}

namespace {

SearchResult solve_bfs(const TileGrid& grid, const SearchLimits& limits) {
  const Deadline deadline(limits);
  const int n = grid.n();
  const int area = n * n;
  const std::uint64_t start = encode_state(grid);
  const std::uint64_t target = encode_state(TileGrid::goal(n));

  SearchResult result;
  if (start == target) return result;

  struct Parent {
    std::uint64_t key;
    Move move;
  };
  std::unordered_map<std::uint64_t, Parent> parents;
  parents.emplace(start, Parent{start, Move::Up});
  std::deque<std::uint64_t> queue{start};

  while (!queue.empty()) {
    const std::uint64_t key = queue.front();
    queue.pop_front();
    ++result.expanded;
    if ((result.expanded & 0xFFFF) == 0) deadline.check();
    const int blank = blank_of(key, area);
    for (Move m : kAllMoves) {
      const int t = neighbour(n, blank, m);
      if (t < 0) continue;
      const std::uint64_t next = swap_blank(key, blank, t);
      if (!parents.emplace(next, Parent{key, m}).second) continue;
      if (next == target) {
        std::vector<Move> path;
        for (std::uint64_t cur = next; cur != start; cur = parents.at(cur).key) path.push_back(parents.at(cur).move);
        std::reverse(path.begin(), path.end());
        result.psi = static_cast<int>(path.size());
        result.seq = MoveSeq(std::move(path));
        return result;
      }
      if (parents.size() > limits.max_states) {
        throw ResourceLimit("state count exceeds cap of " + std::to_string(limits.max_states));
      }
      queue.push_back(next);
    }
  }
  throw Unsolvable();
}

class IdaStar {
 public:
  IdaStar(const TileGrid& grid, const SearchLimits& limits)
      : n_(grid.n()), cells_(grid.raw().begin(), grid.raw().end()), blank_(grid.blank_index()),
        limits_(limits), deadline_(limits) {}

  SearchResult run(int initial_h) {
    int bound = initial_h;
    h_ = initial_h;
    for (;;) {
      int next_bound = std::numeric_limits<int>::max();
      if (dfs(0, bound, std::nullopt, next_bound)) {
        SearchResult out;
        out.psi = static_cast<int>(path_.size());
        out.seq = MoveSeq(path_);
        out.expanded = expanded_;
        return out;
      }
      if (next_bound == std::numeric_limits<int>::max()) throw Unsolvable();
      bound = next_bound;
    }
  }

 private:
  int tile_distance(int tile, int index) const noexcept {
    const int goal = tile - 1;
    return std::abs(index / n_ - goal / n_) + std::abs(index % n_ - goal % n_);
  }

  bool dfs(int g, int bound, std::optional<Move> last, int& next_bound) {
    const int f = g + h_;
    if (f > bound) {
      next_bound = std::min(next_bound, f);
      return false;
    }
    if (h_ == 0) return true;
    if (++expanded_ > limits_.max_nodes) {
      throw ResourceLimit("node count exceeds cap of " + std::to_string(limits_.max_nodes));
    }
    if ((expanded_ & 0xFFFFF) == 0) deadline_.check();

    for (Move m : kAllMoves) {
      if (last && *last == inverse_move(m)) continue;
      const int target = neighbour(n_, blank_, m);
      if (target < 0) continue;
      const int tile = cells_[static_cast<std::size_t>(target)];
      const int delta = tile_distance(tile, blank_) - tile_distance(tile, target);
      std::swap(cells_[static_cast<std::size_t>(blank_)], cells_[static_cast<std::size_t>(target)]);
      const int old_blank = blank_;
      blank_ = target;
      h_ += delta;
      path_.push_back(m);
      if (dfs(g + 1, bound, m, next_bound)) return true;
      path_.pop_back();
      h_ -= delta;
      blank_ = old_blank;
      std::swap(cells_[static_cast<std::size_t>(blank_)], cells_[static_cast<std::size_t>(target)]);
    }
    return false;
  }

  int n_;
  std::vector<std::uint8_t> cells_;
  int blank_;
  int h_ = 0;
  std::vector<Move> path_;
  std::uint64_t expanded_ = 0;
  const SearchLimits& limits_;
  Deadline deadline_;
};

}  // namespace

SearchResult solve_optimal(const TileGrid& grid, SearchAlgorithm algo, const SearchLimits& limits) {
  if (!is_solvable(grid)) throw Unsolvable();
  if (algo == SearchAlgorithm::Auto) algo = grid.n() <= 3 ? SearchAlgorithm::Bfs : SearchAlgorithm::IdaStar;
  if (algo == SearchAlgorithm::Bfs) {
    if (grid.n() > 4) throw DomainError("BFS solving supports n <= 4");
    return solve_bfs(grid, limits);
  }
  return IdaStar(grid, limits).run(manhattan_heuristic(grid));
}

SearchResult exhaust_sequences(const TileGrid& grid, int k_max, CostLedger* ledger, const SearchLimits& limits) {
  if (k_max < 0) throw DomainError("k_max must be non-negative");
  if (k_max > 30) throw DomainError("k_max above 30 cannot be enumerated");
  const Deadline deadline(limits);
  const TileGrid target = TileGrid::goal(grid.n());
  SearchResult result;

  // Candidate check: one arm for the accept/continue test plus the comparison.
  auto reaches_goal = [&](const TileGrid& state) {
    if (!ledger) return grids_equal(state, target);
    ledger->add(Primitive::Compare);
    return instrumented_equal(state, target, *ledger);
  };

  ++result.expanded;
  if (reaches_goal(grid)) return result;

  const int n = grid.n();
  const std::vector<std::uint8_t> start_cells(grid.raw().begin(), grid.raw().end());
  const std::vector<std::uint8_t> goal_cells(target.raw().begin(), target.raw().end());
  std::vector<std::uint8_t> scratch(start_cells.size());
  std::vector<Move> candidate;
  for (int length = 1; length <= k_max; ++length) {
    const std::uint64_t total = std::uint64_t{1} << (2 * length);
    candidate.assign(static_cast<std::size_t>(length), Move::Up);
    for (std::uint64_t index = 0; index < total; ++index) {
      if (++result.expanded > limits.max_sequences) {
        throw ResourceLimit("sequence count exceeds cap of " + std::to_string(limits.max_sequences));
      }
      if ((index & 0xFFFF) == 0) deadline.check();
      // Most significant base-4 digit is the first move.
      for (int pos = 0; pos < length; ++pos) {
        const auto digit = (index >> (2 * (length - 1 - pos))) & 0x3;
        candidate[static_cast<std::size_t>(pos)] = static_cast<Move>(digit);
      }
      bool solved = false;
      if (ledger) {
        TileGrid state = grid;
        for (Move m : candidate) state = instrumented_apply(state, m, *ledger);
        solved = reaches_goal(state);
      } else {
        std::copy(start_cells.begin(), start_cells.end(), scratch.begin());
        int blank = grid.blank_index();
        for (Move m : candidate) {
          const int t = neighbour(n, blank, m);
          if (t < 0) continue;
          std::swap(scratch[static_cast<std::size_t>(blank)], scratch[static_cast<std::size_t>(t)]);
          blank = t;
        }
        solved = std::equal(scratch.begin(), scratch.end(), goal_cells.begin());
      }
      if (solved) {
        result.psi = length;
        result.seq = MoveSeq(candidate);
        return result;
      }
    }
  }
  throw NotFound("no sequence of length <= " + std::to_string(k_max) + " reaches the goal");
}

}  // namespace tilelab
