#pragma once

// Sliding-tile states and the four blank moves.
//
// Positions are 1-based (row, col) at the API surface. Storage is row-major
// with 0 standing for the blank.

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "tilelab/errors.hpp"

namespace tilelab {

/// Direction the blank travels. Up/Down change the row, Right/Left the column.
enum class Move : std::uint8_t { Up = 0, Down = 1, Right = 2, Left = 3 };

inline constexpr std::array<Move, 4> kAllMoves{Move::Up, Move::Down, Move::Right, Move::Left};

constexpr Move inverse_move(Move m) noexcept {
  switch (m) {
    case Move::Up: return Move::Down;
    case Move::Down: return Move::Up;
    case Move::Right: return Move::Left;
    case Move::Left: return Move::Right;
  }
  return m;
}

/// 1..4 label used by the move case statements (Up=1 ... Left=4).
constexpr int move_label(Move m) noexcept { return static_cast<int>(m) + 1; }

char move_letter(Move m) noexcept;
/// Accepts U, D, R, L (case-insensitive).
Move move_from_letter(char c);

class MoveSeq {
 public:
  MoveSeq() = default;
  MoveSeq(std::initializer_list<Move> moves) : moves_(moves) {}
  explicit MoveSeq(std::vector<Move> moves) : moves_(std::move(moves)) {}

  /// "RDDRD" style. Whitespace is ignored; anything else throws DomainError.
  static MoveSeq parse(std::string_view letters);

  std::size_t size() const noexcept { return moves_.size(); }
  bool empty() const noexcept { return moves_.empty(); }
  Move operator[](std::size_t i) const { return moves_[i]; }
  void push_back(Move m) { moves_.push_back(m); }
  void pop_back() { moves_.pop_back(); }
  auto begin() const noexcept { return moves_.begin(); }
  auto end() const noexcept { return moves_.end(); }
  std::span<const Move> moves() const noexcept { return moves_; }

  std::string to_string() const;

  bool operator==(const MoveSeq&) const = default;

 private:
  std::vector<Move> moves_;
};

/// Reverse the order and invert every move; undoes `seq` when it was legal.
MoveSeq reverse_seq(const MoveSeq& seq);

struct Position {
  int row = 0;
  int col = 0;
  bool operator==(const Position&) const = default;
};

/// Tile value or blank (nullopt).
using Cell = std::optional<int>;

inline constexpr int kMaxSide = 16;

class TileGrid {
 public:
  /// Validates side length, tile range and blank count.
  static TileGrid from_entries(int n, std::span<const Cell> entries);
  /// Row-major tiles with blank at (n, n).
  static TileGrid goal(int n);
  /// Raw row-major cells, 0 = blank. Same validation as from_entries.
  static TileGrid from_raw(int n, std::vector<std::uint8_t> cells);

  int n() const noexcept { return n_; }
  Position blank() const noexcept { return {blank_index_ / n_ + 1, blank_index_ % n_ + 1}; }
  int blank_index() const noexcept { return blank_index_; }
  Cell at(int row, int col) const;
  std::span<const std::uint8_t> raw() const noexcept { return cells_; }
  std::vector<Cell> entries() const;

  /// Copy with the blank moved, or nullopt when the target is off-grid.
  std::optional<TileGrid> moved(Move m) const;
  bool can_move(Move m) const noexcept;

  bool operator==(const TileGrid&) const = default;

 private:
  TileGrid(int n, std::vector<std::uint8_t> cells, int blank_index)
      : n_(n), cells_(std::move(cells)), blank_index_(blank_index) {}

  int n_ = 0;
  std::vector<std::uint8_t> cells_;
  int blank_index_ = 0;
};

inline TileGrid new_grid(int n, std::span<const Cell> entries) { return TileGrid::from_entries(n, entries); }
inline TileGrid goal(int n) { return TileGrid::goal(n); }

/// Strict: throws IllegalMove when the blank would leave the board.
TileGrid apply_move(const TileGrid& grid, Move m);
/// Total: off-board moves leave the grid unchanged.
TileGrid apply_move_total(const TileGrid& grid, Move m) noexcept;

enum class ApplyMode { Strict, Total };

/// Left-to-right application. Strict mode throws IllegalMove(step) with the
/// 1-based index of the first offending move.
TileGrid apply_seq(const TileGrid& grid, const MoveSeq& seq, ApplyMode mode = ApplyMode::Strict);

/// Same side length and every component equal.
bool grids_equal(const TileGrid& a, const TileGrid& b) noexcept;

/// Manhattan distance of the blank to its goal cell (n, n).
int blank_distance_to_corner(const TileGrid& grid) noexcept;

// Text format: n lines of n whitespace-separated tokens, `_` for the blank.
// Lines may also be separated by '/' for inline use on a command line.
TileGrid parse_grid_text(std::string_view text);
std::string format_grid_text(const TileGrid& grid);

/// Order-d generalization (d = 2 or 3) with 2d moves: one per axis and sign.
class TensorGrid {
 public:
  static TensorGrid goal(int n, int order);
  static TensorGrid from_raw(int n, int order, std::vector<std::uint16_t> cells);

  int n() const noexcept { return n_; }
  int order() const noexcept { return order_; }
  /// 1-based coordinates of the blank, one per axis.
  std::vector<int> blank() const;
  std::span<const std::uint16_t> raw() const noexcept { return cells_; }
  /// `coords` are 1-based; returns nullopt for the blank.
  Cell at(std::span<const int> coords) const;

  bool operator==(const TensorGrid&) const = default;

 private:
  TensorGrid(int n, int order, std::vector<std::uint16_t> cells, int blank_index)
      : n_(n), order_(order), cells_(std::move(cells)), blank_index_(blank_index) {}

  friend TensorGrid tensor_apply(const TensorGrid&, int, int);

  int n_ = 0;
  int order_ = 0;
  std::vector<std::uint16_t> cells_;
  int blank_index_ = 0;
};

inline TensorGrid tensor_goal(int n, int order) { return TensorGrid::goal(n, order); }

/// Moves the blank by `direction` (+1 or -1) along `axis` (1-based; axis 1 is
/// the slowest-varying index). Throws IllegalMove off the boundary.
TensorGrid tensor_apply(const TensorGrid& grid, int axis, int direction);

}  // namespace tilelab
