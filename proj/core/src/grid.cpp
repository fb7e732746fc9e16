#include "tilelab/grid.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>

namespace tilelab {

char move_letter(Move m) noexcept {
  switch (m) {
    case Move::Up: return 'U';
    case Move::Down: return 'D';
    case Move::Right: return 'R';
    case Move::Left: return 'L';
  }
  return '?';
}

Move move_from_letter(char c) {
  switch (std::toupper(static_cast<unsigned char>(c))) {
    case 'U': return Move::Up;
    case 'D': return Move::Down;
    case 'R': return Move::Right;
    case 'L': return Move::Left;
    default: break;
  }
  throw DomainError(std::string("unknown move letter '") + c + "'");
}

MoveSeq MoveSeq::parse(std::string_view letters) {
  MoveSeq seq;
  for (char c : letters) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    seq.push_back(move_from_letter(c));
  }
  return seq;
}

std::string MoveSeq::to_string() const {
  std::string out;
  out.reserve(moves_.size());
  for (Move m : moves_) out.push_back(move_letter(m));
  return out;
}

MoveSeq reverse_seq(const MoveSeq& seq) {
  std::vector<Move> out;
  out.reserve(seq.size());
  for (auto it = seq.moves().rbegin(); it != seq.moves().rend(); ++it) out.push_back(inverse_move(*it));
  return MoveSeq(std::move(out));
}

namespace {

void check_side(int n) {
  if (n < 2 || n > kMaxSide) {
    throw InvalidGrid(InvalidGrid::Reason::BadShape,
                      "side length must be in [2, " + std::to_string(kMaxSide) + "], got " + std::to_string(n));
  }
}

int validate_cells(int n, std::span<const std::uint8_t> cells) {
  const int area = n * n;
  if (static_cast<int>(cells.size()) != area) {
    throw InvalidGrid(InvalidGrid::Reason::BadShape, "expected " + std::to_string(area) + " entries, got " +
                                                         std::to_string(cells.size()));
  }
  std::vector<bool> seen(static_cast<std::size_t>(area), false);
  int blank = -1;
  for (int i = 0; i < area; ++i) {
    const int v = cells[static_cast<std::size_t>(i)];
    if (v == 0) {
      if (blank >= 0) throw InvalidGrid(InvalidGrid::Reason::MultipleBlanks, "more than one blank");
      blank = i;
      continue;
    }
    if (v >= area) {
      throw InvalidGrid(InvalidGrid::Reason::ValueOutOfRange,
                        "tile " + std::to_string(v) + " outside 1.." + std::to_string(area - 1));
    }
    if (seen[static_cast<std::size_t>(v)]) {
      throw InvalidGrid(InvalidGrid::Reason::DuplicateTile, "tile " + std::to_string(v) + " appears twice");
    }
    seen[static_cast<std::size_t>(v)] = true;
  }
  if (blank < 0) throw InvalidGrid(InvalidGrid::Reason::MissingBlank, "no blank cell");
  return blank;
}

// Target cell index of the blank after `m`, or -1 when off-grid.
int target_index(int n, int blank, Move m) noexcept {
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

}  // namespace

TileGrid TileGrid::from_entries(int n, std::span<const Cell> entries) {
  check_side(n);
  std::vector<std::uint8_t> cells;
  cells.reserve(entries.size());
  const int area = n * n;
  for (const Cell& e : entries) {
    if (!e) {
      cells.push_back(0);
    } else if (*e < 1 || *e >= area) {
      throw InvalidGrid(InvalidGrid::Reason::ValueOutOfRange,
                        "tile " + std::to_string(*e) + " outside 1.." + std::to_string(area - 1));
    } else {
      cells.push_back(static_cast<std::uint8_t>(*e));
    }
  }
  return from_raw(n, std::move(cells));
}

TileGrid TileGrid::from_raw(int n, std::vector<std::uint8_t> cells) {
  check_side(n);
  const int blank = validate_cells(n, cells);
  return TileGrid(n, std::move(cells), blank);
}

TileGrid TileGrid::goal(int n) {
  check_side(n);
  const int area = n * n;
  std::vector<std::uint8_t> cells(static_cast<std::size_t>(area));
  for (int i = 0; i + 1 < area; ++i) cells[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(i + 1);
  cells.back() = 0;
  return TileGrid(n, std::move(cells), area - 1);
}

Cell TileGrid::at(int row, int col) const {
  if (row < 1 || row > n_ || col < 1 || col > n_) throw DomainError("cell index out of range");
  const auto v = cells_[static_cast<std::size_t>((row - 1) * n_ + (col - 1))];
  return v == 0 ? Cell{} : Cell{v};
}

std::vector<Cell> TileGrid::entries() const {
  std::vector<Cell> out;
  out.reserve(cells_.size());
  for (auto v : cells_) out.push_back(v == 0 ? Cell{} : Cell{v});
  return out;
}

bool TileGrid::can_move(Move m) const noexcept { return target_index(n_, blank_index_, m) >= 0; }

std::optional<TileGrid> TileGrid::moved(Move m) const {
  const int target = target_index(n_, blank_index_, m);
  if (target < 0) return std::nullopt;
  TileGrid out = *this;
  std::swap(out.cells_[static_cast<std::size_t>(blank_index_)], out.cells_[static_cast<std::size_t>(target)]);
  out.blank_index_ = target;
  return out;
}

TileGrid apply_move(const TileGrid& grid, Move m) {
  auto next = grid.moved(m);
  if (!next) throw IllegalMove();
  return std::move(*next);
}

TileGrid apply_move_total(const TileGrid& grid, Move m) noexcept {
  auto next = grid.moved(m);
  return next ? std::move(*next) : grid;
}

TileGrid apply_seq(const TileGrid& grid, const MoveSeq& seq, ApplyMode mode) {
  TileGrid current = grid;
  for (std::size_t i = 0; i < seq.size(); ++i) {
    auto next = current.moved(seq[i]);
    if (next) {
      current = std::move(*next);
    } else if (mode == ApplyMode::Strict) {
      throw IllegalMove(i + 1);
    }
  }
  return current;
}

bool grids_equal(const TileGrid& a, const TileGrid& b) noexcept {
  if (a.n() != b.n()) return false;
  return std::ranges::equal(a.raw(), b.raw());
}

int blank_distance_to_corner(const TileGrid& grid) noexcept {
  const Position p = grid.blank();
  return (grid.n() - p.row) + (grid.n() - p.col);
}

TileGrid parse_grid_text(std::string_view text) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> current;
  std::string token;
  auto flush_token = [&] {
    if (!token.empty()) current.push_back(std::move(token));
    token.clear();
  };
  auto flush_row = [&] {
    flush_token();
    if (!current.empty()) rows.push_back(std::move(current));
    current.clear();
  };
  for (char c : text) {
    if (c == '\n' || c == '/') {
      flush_row();
    } else if (std::isspace(static_cast<unsigned char>(c)) || c == ',') {
      flush_token();
    } else {
      token.push_back(c);
    }
  }
  flush_row();

  const int n = static_cast<int>(rows.size());
  check_side(n);
  std::vector<Cell> entries;
  entries.reserve(static_cast<std::size_t>(n * n));
  for (const auto& row : rows) {
    if (static_cast<int>(row.size()) != n) {
      throw InvalidGrid(InvalidGrid::Reason::BadShape, "grid rows must all have " + std::to_string(n) + " tokens");
    }
    for (const auto& tok : row) {
      if (tok == "_") {
        entries.emplace_back();
        continue;
      }
      int value = 0;
      std::size_t used = 0;
      try {
        value = std::stoi(tok, &used);
      } catch (const std::exception&) {
        used = 0;
      }
      if (used != tok.size()) throw DomainError("bad grid token '" + tok + "'");
      entries.emplace_back(value);
    }
  }
  return TileGrid::from_entries(n, entries);
}

std::string format_grid_text(const TileGrid& grid) {
  std::ostringstream out;
  const int n = grid.n();
  for (int r = 1; r <= n; ++r) {
    for (int c = 1; c <= n; ++c) {
      if (c > 1) out << ' ';
      const Cell v = grid.at(r, c);
      if (v) {
        out << *v;
      } else {
        out << '_';
      }
    }
    out << '\n';
  }
  return out.str();
}

// --- TensorGrid -----------------------------------------------------------

namespace {

int ipow(int base, int exp) {
  int out = 1;
  for (int i = 0; i < exp; ++i) out *= base;
  return out;
}

void check_tensor_shape(int n, int order) {
  if (order != 2 && order != 3) throw DomainError("tensor order must be 2 or 3");
  if (n < 2) throw DomainError("tensor side length must be at least 2");
  if (ipow(n, order) > 65535) throw DomainError("tensor too large");
}

}  // namespace

TensorGrid TensorGrid::goal(int n, int order) {
  check_tensor_shape(n, order);
  const int size = ipow(n, order);
  std::vector<std::uint16_t> cells(static_cast<std::size_t>(size));
  for (int i = 0; i + 1 < size; ++i) cells[static_cast<std::size_t>(i)] = static_cast<std::uint16_t>(i + 1);
  cells.back() = 0;
  return TensorGrid(n, order, std::move(cells), size - 1);
}

TensorGrid TensorGrid::from_raw(int n, int order, std::vector<std::uint16_t> cells) {
  check_tensor_shape(n, order);
  const int size = ipow(n, order);
  if (static_cast<int>(cells.size()) != size) throw InvalidGrid(InvalidGrid::Reason::BadShape, "wrong cell count");
  std::vector<bool> seen(static_cast<std::size_t>(size), false);
  int blank = -1;
  for (int i = 0; i < size; ++i) {
    const int v = cells[static_cast<std::size_t>(i)];
    if (v == 0) {
      if (blank >= 0) throw InvalidGrid(InvalidGrid::Reason::MultipleBlanks, "more than one blank");
      blank = i;
    } else if (v >= size) {
      throw InvalidGrid(InvalidGrid::Reason::ValueOutOfRange, "tile out of range");
    } else if (seen[static_cast<std::size_t>(v)]) {
      throw InvalidGrid(InvalidGrid::Reason::DuplicateTile, "duplicate tile");
    } else {
      seen[static_cast<std::size_t>(v)] = true;
    }
  }
  if (blank < 0) throw InvalidGrid(InvalidGrid::Reason::MissingBlank, "no blank cell");
  return TensorGrid(n, order, std::move(cells), blank);
}

std::vector<int> TensorGrid::blank() const {
  std::vector<int> coords(static_cast<std::size_t>(order_));
  int rest = blank_index_;
  for (int axis = order_ - 1; axis >= 0; --axis) {
    coords[static_cast<std::size_t>(axis)] = rest % n_ + 1;
    rest /= n_;
  }
  return coords;
}

Cell TensorGrid::at(std::span<const int> coords) const {
  if (static_cast<int>(coords.size()) != order_) throw DomainError("coordinate count must equal tensor order");
  int index = 0;
  for (int c : coords) {
    if (c < 1 || c > n_) throw DomainError("tensor index out of range");
    index = index * n_ + (c - 1);
  }
  const auto v = cells_[static_cast<std::size_t>(index)];
  return v == 0 ? Cell{} : Cell{v};
}

TensorGrid tensor_apply(const TensorGrid& grid, int axis, int direction) {
  if (axis < 1 || axis > grid.order_) throw DomainError("axis out of range");
  if (direction != 1 && direction != -1) throw DomainError("direction must be +1 or -1");
  const int stride = ipow(grid.n_, grid.order_ - axis);
  const int coord = (grid.blank_index_ / stride) % grid.n_;
  const int next = coord + direction;
  if (next < 0 || next >= grid.n_) throw IllegalMove();
  TensorGrid out = grid;
  const int target = grid.blank_index_ + direction * stride;
  std::swap(out.cells_[static_cast<std::size_t>(grid.blank_index_)], out.cells_[static_cast<std::size_t>(target)]);
  out.blank_index_ = target;
  return out;
}

}  // namespace tilelab
