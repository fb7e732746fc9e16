#pragma once

#include <algorithm>
#include <numeric>
#include <random>
#include <vector>

#include "tilelab/grid.hpp"

namespace tilelab::testing {

// Uniform over all (n^2)! arrangements, solvable or not.
inline TileGrid random_arrangement(int n, std::mt19937_64& rng) {
  std::vector<std::uint8_t> cells(static_cast<std::size_t>(n * n));
  std::iota(cells.begin(), cells.end(), std::uint8_t{0});
  std::shuffle(cells.begin(), cells.end(), rng);
  return TileGrid::from_raw(n, std::move(cells));
}

inline MoveSeq random_seq(std::size_t length, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> pick(0, 3);
  MoveSeq seq;
  for (std::size_t i = 0; i < length; ++i) seq.push_back(kAllMoves[pick(rng)]);
  return seq;
}

// Legal random walk; the returned sequence is what was applied.
inline std::pair<TileGrid, MoveSeq> random_walk(const TileGrid& start, std::size_t steps, std::mt19937_64& rng) {
  std::uniform_int_distribution<int> pick(0, 3);
  TileGrid g = start;
  MoveSeq seq;
  while (seq.size() < steps) {
    const Move m = kAllMoves[pick(rng)];
    if (auto next = g.moved(m)) {
      g = *next;
      seq.push_back(m);
    }
  }
  return {g, seq};
}

inline TileGrid sample_grid() {
  return parse_grid_text("1 _ 2 4\n5 6 3 8\n9 10 7 11\n13 14 15 12\n");
}

}  // namespace tilelab::testing
