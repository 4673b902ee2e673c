#pragma once

// Shared diagram corpus and a random generator of invariance-preserving
// isotopy moves (R2, R3, cup slides, base moves, flips, zigzags).

#include <algorithm>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "hkr/kirby.hpp"

namespace kirby_corpus {

using namespace hkr;

inline std::vector<std::string> corpus_texts() {
  return {
      "cup 0\ncap 0\n",
      "cup 0\ncup 1\nx+ 0\ncap 1\ncap 0\n",
      "cup 0\ncup 1\nx- 0\ncap 1\ncap 0\n",
      "cup 0\ncup 1\nx+ 0\nx+ 2\ncap 1\ncap 0\n",
      "cup 0\ncup 1\nx- 0\nx- 2\ncap 1\ncap 0\n",
      "cup 0\ncup 1\nx+ 0\nx+ 0\nx+ 0\ncap 1\ncap 0\n",
      "cup 0\ncup 1\ncup 2\nx+ 0\nx- 1\nx+ 0\nx- 1\ncap 2\ncap 1\ncap 0\n",
      "cup 0\ncup 1\ncup 2\nx+ 0\nx+ 1\nx+ 0\ncap 2\ncap 1\ncap 0\n",
      "cup 0\ncup 2\ncup 4\nx+ 1\nx+ 1\nx- 3\nx- 3\ncap 0\ncap 0\ncap 0\n",
      "cup 0\ncup 2\ndot 1 2 1\ncap 2\ncap 0\n",
      "cup 0\ncup 1\nx+ 0\ndot 0 1 1\ncap 1\ncap 0\n",
      "cup 0\ncap 0\ndot 0 -1 1\ncup 0\ncup 1\nx- 0\ncap 1\ncap 0\n",
  };
}

// A random move that may still fail its precondition when applied.
inline std::optional<Move> random_isotopy_move(std::mt19937& rng, const Diagram& E) {
  TraceResult T = trace(E);
  int nrows = static_cast<int>(E.rows.size());
  Move m{MoveKind::R2Insert};
  switch (rng() % 6) {
    case 0: {
      int r = int(rng() % (nrows + 1));
      if (T.widths[r] < 2) return std::nullopt;
      m = {MoveKind::R2Insert, r, int(rng() % (T.widths[r] - 1)), rng() % 2 ? 1 : -1};
      break;
    }
    case 1: m = {MoveKind::R3, int(rng() % std::max(1, nrows - 2))}; break;
    case 2: m = {MoveKind::CupSlide, int(rng() % std::max(1, nrows - 1))}; break;
    case 3: {
      if (T.n_closed == 0) return std::nullopt;
      int r = int(rng() % (nrows + 1));
      if (T.widths[r] == 0) return std::nullopt;
      int pos = int(rng() % T.widths[r]);
      int comp = T.comp_at[r][pos];
      if (comp >= T.n_closed) return std::nullopt;
      m = {MoveKind::MoveBase, r, pos, 1, T.components[comp].number};
      break;
    }
    case 4: {
      if (T.n_closed == 0) return std::nullopt;
      m = {MoveKind::Flip, 0, 0, 1, 1 + int(rng() % T.n_closed)};
      break;
    }
    case 5: m = {MoveKind::ZigzagInsert, int(rng() % (nrows + 1)), 0, rng() % 2 ? 1 : -1}; break;
  }
  return m;
}

}  // namespace kirby_corpus
