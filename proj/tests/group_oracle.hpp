#pragma once

// Oracle groups built from their own multiplication, independent of the
// library's Cayley tables, plus random presentations and AC moves.

#include <algorithm>
#include <array>
#include <functional>
#include <random>

#include "hkr/grpalg.hpp"

namespace group_oracle {

using hkr::AcKind;
using hkr::AcMove;
using hkr::Presentation;
using hkr::Word;

struct OracleGroup {
  std::string name;
  int order;
  std::function<int(int, int)> mul;
  std::function<int(int)> inv;
};

inline OracleGroup oracle_cyclic(int n) {
  return {"Z" + std::to_string(n), n, [n](int a, int b) { return (a + b) % n; }, [n](int a) { return (n - a) % n; }};
}

inline OracleGroup oracle_s3() {
  static std::vector<std::array<int, 3>> perms;
  if (perms.empty()) {
    std::array<int, 3> a{0, 1, 2};
    do perms.push_back(a);
    while (std::next_permutation(a.begin(), a.end()));
  }
  auto index = [](const std::array<int, 3>& x) {
    return int(std::find(perms.begin(), perms.end(), x) - perms.begin());
  };
  auto mul = [index](int a, int b) {
    std::array<int, 3> r{};
    for (int i = 0; i < 3; ++i) r[i] = perms[a][perms[b][i]];
    return index(r);
  };
  auto inv = [index](int a) {
    std::array<int, 3> r{};
    for (int i = 0; i < 3; ++i) r[perms[a][i]] = i;
    return index(r);
  };
  return {"S3", 6, mul, inv};
}

inline uint64_t oracle_hom_count(const Presentation& P, const OracleGroup& G) {
  int n = P.n_generators;
  std::vector<int> x(n, 0);
  uint64_t count = 0;
  int identity = 0;
  for (int a = 0; a < G.order; ++a)
    if (G.mul(a, a) == a) identity = a;
  while (true) {
    bool ok = true;
    for (const auto& r : P.relators) {
      int acc = identity;
      for (int l : r) acc = G.mul(acc, l > 0 ? x[l - 1] : G.inv(x[-l - 1]));
      if (acc != identity) {
        ok = false;
        break;
      }
    }
    count += ok;
    int k = 0;
    while (k < n && ++x[k] == G.order) x[k++] = 0;
    if (k == n) break;
  }
  return count;
}

inline Word random_word(std::mt19937& rng, int n_gen, int max_len) {
  Word w;
  if (n_gen == 0) return w;
  int len = int(rng() % (max_len + 1));
  for (int i = 0; i < len; ++i) {
    int g = 1 + int(rng() % n_gen);
    w.push_back(rng() % 2 ? g : -g);
  }
  return w;
}

inline Presentation random_presentation(std::mt19937& rng, int max_gen) {
  Presentation P;
  P.n_generators = 1 + int(rng() % max_gen);
  int nrel = int(rng() % 3);
  for (int i = 0; i < nrel; ++i) P.relators.push_back(random_word(rng, P.n_generators, 5));
  return P;
}

inline AcMove random_move(std::mt19937& rng, const Presentation& P) {
  int nr = int(P.relators.size());
  while (true) {
    int kind = int(rng() % 6);
    AcMove m{AcKind::Swap};
    if (kind == 4 && P.n_generators < 3) {
      m.kind = AcKind::AddGenerator;
      m.word = random_word(rng, P.n_generators, 3);
      return m;
    }
    if (kind == 5) {
      // Find a removable relator y R.
      for (int i = 1; i <= nr; ++i) {
        const Word& r = P.relators[i - 1];
        if (r.empty() || r[0] <= 0) continue;
        bool free = true;
        for (int k = 0; k < nr; ++k)
          for (size_t t = 0; t < P.relators[k].size(); ++t)
            if (!(k == i - 1 && t == 0) && std::abs(P.relators[k][t]) == r[0]) free = false;
        if (free) {
          m.kind = AcKind::RemoveGenerator;
          m.i = i;
          return m;
        }
      }
      continue;
    }
    if (nr == 0) continue;
    m.i = 1 + int(rng() % nr);
    if (kind == 0 && nr >= 2) {
      m.kind = AcKind::Swap;
      do m.j = 1 + int(rng() % nr);
      while (m.j == m.i);
      return m;
    }
    if (kind == 1) {
      m.kind = AcKind::Conjugate;
      m.word = random_word(rng, P.n_generators, 3);
      return m;
    }
    if (kind == 2) {
      m.kind = AcKind::Invert;
      return m;
    }
    if (kind == 3 && nr >= 2) {
      m.kind = AcKind::Multiply;
      do m.j = 1 + int(rng() % nr);
      while (m.j == m.i);
      return m;
    }
  }
}

}  // namespace group_oracle
