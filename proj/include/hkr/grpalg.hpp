#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hkr/hopf.hpp"

namespace hkr {

struct FiniteGroup {
  std::string name;
  int order = 0;
  int identity = 0;
  std::vector<int> table;  // table[a*order+b] = a*b
  std::vector<int> inv;

  int mul(int a, int b) const { return table[size_t(a) * order + b]; }
};

// Validates closure, associativity, identity and inverses.
FiniteGroup make_group(std::string name, int order, std::vector<int> table);
FiniteGroup parse_cayley(const std::string& text, const std::string& name = "G");
FiniteGroup load_cayley(const std::string& path);
std::string cayley_csv(const FiniteGroup& G);
FiniteGroup cyclic_group(int n);
FiniteGroup symmetric_group(int n);
// Named groups: Z2, Z3, Z6, S3, ...
FiniteGroup named_group(const std::string& name);

// Words are lists of signed 1-based generator indices; -k is x_k^{-1}.
using Word = std::vector<int>;

struct Presentation {
  int n_generators = 0;
  std::vector<Word> relators;
  bool operator==(const Presentation& o) const = default;
};

Presentation parse_presentation(const std::string& text);
Presentation load_presentation(const std::string& path);
std::string format_presentation(const Presentation& P);
// Human-readable form such as <x1,x2 | x1 x2 x1^-1>.
std::string pretty_presentation(const Presentation& P);

HopfPtr group_algebra(const FiniteGroup& G, int p = 5);

int eval_word(const FiniteGroup& G, const Word& w, const std::vector<int>& assignment);
// Number of tuples in G^n satisfying every relator. Rejects |G|^n > 1e8.
uint64_t hom_count(const Presentation& P, const FiniteGroup& G, int jobs = 1);

enum class AcKind { Swap, Conjugate, Invert, Multiply, AddGenerator, RemoveGenerator };

struct AcMove {
  AcKind kind;
  int i = 0;  // 1-based relator index
  int j = 0;  // second relator index for Swap / Multiply
  Word word;  // conjugator or the R of y·R
};

Presentation ac_move(const Presentation& P, const AcMove& m);
std::string format_move(const AcMove& m);
Word invert_word(const Word& w);
// One-point union with generators of Q shifted past P's.
Presentation wedge(const Presentation& P, const Presentation& Q);

}  // namespace hkr
