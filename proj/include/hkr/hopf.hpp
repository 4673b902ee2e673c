#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <utility>
#include <vector>

#include "hkr/cyclo.hpp"

namespace hkr {

using Index = uint32_t;

// Sparse element of A: sorted (basis index, nonzero coefficient) pairs.
class AlgElem {
 public:
  AlgElem() = default;
  static AlgElem basis(Index i, const CycNum& c = CycNum(1));

  const std::vector<std::pair<Index, CycNum>>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  size_t size() const { return terms_.size(); }
  CycNum coeff(Index i) const;

  AlgElem operator+(const AlgElem& o) const;
  AlgElem operator-(const AlgElem& o) const;
  AlgElem operator-() const;
  AlgElem& operator+=(const AlgElem& o) { return *this = *this + o; }
  AlgElem& operator-=(const AlgElem& o) { return *this = *this - o; }
  bool operator==(const AlgElem& o) const { return terms_ == o.terms_; }
  bool operator!=(const AlgElem& o) const { return !(*this == o); }

  // Takes ownership of terms; sorts, merges and drops zeros.
  static AlgElem from_terms(std::vector<std::pair<Index, CycNum>> t);

 private:
  std::vector<std::pair<Index, CycNum>> terms_;
};

AlgElem operator*(const CycNum& c, const AlgElem& a);

// Dense scratch accumulator for building AlgElems.
class AlgAccumulator {
 public:
  explicit AlgAccumulator(Index dim) : coeff_(dim), used_(dim, 0) {}
  void add(Index i, const CycNum& c);
  void add(const AlgElem& a, const CycNum& scale);
  AlgElem take();

 private:
  std::vector<CycNum> coeff_;
  std::vector<char> used_;
  std::vector<Index> touched_;
};

// Sparse element of A^{⊗n}. Keys pack the index tuple in base dim, first
// factor most significant, so sorted order is lexicographic.
class TensorElem {
 public:
  using Key = uint64_t;
  TensorElem() = default;
  TensorElem(int arity, Index dim);

  int arity() const { return arity_; }
  Index dim() const { return dim_; }
  const std::vector<std::pair<Key, CycNum>>& terms() const { return terms_; }
  bool is_zero() const { return terms_.empty(); }
  size_t size() const { return terms_.size(); }

  Key pack(const Index* idx) const;
  void unpack(Key k, Index* idx) const;
  std::vector<Index> unpack(Key k) const;

  TensorElem operator+(const TensorElem& o) const;
  TensorElem operator-(const TensorElem& o) const;
  bool operator==(const TensorElem& o) const {
    return arity_ == o.arity_ && terms_ == o.terms_;
  }
  bool operator!=(const TensorElem& o) const { return !(*this == o); }

  static TensorElem from_terms(int arity, Index dim, std::vector<std::pair<Key, CycNum>> t);
  // a_1 ⊗ ... ⊗ a_n
  static TensorElem pure(Index dim, const std::vector<AlgElem>& factors);

 private:
  int arity_ = 0;
  Index dim_ = 0;
  std::vector<std::pair<Key, CycNum>> terms_;
};

TensorElem operator*(const CycNum& c, const TensorElem& t);

struct PureTensor {
  AlgElem alpha;
  AlgElem beta;
};

// Structure tables of a finite-dimensional ribbon Hopf algebra. Built once by
// a constructor (build_uqsl2, group_algebra), then finalized and shared
// read-only.
struct HopfData {
  std::string name;
  int p = 0;  // modulus of the scalar field
  Index dim = 0;
  std::vector<std::string> labels;

  std::vector<AlgElem> mul_table;      // dim*dim, row-major
  std::vector<TensorElem> comul_table;  // arity 2
  std::vector<AlgElem> antipode_table;
  std::vector<CycNum> counit_table;
  AlgElem unit;
  AlgElem Lambda;
  std::vector<CycNum> lambda_row;
  std::vector<PureTensor> R;
  AlgElem g;
  AlgElem g_inv;
  // Algebra generators used for commutant (centrality) checks.
  std::vector<AlgElem> generators;

  // Derived by finalize().
  std::vector<AlgElem> antipode_inv_table;
  // pairing[i] = sorted (j, λ(e_i e_j)) with nonzero value.
  std::vector<std::vector<std::pair<Index, CycNum>>> pairing;

  const AlgElem& mul_basis(Index i, Index j) const { return mul_table[size_t(i) * dim + j]; }
  CycNum zero() const { return CycNum(0).with_p(p); }
  CycNum one() const { return CycNum(1).with_p(p); }
};

using HopfPtr = std::shared_ptr<const HopfData>;

// Computes antipode_inv_table (S^{-1}(x) = S(g^{-1} x g)) and the λ pairing.
void finalize(HopfData& H);

AlgElem mul(const HopfData& H, const AlgElem& a, const AlgElem& b);
AlgElem mul(const HopfData& H, std::initializer_list<AlgElem> factors);
AlgElem antipode(const HopfData& H, const AlgElem& a);
AlgElem antipode_inv(const HopfData& H, const AlgElem& a);
CycNum counit(const HopfData& H, const AlgElem& a);
CycNum lambda(const HopfData& H, const AlgElem& a);
// λ(a·b) through the pairing table.
CycNum lambda_pair(const HopfData& H, const AlgElem& a, const AlgElem& b);
TensorElem comul(const HopfData& H, const AlgElem& a);
// Iterated coproduct Δ^{(n-1)}: A -> A^{⊗n}; n = 1 returns a as arity 1.
TensorElem comul_n(const HopfData& H, const AlgElem& a, int n);
AlgElem power(const HopfData& H, const AlgElem& a, int n);
// Solves a·x = 1 (throws StructureError when a is not invertible).
AlgElem inverse(const HopfData& H, const AlgElem& a);
bool commutes_with_generators(const HopfData& H, const AlgElem& a);

// Tensor helpers.
TensorElem tensor_mul(const HopfData& H, const TensorElem& x, const TensorElem& y);
TensorElem tensor_apply(const HopfData& H, const TensorElem& x, int slot,
                        const std::function<AlgElem(Index)>& f);
// Applies a functional to one slot, reducing the arity by one.
TensorElem tensor_contract(const TensorElem& x, int slot, const std::function<CycNum(Index)>& f);
// Applies Δ to one slot, increasing the arity by one.
TensorElem tensor_comul(const HopfData& H, const TensorElem& x, int slot);
// result slot k holds x's slot perm[k].
TensorElem tensor_permute(const TensorElem& x, const std::vector<int>& perm);
// Embeds an arity-2 tensor into arity n at slots (k, l), filling 1 elsewhere.
TensorElem tensor_embed(const HopfData& H, const TensorElem& x, int n, int k, int l);
AlgElem tensor_to_alg(const TensorElem& x);
TensorElem alg_to_tensor(const AlgElem& a, Index dim);
TensorElem r_matrix(const HopfData& H);

struct RibbonElements {
  AlgElem u, theta, theta_inv;
};
RibbonElements ribbon_elements(const HopfData& H);

// Result of a single named axiom check.
struct AxiomResult {
  std::string name;
  bool pass = true;
  long checked = 0;
  std::string counterexample;
};

struct AxiomReport {
  std::vector<AxiomResult> results;
  bool all_pass() const;
  std::string str() const;
};

struct AxiomOptions {
  bool all = false;     // exhaustive unary and pairwise checks
  int samples = 200;    // pseudo-random tuples for binary/ternary checks
  uint64_t seed = 12345;
};

AxiomReport axiom_report(const HopfData& H, const AxiomOptions& opts = {});

// Returns a with λ(a·b) = f[b] for all basis b.
AlgElem phi_solve(const HopfData& H, const std::vector<CycNum>& f);

std::string format_elem(const HopfData& H, const AlgElem& a);
// Inverse of format_elem: terms (COEFF)*LABEL separated by '+' or newlines;
// '#' starts a comment.
AlgElem parse_elem(const HopfData& H, const std::string& text);

}  // namespace hkr
