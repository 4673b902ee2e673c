#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hkr/hopf.hpp"
#include "hkr/linalg.hpp"

namespace hkr {

// Z(A) with its λ-pairing, the radical K(A) and a chosen basis of Ẑ = Z/K.
struct CenterBasis {
  HopfPtr H;
  std::vector<AlgElem> elements;  // basis of Z(A)
  Matrix gram;                    // λ(z_a z_b)
  std::vector<AlgElem> k_basis;   // basis of K(A)
  std::vector<AlgElem> class_basis;
  std::vector<std::string> class_names;
  Matrix class_pairing;  // λ(class_basis[i] · elements[k])

  size_t dim_Z() const { return elements.size(); }
  size_t dim_K() const { return k_basis.size(); }
  size_t dim_Zhat() const { return class_basis.size(); }
};

// Null space of x -> (x·g - g·x) over H.generators. For the quantum sl(2)
// the unknowns are restricted to the weight-zero span of 1_c E^(n) F^(n).
CenterBasis compute_center(HopfPtr H);
// Replaces the representatives of Ẑ; throws ConsistencyError unless they
// form a basis of Z/K.
void set_class_basis(CenterBasis& C, std::vector<AlgElem> reps, std::vector<std::string> names);
// Coordinates of [z] in C.class_basis.
std::vector<CycNum> class_coords(const CenterBasis& C, const AlgElem& z);
AlgElem class_rep(const CenterBasis& C, const std::vector<CycNum>& coords);
bool in_K(const CenterBasis& C, const AlgElem& z);
bool class_equal(const CenterBasis& C, const AlgElem& a, const AlgElem& b);
// Coordinates of a central z in C.elements.
std::vector<CycNum> center_coords(const CenterBasis& C, const AlgElem& z);

void require_central(const HopfData& H, const AlgElem& a, const char* what);
// a⋆b = Σ λ(S(a) b_(1)) b_(2)
AlgElem star(const HopfData& H, const AlgElem& a, const AlgElem& b);
// J(z) = Σ_{i,j} λ(z β_i α_j) α_i β_j
AlgElem J(const HopfData& H, const AlgElem& z);
// σ(a,b,c) = λ(S(a)(b⋆c))
CycNum sigma(const HopfData& H, const AlgElem& a, const AlgElem& b, const AlgElem& c);
// μ(δ(w,z), (a⊗b)Δc) with δ(w,z) = z⊗w - (1⊗w)Δ(z).
CycNum delta_pairing(const HopfData& H, const AlgElem& w, const AlgElem& z, const AlgElem& a,
                     const AlgElem& b, const AlgElem& c);

// ------------------------------------------------------------------ sl(2)

struct KerlerBasis {
  int p = 0, q = 0;
  AlgElem X;
  std::vector<CycNum> b;  // b(s), s = 0..p-1
  std::vector<AlgElem> P;  // j = 0..q
  std::vector<AlgElem> N, Nplus, Nminus, Ndot_minus, T;  // j = 0..q-1
  // Each expansion of the 1_{-2s}E^(j)F^(j) coefficients of φ_k(X) and
  // φ_k(X)(X-b(k)), and the values φ_k(b(k)), φ_k'(b(k)), compared with the
  // closed forms. Empty when all agree.
  std::vector<std::string> expansion_mismatches;
};

// Builds X, P_j, N_j, N_j^± as polynomials in X and verifies the product
// table (throws ConsistencyError on mismatch).
KerlerBasis kerler_basis(const HopfData& H);
// Violations of the product table, centrality and S-invariance.
std::vector<std::string> kerler_product_failures(const HopfData& H, const KerlerBasis& K);
// v^q P_q + Σ_j v^{2j(j+1)} (P_j + (2j+1)/[2j+1] N_j - p/[2j+1] N_j^-)
AlgElem theta_expansion(const HopfData& H, const KerlerBasis& K);
// ω_{ij} = [(2i+1)(2j+1)]/[2j+1] and its closed-form inverse.
Matrix omega_matrix(int p);
Matrix omega_inverse_closed(int p);

// ε_{ij}^s from the four-inequality rule.
int fusion_rule(int p, int i, int j, int s);
// The rule tensor, cross-checked against σ(Ṅ_i^-, Ṅ_j^-, P_s)/λ(Ṅ_s^-);
// throws ConsistencyError on mismatch.
std::vector<std::vector<std::vector<int>>> fusion_coefficients(const HopfData& H,
                                                                const KerlerBasis& K);

// Everything the classification and evaluation code needs for one algebra.
struct CenterContext {
  HopfPtr H;
  RibbonElements ribbon;
  CenterBasis center;
  std::optional<KerlerBasis> kerler;
};

CenterContext make_context(HopfPtr H);
// "one", "lambda", "p0", "zrt" (sl(2)); "one", "lambda" for any algebra.
AlgElem named_trace_element(const CenterContext& ctx, const std::string& name);

struct TraceReport {
  std::vector<CycNum> coords;
  bool in_TZ = false;
  bool in_T4 = false;
  AlgElem witness;  // w with [zw] = [Λ]
  bool in_T3 = false;
  CycNum X_z;
  bool in_T2 = false;
  std::string t2_witness;
  CycNum C_plus, C_minus;  // λ(zθ^{±1})
};

bool in_TZ(const CenterContext& ctx, const AlgElem& z);
std::optional<AlgElem> t4_witness(const CenterContext& ctx, const AlgElem& z);
TraceReport classify_trace_element(const CenterContext& ctx, const AlgElem& z, bool search_T2 = false);

// Rays of 𝒯_Z for the quantum sl(2), found through fusion-closed index
// subsets containing 0 and re-verified with in_TZ.
struct TZRay {
  std::string name;
  AlgElem rep;
  std::vector<CycNum> coords;
};
std::vector<std::vector<int>> fusion_closed_subsets(int p);
std::vector<TZRay> enumerate_TZ(const CenterContext& ctx);

}  // namespace hkr
