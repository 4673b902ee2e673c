#pragma once

#include "hkr/hopf.hpp"
#include "hkr/linalg.hpp"

namespace hkr {

// Basis element 1_c E^(n) F^(m) of the small quantum sl(2).
struct Sl2Basis {
  int c, n, m;
};

Index sl2_index(int p, int c, int n, int m);
Sl2Basis sl2_decode(int p, Index i);

// Builds the Hopf algebra for an odd prime p > 3 (p <= CycNum::kMaxP).
HopfPtr build_uqsl2(int p);
bool is_uqsl2(const HopfData& H);

AlgElem sl2_idem(const HopfData& H, int c);  // 1_c
AlgElem sl2_E(const HopfData& H);            // sum_c 1_c E^(1)
AlgElem sl2_F(const HopfData& H);            // sum_c 1_c F^(1)

// Simple module V_n with basis e_{-n}..e_n (vector slot i+n).
struct RepVn {
  int p = 0;
  int n = 0;
  int dim() const { return 2 * n + 1; }
};

RepVn make_rep(int p, int n);
// Matrix of the action of one basis element.
Matrix rep_matrix(const RepVn& V, Index basis);
Matrix rep_matrix(const RepVn& V, const AlgElem& a);
std::vector<CycNum> rep_action(const RepVn& V, const AlgElem& a, const std::vector<CycNum>& vec);
// tr_V(a) = sum_i e_i^*(g a e_i).
CycNum quantum_trace(const HopfData& H, const RepVn& V, const AlgElem& a);
// z_V with tr_V(a) = λ(g^2 z_V a); verified central.
AlgElem trace_element(const HopfData& H, const RepVn& V);

}  // namespace hkr
