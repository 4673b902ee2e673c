#pragma once

#include <optional>
#include <vector>

#include "hkr/center.hpp"
#include "hkr/kirby.hpp"

namespace hkr {

// Colors of closed undotted components (by component number) and of dotted
// circles (by ascending dot id). All colors must be central.
struct Coloring {
  std::vector<AlgElem> undotted;
  std::vector<AlgElem> dotted;
};

Coloring uniform_coloring(const Diagram& D, const AlgElem& z, const AlgElem& w);

struct EvalResult {
  bool closed = true;
  CycNum value;       // closed diagrams
  TensorElem tensor;  // open tangles: one factor per open component
};

enum class Backend { Slice, Summation };

// Labeling conventions (calibrated by the test suite):
//  - crossing x+ (over strand from top right): under strand gets α_i, over
//    strand β_i; x- deposits S(α_i) under and β_i over;
//  - a bead on an upward strand is replaced by its S^{-1};
//  - maxima traversed right to left carry g^{-1}, minima traversed right to
//    left carry g, extrema traversed left to right carry nothing;
//  - dot legs get Δ^{(t-1)}(w) right to left, so that crossings pass through
//    a dotted circle via Δ^op(x)R = RΔ(x);
//  - a closed component with word W contributes λ(g z W), a disjoint dotted
//    circle ε(w).
// The summation backend enumerates pure-tensor assignments and is meant as
// an oracle for small diagrams.
EvalResult evaluate(const HopfData& H, const Diagram& D, const Coloring& col, Backend backend = Backend::Slice,
                    int jobs = 1);

// 𝒵_[z] with the uniform coloring (z, w); w defaults to the 𝒯⁴ witness.
// Throws PreconditionError when z is not in 𝒯⁴.
CycNum invariant(const CenterContext& ctx, const Diagram& D, const AlgElem& z,
                 const std::optional<AlgElem>& w = std::nullopt, int jobs = 1);

struct BoundaryValue {
  CycNum value;
  CycNum raw;
  CycNum C_plus, C_minus;
  int exp_plus = 0, exp_minus = 0;  // n - σ_+, n - σ_-
};

// C_+^{n-σ_+} C_-^{n-σ_-} 𝒵_[z]; requires z in 𝒯³.
BoundaryValue boundary_invariant(const CenterContext& ctx, const Diagram& D, const AlgElem& z, int jobs = 1);

}  // namespace hkr
