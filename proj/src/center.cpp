#include "hkr/center.hpp"

#include <map>

#include "hkr/errors.hpp"
#include "hkr/uqsl2.hpp"

namespace hkr {

namespace {

// Dense functional x -> λ(f·e_x).
std::vector<CycNum> pairing_functional(const HopfData& H, const AlgElem& f) {
  std::vector<CycNum> out(H.dim);
  for (const auto& [i, c] : f.terms())
    for (const auto& [x, val] : H.pairing[i]) out[x] += c * val;
  return out;
}

AlgElem combine(const std::vector<AlgElem>& basis, const std::vector<CycNum>& coeffs) {
  AlgElem r;
  for (size_t k = 0; k < basis.size(); ++k)
    if (!coeffs[k].is_zero()) r += coeffs[k] * basis[k];
  return r;
}

std::vector<CycNum> pair_with_elements(const CenterBasis& C, const AlgElem& z) {
  std::vector<CycNum> out(C.elements.size());
  for (size_t k = 0; k < C.elements.size(); ++k) out[k] = lambda_pair(*C.H, z, C.elements[k]);
  return out;
}

}  // namespace

CenterBasis compute_center(HopfPtr Hp) {
  const HopfData& H = *Hp;
  std::vector<Index> support;
  if (is_uqsl2(H)) {
    for (int c = 0; c < H.p; ++c)
      for (int n = 0; n < H.p; ++n) support.push_back(sl2_index(H.p, c, n, n));
  } else {
    for (Index i = 0; i < H.dim; ++i) support.push_back(i);
  }
  std::map<std::pair<size_t, Index>, SparseRow> rows;
  for (size_t g = 0; g < H.generators.size(); ++g)
    for (uint32_t k = 0; k < support.size(); ++k) {
      AlgElem e = AlgElem::basis(support[k], H.one());
      AlgElem comm = mul(H, e, H.generators[g]) - mul(H, H.generators[g], e);
      for (const auto& [i, c] : comm.terms()) rows[{g, i}].emplace_back(k, c);
    }
  std::vector<SparseRow> system;
  for (auto& [key, r] : rows) system.push_back(std::move(r));
  CenterBasis C;
  C.H = Hp;
  for (const auto& vec : null_space(system, static_cast<uint32_t>(support.size()))) {
    std::vector<std::pair<Index, CycNum>> t;
    for (size_t k = 0; k < support.size(); ++k)
      if (!vec[k].is_zero()) t.emplace_back(support[k], vec[k].with_p(H.p));
    C.elements.push_back(AlgElem::from_terms(std::move(t)));
  }
  size_t d = C.elements.size();
  C.gram.assign(d, std::vector<CycNum>(d));
  for (size_t a = 0; a < d; ++a)
    for (size_t b = 0; b < d; ++b) C.gram[a][b] = lambda_pair(H, C.elements[a], C.elements[b]);
  std::vector<SparseRow> grows(d);
  for (size_t a = 0; a < d; ++a)
    for (size_t b = 0; b < d; ++b)
      if (!C.gram[a][b].is_zero()) grows[a].emplace_back(static_cast<uint32_t>(b), C.gram[a][b]);
  for (const auto& vec : null_space(grows, static_cast<uint32_t>(d))) C.k_basis.push_back(combine(C.elements, vec));
  // Default class representatives: center basis elements independent modulo K.
  Echelon ech(static_cast<uint32_t>(d));
  std::vector<AlgElem> reps;
  std::vector<std::string> names;
  for (size_t a = 0; a < d; ++a)
    if (ech.add(grows[a])) {
      reps.push_back(C.elements[a]);
      names.push_back("z" + std::to_string(a));
    }
  set_class_basis(C, std::move(reps), std::move(names));
  return C;
}

void set_class_basis(CenterBasis& C, std::vector<AlgElem> reps, std::vector<std::string> names) {
  size_t rank_gram = C.dim_Z() - C.dim_K();
  if (reps.size() != rank_gram || names.size() != reps.size())
    throw ConsistencyError("class basis has wrong size");
  Echelon ech(static_cast<uint32_t>(C.dim_Z()));
  Matrix pairing;
  for (const auto& r : reps) {
    auto row = pair_with_elements(C, r);
    SparseRow sr;
    for (size_t k = 0; k < row.size(); ++k)
      if (!row[k].is_zero()) sr.emplace_back(static_cast<uint32_t>(k), row[k]);
    if (!ech.add(sr)) throw ConsistencyError("class representatives are dependent modulo K(A)");
    pairing.push_back(std::move(row));
  }
  C.class_basis = std::move(reps);
  C.class_names = std::move(names);
  C.class_pairing = std::move(pairing);
}

std::vector<CycNum> class_coords(const CenterBasis& C, const AlgElem& z) {
  auto target = pair_with_elements(C, z);
  std::vector<SparseRow> rows(C.dim_Z());
  for (size_t i = 0; i < C.dim_Zhat(); ++i)
    for (size_t k = 0; k < C.dim_Z(); ++k)
      if (!C.class_pairing[i][k].is_zero()) rows[k].emplace_back(static_cast<uint32_t>(i), C.class_pairing[i][k]);
  auto x = solve_linear(rows, target, static_cast<uint32_t>(C.dim_Zhat()));
  if (!x) throw PreconditionError("class_coords: element is not central");
  for (auto& c : *x) c = c.with_p(C.H->p);
  return *x;
}

AlgElem class_rep(const CenterBasis& C, const std::vector<CycNum>& coords) {
  return combine(C.class_basis, coords);
}

bool in_K(const CenterBasis& C, const AlgElem& z) {
  for (const auto& e : C.elements)
    if (!lambda_pair(*C.H, z, e).is_zero()) return false;
  return true;
}

bool class_equal(const CenterBasis& C, const AlgElem& a, const AlgElem& b) { return in_K(C, a - b); }

std::vector<CycNum> center_coords(const CenterBasis& C, const AlgElem& z) {
  std::map<Index, SparseRow> rows;
  std::map<Index, CycNum> rhs;
  for (size_t k = 0; k < C.dim_Z(); ++k)
    for (const auto& [i, c] : C.elements[k].terms()) rows[i].emplace_back(static_cast<uint32_t>(k), c);
  for (const auto& [i, c] : z.terms()) {
    rows[i];
    rhs[i] = c;
  }
  std::vector<SparseRow> sys;
  std::vector<CycNum> r;
  for (auto& [i, row] : rows) {
    sys.push_back(std::move(row));
    r.push_back(rhs.count(i) ? rhs[i] : CycNum());
  }
  auto x = solve_linear(sys, r, static_cast<uint32_t>(C.dim_Z()));
  if (!x) throw PreconditionError("center_coords: element is not central");
  for (auto& c : *x) c = c.with_p(C.H->p);
  return *x;
}

void require_central(const HopfData& H, const AlgElem& a, const char* what) {
  if (!commutes_with_generators(H, a)) throw PreconditionError(std::string(what) + ": argument is not central");
}

AlgElem star(const HopfData& H, const AlgElem& a, const AlgElem& b) {
  require_central(H, a, "star");
  require_central(H, b, "star");
  auto f = pairing_functional(H, antipode(H, a));
  AlgAccumulator acc(H.dim);
  for (const auto& [i, c] : b.terms())
    for (const auto& [k, d] : H.comul_table[i].terms()) {
      const CycNum& fx = f[k / H.dim];
      if (!fx.is_zero()) acc.add(static_cast<Index>(k % H.dim), c * d * fx);
    }
  return acc.take();
}

AlgElem J(const HopfData& H, const AlgElem& z) {
  require_central(H, z, "J");
  AlgAccumulator acc(H.dim);
  for (const auto& ri : H.R) {
    AlgElem zb = mul(H, z, ri.beta);
    if (zb.is_zero()) continue;
    auto f = pairing_functional(H, zb);
    for (const auto& rj : H.R) {
      CycNum s;
      for (const auto& [t, c] : rj.alpha.terms())
        if (!f[t].is_zero()) s += c * f[t];
      if (!s.is_zero()) acc.add(mul(H, ri.alpha, rj.beta), s);
    }
  }
  return acc.take();
}

CycNum sigma(const HopfData& H, const AlgElem& a, const AlgElem& b, const AlgElem& c) {
  return lambda(H, mul(H, antipode(H, a), star(H, b, c)));
}

namespace {

// Σ f(x_(1)) h(x_(2)) for dense functionals f, h.
CycNum split_pair(const HopfData& H, const AlgElem& x, const std::vector<CycNum>& f,
                  const std::vector<CycNum>& h) {
  CycNum s;
  for (const auto& [i, c] : x.terms())
    for (const auto& [k, d] : H.comul_table[i].terms()) {
      const CycNum& fx = f[k / H.dim];
      if (fx.is_zero()) continue;
      const CycNum& hy = h[k % H.dim];
      if (!hy.is_zero()) s += c * d * fx * hy;
    }
  return s;
}

}  // namespace

CycNum delta_pairing(const HopfData& H, const AlgElem& w, const AlgElem& z, const AlgElem& a,
                     const AlgElem& b, const AlgElem& c) {
  for (const AlgElem* x : {&w, &z, &a, &b, &c}) require_central(H, *x, "delta_pairing");
  auto h = pairing_functional(H, mul(H, w, b));
  CycNum first = split_pair(H, c, pairing_functional(H, mul(H, z, a)), h);
  // z_(1) a c_(1) ⊗ w z_(2) b c_(2) = (a ⊗ wb) Δ(zc) since a, b, w are central.
  CycNum second = split_pair(H, mul(H, z, c), pairing_functional(H, a), h);
  return (first - second).with_p(H.p);
}

}  // namespace hkr
