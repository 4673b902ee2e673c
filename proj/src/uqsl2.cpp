#include "hkr/uqsl2.hpp"

#include "hkr/errors.hpp"

namespace hkr {

namespace {

int md(long a, int p) {
  long r = a % p;
  return static_cast<int>(r < 0 ? r + p : r);
}

}  // namespace

Index sl2_index(int p, int c, int n, int m) {
  return static_cast<Index>((md(c, p) * p + n) * p + m);
}

Sl2Basis sl2_decode(int p, Index i) {
  int m = static_cast<int>(i % p);
  int n = static_cast<int>((i / p) % p);
  int c = static_cast<int>(i / (p * p));
  return {c, n, m};
}

bool is_uqsl2(const HopfData& H) { return H.name == "uqsl2"; }

HopfPtr build_uqsl2(int p) {
  if (!is_prime(p) || p <= 3) throw PreconditionError("build_uqsl2: p must be a prime > 3");
  if (p > CycNum::kMaxP) throw PreconditionError("build_uqsl2: p too large for this build");
  auto H = std::make_shared<HopfData>();
  H->name = "uqsl2";
  H->p = p;
  H->dim = static_cast<Index>(p * p * p);
  auto vv = [p](long e) { return CycNum::v_power(p, e); };
  auto idx = [p](int c, int n, int m) { return sl2_index(p, c, n, m); };

  H->labels.resize(H->dim);
  for (Index i = 0; i < H->dim; ++i) {
    auto b = sl2_decode(p, i);
    H->labels[i] = "1_" + std::to_string(b.c) + "E(" + std::to_string(b.n) + ")F(" +
                   std::to_string(b.m) + ")";
  }

  // (c,n,m)(d,k,l): move F^(m) past E^(k), then merge the divided powers.
  H->mul_table.assign(size_t(H->dim) * H->dim, {});
  for (Index i = 0; i < H->dim; ++i) {
    auto [c, n, m] = sl2_decode(p, i);
    for (Index j = 0; j < H->dim; ++j) {
      auto [d, k, l] = sl2_decode(p, j);
      if (md(c - 2 * n - d + 2 * m, p) != 0) continue;
      std::vector<std::pair<Index, CycNum>> t;
      for (int s = 0; s <= std::min(m, k); ++s) {
        int ne = n + k - s, nf = m - s + l;
        if (ne >= p || nf >= p) continue;
        CycNum coef = qbinom(p, k + m - d, s) * qbinom(p, ne, n) * qbinom(p, nf, m - s);
        if (!coef.is_zero()) t.emplace_back(idx(c, ne, nf), coef);
      }
      H->mul_table[size_t(i) * H->dim + j] = AlgElem::from_terms(std::move(t));
    }
  }

  H->unit = {};
  for (int c = 0; c < p; ++c) H->unit += AlgElem::basis(idx(c, 0, 0), H->one());

  H->comul_table.resize(H->dim);
  for (Index i = 0; i < H->dim; ++i) {
    auto [c, n, m] = sl2_decode(p, i);
    std::vector<std::pair<TensorElem::Key, CycNum>> de, df;
    TensorElem shape(2, H->dim);
    for (int a = 0; a <= n; ++a)
      for (int r = 0; r < p; ++r) {
        Index pr[2] = {idx(r, a, 0), idx(c - r, n - a, 0)};
        de.emplace_back(shape.pack(pr), vv(long(a) * (a - n) + long(r) * (n - a)));
      }
    int cf = md(c - 2 * n, p);
    for (int a = 0; a <= m; ++a)
      for (int r = 0; r < p; ++r) {
        Index pr[2] = {idx(r, 0, a), idx(cf - r, 0, m - a)};
        df.emplace_back(shape.pack(pr), vv(long(a) * (a - m) - long(cf - r) * a));
      }
    H->comul_table[i] =
        tensor_mul(*H, TensorElem::from_terms(2, H->dim, std::move(de)),
                   TensorElem::from_terms(2, H->dim, std::move(df)));
  }

  // S is anti-multiplicative: S(1_c E^(n) 1_{c-2n} F^(m)) = S(F part) S(E part).
  H->antipode_table.resize(H->dim);
  for (Index i = 0; i < H->dim; ++i) {
    auto [c, n, m] = sl2_decode(p, i);
    int cf = md(c - 2 * n, p);
    CycNum se = vv(long(n) * (c - 1 - n)) * CycNum(n % 2 ? -1 : 1);
    CycNum sf = vv(-long(m) * (cf - 1 + m)) * CycNum(m % 2 ? -1 : 1);
    const AlgElem& prod = H->mul_basis(idx(-cf - 2 * m, 0, m), idx(-c + 2 * n, n, 0));
    H->antipode_table[i] = (se * sf) * prod;
  }

  H->counit_table.assign(H->dim, H->zero());
  H->counit_table[idx(0, 0, 0)] = H->one();
  H->Lambda = AlgElem::basis(idx(0, p - 1, p - 1), H->one());
  H->lambda_row.assign(H->dim, H->zero());
  for (int c = 0; c < p; ++c) H->lambda_row[idx(c, p - 1, p - 1)] = vv(c);

  for (int n = 0; n < p; ++n)
    for (int r = 0; r < p; ++r)
      for (int s = 0; s < p; ++s) {
        long e = long(n) * (n - 1) / 2 + half_exponent(p, long(r) * s, 2);
        CycNum coef = vv(e) * qfact_braces(p, n);
        H->R.push_back({AlgElem::basis(idx(r, 0, n), coef), AlgElem::basis(idx(s, n, 0), H->one())});
      }

  for (int c = 0; c < p; ++c) {
    H->g += AlgElem::basis(idx(c, 0, 0), vv(-c));
    H->g_inv += AlgElem::basis(idx(c, 0, 0), vv(c));
  }
  for (int c = 0; c < p; ++c) H->generators.push_back(AlgElem::basis(idx(c, 0, 0), H->one()));
  H->generators.push_back(sl2_E(*H));
  H->generators.push_back(sl2_F(*H));
  finalize(*H);
  return H;
}

AlgElem sl2_idem(const HopfData& H, int c) { return AlgElem::basis(sl2_index(H.p, c, 0, 0), H.one()); }

AlgElem sl2_E(const HopfData& H) {
  AlgElem e;
  for (int c = 0; c < H.p; ++c) e += AlgElem::basis(sl2_index(H.p, c, 1, 0), H.one());
  return e;
}

AlgElem sl2_F(const HopfData& H) {
  AlgElem f;
  for (int c = 0; c < H.p; ++c) f += AlgElem::basis(sl2_index(H.p, c, 0, 1), H.one());
  return f;
}

// ------------------------------------------------------------ representations

RepVn make_rep(int p, int n) {
  if (n < 0 || 2 * n + 1 > p - 2) throw PreconditionError("V_n requires 0 <= n <= (p-3)/2");
  return {p, n};
}

namespace {

Matrix zero_matrix(int d) { return Matrix(d, std::vector<CycNum>(d)); }

Matrix identity_matrix(int d) {
  Matrix m = zero_matrix(d);
  for (int i = 0; i < d; ++i) m[i][i] = CycNum(1);
  return m;
}

// E^(1): e_i -> [n+i+1][n-i] e_{i+1};  F^(1): e_i -> e_{i-1}.
Matrix e_matrix(const RepVn& V) {
  Matrix m = zero_matrix(V.dim());
  for (int i = -V.n; i < V.n; ++i)
    m[i + 1 + V.n][i + V.n] = qint(V.p, V.n + i + 1) * qint(V.p, V.n - i);
  return m;
}

Matrix f_matrix(const RepVn& V) {
  Matrix m = zero_matrix(V.dim());
  for (int i = -V.n + 1; i <= V.n; ++i) m[i - 1 + V.n][i + V.n] = CycNum(1);
  return m;
}

Matrix divided_power(const Matrix& gen, int k, int p) {
  Matrix r = identity_matrix(static_cast<int>(gen.size()));
  for (int s = 0; s < k; ++s) r = mat_mul(gen, r);
  CycNum inv = qfact(p, k).inverse();
  for (auto& row : r)
    for (auto& x : row) x *= inv;
  return r;
}

}  // namespace

Matrix rep_matrix(const RepVn& V, Index basis) {
  auto [c, n, m] = sl2_decode(V.p, basis);
  Matrix r = mat_mul(divided_power(e_matrix(V), n, V.p), divided_power(f_matrix(V), m, V.p));
  for (int i = -V.n; i <= V.n; ++i)
    if (md(2 * i - c, V.p) != 0)
      for (auto& x : r[i + V.n]) x = CycNum();
  return r;
}

Matrix rep_matrix(const RepVn& V, const AlgElem& a) {
  Matrix r = zero_matrix(V.dim());
  for (const auto& [i, c] : a.terms()) {
    Matrix b = rep_matrix(V, i);
    for (int x = 0; x < V.dim(); ++x)
      for (int y = 0; y < V.dim(); ++y)
        if (!b[x][y].is_zero()) r[x][y] += c * b[x][y];
  }
  return r;
}

std::vector<CycNum> rep_action(const RepVn& V, const AlgElem& a, const std::vector<CycNum>& vec) {
  if (static_cast<int>(vec.size()) != V.dim()) throw PreconditionError("rep_action: bad vector length");
  Matrix m = rep_matrix(V, a);
  std::vector<CycNum> out(V.dim());
  for (int x = 0; x < V.dim(); ++x)
    for (int y = 0; y < V.dim(); ++y)
      if (!m[x][y].is_zero()) out[x] += m[x][y] * vec[y];
  return out;
}

CycNum quantum_trace(const HopfData& H, const RepVn& V, const AlgElem& a) {
  Matrix m = rep_matrix(V, a);
  CycNum t = H.zero();
  for (int i = -V.n; i <= V.n; ++i) t += CycNum::v_power(H.p, -2 * i) * m[i + V.n][i + V.n];
  return t;
}

AlgElem trace_element(const HopfData& H, const RepVn& V) {
  if (!is_uqsl2(H) || H.p != V.p) throw PreconditionError("trace_element: algebra/module mismatch");
  Matrix e = e_matrix(V), f = f_matrix(V);
  std::vector<Matrix> epow(H.p), fpow(H.p);
  for (int k = 0; k < H.p; ++k) {
    epow[k] = divided_power(e, k, H.p);
    fpow[k] = divided_power(f, k, H.p);
  }
  std::vector<CycNum> tr(H.dim, H.zero());
  for (Index b = 0; b < H.dim; ++b) {
    auto [c, n, m] = sl2_decode(H.p, b);
    CycNum t = H.zero();
    for (int i = -V.n; i <= V.n; ++i) {
      if (md(2 * i - c, H.p) != 0) continue;
      CycNum diag;
      for (int y = 0; y < V.dim(); ++y) diag += epow[n][i + V.n][y] * fpow[m][y][i + V.n];
      t += CycNum::v_power(H.p, -2 * i) * diag;
    }
    tr[b] = t;
  }
  AlgElem x = phi_solve(H, tr);
  AlgElem z = mul(H, {H.g_inv, H.g_inv, x});
  if (!commutes_with_generators(H, z)) throw ConsistencyError("trace element is not central");
  return z;
}

}  // namespace hkr
