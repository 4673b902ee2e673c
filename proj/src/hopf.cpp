#include "hkr/hopf.hpp"

#include <algorithm>
#include <sstream>
#include <unordered_map>

#include "hkr/errors.hpp"
#include "hkr/linalg.hpp"

namespace hkr {

// ---------------------------------------------------------------- AlgElem

AlgElem AlgElem::basis(Index i, const CycNum& c) {
  AlgElem a;
  if (!c.is_zero()) a.terms_.emplace_back(i, c);
  return a;
}

CycNum AlgElem::coeff(Index i) const {
  auto it = std::lower_bound(terms_.begin(), terms_.end(), i,
                             [](const auto& t, Index k) { return t.first < k; });
  if (it != terms_.end() && it->first == i) return it->second;
  return CycNum();
}

AlgElem AlgElem::from_terms(std::vector<std::pair<Index, CycNum>> t) {
  std::sort(t.begin(), t.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  AlgElem r;
  for (auto& [i, c] : t) {
    if (!r.terms_.empty() && r.terms_.back().first == i)
      r.terms_.back().second += c;
    else
      r.terms_.emplace_back(i, std::move(c));
  }
  std::erase_if(r.terms_, [](const auto& x) { return x.second.is_zero(); });
  return r;
}

AlgElem AlgElem::operator+(const AlgElem& o) const {
  AlgElem r;
  r.terms_.reserve(terms_.size() + o.terms_.size());
  size_t i = 0, j = 0;
  while (i < terms_.size() || j < o.terms_.size()) {
    if (j == o.terms_.size() || (i < terms_.size() && terms_[i].first < o.terms_[j].first)) {
      r.terms_.push_back(terms_[i++]);
    } else if (i == terms_.size() || o.terms_[j].first < terms_[i].first) {
      r.terms_.push_back(o.terms_[j++]);
    } else {
      CycNum s = terms_[i].second + o.terms_[j].second;
      if (!s.is_zero()) r.terms_.emplace_back(terms_[i].first, s);
      ++i;
      ++j;
    }
  }
  return r;
}

AlgElem AlgElem::operator-() const {
  AlgElem r = *this;
  for (auto& t : r.terms_) t.second = -t.second;
  return r;
}

AlgElem AlgElem::operator-(const AlgElem& o) const { return *this + (-o); }

AlgElem operator*(const CycNum& c, const AlgElem& a) {
  if (c.is_zero()) return {};
  std::vector<std::pair<Index, CycNum>> t;
  t.reserve(a.size());
  for (const auto& [i, x] : a.terms()) t.emplace_back(i, c * x);
  return AlgElem::from_terms(std::move(t));
}

void AlgAccumulator::add(Index i, const CycNum& c) {
  if (!used_[i]) {
    used_[i] = 1;
    touched_.push_back(i);
    coeff_[i] = c;
  } else {
    coeff_[i] += c;
  }
}

void AlgAccumulator::add(const AlgElem& a, const CycNum& scale) {
  for (const auto& [i, c] : a.terms()) add(i, scale * c);
}

AlgElem AlgAccumulator::take() {
  std::sort(touched_.begin(), touched_.end());
  std::vector<std::pair<Index, CycNum>> t;
  for (Index i : touched_) {
    if (!coeff_[i].is_zero()) t.emplace_back(i, coeff_[i]);
    coeff_[i] = CycNum();
    used_[i] = 0;
  }
  touched_.clear();
  return AlgElem::from_terms(std::move(t));
}

// ------------------------------------------------------------- TensorElem

TensorElem::TensorElem(int arity, Index dim) : arity_(arity), dim_(dim) {
  if (arity < 1) throw PreconditionError("tensor arity must be positive");
  long double cap = 1;
  for (int k = 0; k < arity; ++k) cap *= dim;
  if (cap >= 1.8e19L) throw PreconditionError("tensor arity too large for key packing");
}

TensorElem::Key TensorElem::pack(const Index* idx) const {
  Key k = 0;
  for (int s = 0; s < arity_; ++s) k = k * dim_ + idx[s];
  return k;
}

void TensorElem::unpack(Key k, Index* idx) const {
  for (int s = arity_ - 1; s >= 0; --s) {
    idx[s] = static_cast<Index>(k % dim_);
    k /= dim_;
  }
}

std::vector<Index> TensorElem::unpack(Key k) const {
  std::vector<Index> idx(arity_);
  unpack(k, idx.data());
  return idx;
}

TensorElem TensorElem::from_terms(int arity, Index dim, std::vector<std::pair<Key, CycNum>> t) {
  TensorElem r(arity, dim);
  std::sort(t.begin(), t.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  for (auto& [k, c] : t) {
    if (!r.terms_.empty() && r.terms_.back().first == k)
      r.terms_.back().second += c;
    else
      r.terms_.emplace_back(k, std::move(c));
  }
  std::erase_if(r.terms_, [](const auto& x) { return x.second.is_zero(); });
  return r;
}

TensorElem TensorElem::operator+(const TensorElem& o) const {
  if (arity_ != o.arity_) throw PreconditionError("tensor arity mismatch");
  auto t = terms_;
  t.insert(t.end(), o.terms_.begin(), o.terms_.end());
  return from_terms(arity_, dim_, std::move(t));
}

TensorElem TensorElem::operator-(const TensorElem& o) const { return *this + CycNum(-1) * o; }

TensorElem operator*(const CycNum& c, const TensorElem& x) {
  std::vector<std::pair<TensorElem::Key, CycNum>> t;
  for (const auto& [k, v] : x.terms()) t.emplace_back(k, c * v);
  return TensorElem::from_terms(x.arity(), x.dim(), std::move(t));
}

TensorElem TensorElem::pure(Index dim, const std::vector<AlgElem>& factors) {
  int n = static_cast<int>(factors.size());
  TensorElem r(n, dim);
  std::vector<std::pair<Key, CycNum>> out;
  std::vector<Index> idx(n);
  std::function<void(int, const CycNum&)> rec = [&](int s, const CycNum& c) {
    if (s == n) {
      out.emplace_back(r.pack(idx.data()), c);
      return;
    }
    for (const auto& [i, x] : factors[s].terms()) {
      idx[s] = i;
      rec(s + 1, s == 0 ? x : c * x);
    }
  };
  rec(0, CycNum(1));
  return from_terms(n, dim, std::move(out));
}

namespace {

using KeyMap = std::unordered_map<TensorElem::Key, CycNum>;

TensorElem from_map(int arity, Index dim, KeyMap& m) {
  std::vector<std::pair<TensorElem::Key, CycNum>> t;
  t.reserve(m.size());
  for (auto& [k, c] : m)
    if (!c.is_zero()) t.emplace_back(k, std::move(c));
  return TensorElem::from_terms(arity, dim, std::move(t));
}

void add_to(KeyMap& m, TensorElem::Key k, const CycNum& c) {
  auto [it, fresh] = m.try_emplace(k, c);
  if (!fresh) it->second += c;
}

// Expands the product of per-slot AlgElems into map entries.
void expand(const TensorElem& shape, const std::vector<const AlgElem*>& slots, const CycNum& c,
            KeyMap& out) {
  int n = shape.arity();
  std::vector<Index> idx(n);
  std::vector<CycNum> partial(n + 1);
  partial[0] = c;
  std::function<void(int)> rec = [&](int s) {
    if (s == n) {
      add_to(out, shape.pack(idx.data()), partial[n]);
      return;
    }
    for (const auto& [i, x] : slots[s]->terms()) {
      idx[s] = i;
      partial[s + 1] = partial[s] * x;
      rec(s + 1);
    }
  };
  rec(0);
}

}  // namespace

// ---------------------------------------------------------------- algebra

void finalize(HopfData& H) {
  H.antipode_inv_table.resize(H.dim);
  for (Index i = 0; i < H.dim; ++i)
    H.antipode_inv_table[i] = antipode(H, mul(H, {H.g_inv, AlgElem::basis(i), H.g}));
  std::vector<char> lam_nz(H.dim);
  for (Index k = 0; k < H.dim; ++k) lam_nz[k] = !H.lambda_row[k].is_zero();
  H.pairing.assign(H.dim, {});
  for (Index i = 0; i < H.dim; ++i)
    for (Index j = 0; j < H.dim; ++j) {
      CycNum s;
      bool any = false;
      for (const auto& [k, c] : H.mul_basis(i, j).terms())
        if (lam_nz[k]) {
          s += c * H.lambda_row[k];
          any = true;
        }
      if (any && !s.is_zero()) H.pairing[i].emplace_back(j, s);
    }
}

AlgElem mul(const HopfData& H, const AlgElem& a, const AlgElem& b) {
  if (a.is_zero() || b.is_zero()) return {};
  AlgAccumulator acc(H.dim);
  for (const auto& [i, x] : a.terms())
    for (const auto& [j, y] : b.terms()) {
      const AlgElem& prod = H.mul_basis(i, j);
      if (prod.is_zero()) continue;
      acc.add(prod, x * y);
    }
  return acc.take();
}

AlgElem mul(const HopfData& H, std::initializer_list<AlgElem> factors) {
  auto it = factors.begin();
  AlgElem r = *it++;
  for (; it != factors.end(); ++it) r = mul(H, r, *it);
  return r;
}

AlgElem antipode(const HopfData& H, const AlgElem& a) {
  AlgAccumulator acc(H.dim);
  for (const auto& [i, x] : a.terms()) acc.add(H.antipode_table[i], x);
  return acc.take();
}

AlgElem antipode_inv(const HopfData& H, const AlgElem& a) {
  AlgAccumulator acc(H.dim);
  for (const auto& [i, x] : a.terms()) acc.add(H.antipode_inv_table[i], x);
  return acc.take();
}

CycNum counit(const HopfData& H, const AlgElem& a) {
  CycNum s = H.zero();
  for (const auto& [i, x] : a.terms()) s += x * H.counit_table[i];
  return s;
}

CycNum lambda(const HopfData& H, const AlgElem& a) {
  CycNum s = H.zero();
  for (const auto& [i, x] : a.terms()) s += x * H.lambda_row[i];
  return s;
}

CycNum lambda_pair(const HopfData& H, const AlgElem& a, const AlgElem& b) {
  CycNum s = H.zero();
  for (const auto& [i, x] : a.terms()) {
    CycNum t;
    for (const auto& [j, val] : H.pairing[i]) {
      CycNum y = b.coeff(j);
      if (!y.is_zero()) t += y * val;
    }
    if (!t.is_zero()) s += x * t;
  }
  return s;
}

TensorElem comul(const HopfData& H, const AlgElem& a) {
  KeyMap m;
  for (const auto& [i, x] : a.terms())
    for (const auto& [k, c] : H.comul_table[i].terms()) add_to(m, k, x * c);
  return from_map(2, H.dim, m);
}

TensorElem comul_n(const HopfData& H, const AlgElem& a, int n) {
  if (n < 1) throw PreconditionError("comul_n: n must be >= 1");
  if (n == 1) return alg_to_tensor(a, H.dim);
  TensorElem t = comul(H, a);
  for (int k = 3; k <= n; ++k) t = tensor_comul(H, t, k - 2);
  return t;
}

AlgElem power(const HopfData& H, const AlgElem& a, int n) {
  if (n < 0) return power(H, inverse(H, a), -n);
  AlgElem r = H.unit;
  for (int k = 0; k < n; ++k) r = mul(H, r, a);
  return r;
}

AlgElem inverse(const HopfData& H, const AlgElem& a) {
  // Column j of left multiplication by a is a·e_j.
  std::vector<SparseRow> rows(H.dim);
  for (Index j = 0; j < H.dim; ++j) {
    AlgElem col = mul(H, a, AlgElem::basis(j));
    for (const auto& [i, c] : col.terms()) rows[i].emplace_back(j, c);
  }
  std::vector<CycNum> rhs(H.dim);
  for (const auto& [i, c] : H.unit.terms()) rhs[i] = c;
  auto x = solve_linear(rows, rhs, H.dim);
  if (!x) throw StructureError("element is not invertible");
  std::vector<std::pair<Index, CycNum>> t;
  for (Index j = 0; j < H.dim; ++j)
    if (!(*x)[j].is_zero()) t.emplace_back(j, (*x)[j]);
  AlgElem r = AlgElem::from_terms(std::move(t));
  if (mul(H, a, r) != H.unit) throw StructureError("element is not invertible");
  return r;
}

bool commutes_with_generators(const HopfData& H, const AlgElem& a) {
  for (const auto& gen : H.generators)
    if (mul(H, a, gen) != mul(H, gen, a)) return false;
  return true;
}

// ----------------------------------------------------------------- tensors

TensorElem tensor_mul(const HopfData& H, const TensorElem& x, const TensorElem& y) {
  if (x.arity() != y.arity()) throw PreconditionError("tensor_mul: arity mismatch");
  int n = x.arity();
  KeyMap m;
  std::vector<Index> ix(n), iy(n);
  std::vector<const AlgElem*> slots(n);
  for (const auto& [kx, cx] : x.terms()) {
    x.unpack(kx, ix.data());
    for (const auto& [ky, cy] : y.terms()) {
      y.unpack(ky, iy.data());
      bool zero = false;
      for (int s = 0; s < n && !zero; ++s) {
        slots[s] = &H.mul_basis(ix[s], iy[s]);
        zero = slots[s]->is_zero();
      }
      if (!zero) expand(x, slots, cx * cy, m);
    }
  }
  return from_map(n, H.dim, m);
}

TensorElem tensor_apply(const HopfData& H, const TensorElem& x, int slot,
                        const std::function<AlgElem(Index)>& f) {
  int n = x.arity();
  KeyMap m;
  std::vector<Index> idx(n);
  std::vector<AlgElem> cache(H.dim);
  std::vector<char> have(H.dim, 0);
  for (const auto& [k, c] : x.terms()) {
    x.unpack(k, idx.data());
    Index i = idx[slot];
    if (!have[i]) {
      cache[i] = f(i);
      have[i] = 1;
    }
    for (const auto& [j, y] : cache[i].terms()) {
      idx[slot] = j;
      add_to(m, x.pack(idx.data()), c * y);
    }
  }
  return from_map(n, H.dim, m);
}

TensorElem tensor_contract(const TensorElem& x, int slot, const std::function<CycNum(Index)>& f) {
  int n = x.arity();
  if (n < 2) throw PreconditionError("tensor_contract needs arity >= 2");
  TensorElem shape(n - 1, x.dim());
  KeyMap m;
  std::vector<Index> idx(n), out(n - 1);
  for (const auto& [k, c] : x.terms()) {
    x.unpack(k, idx.data());
    CycNum val = f(idx[slot]);
    if (val.is_zero()) continue;
    for (int s = 0, t = 0; s < n; ++s)
      if (s != slot) out[t++] = idx[s];
    add_to(m, shape.pack(out.data()), c * val);
  }
  return from_map(n - 1, x.dim(), m);
}

TensorElem tensor_comul(const HopfData& H, const TensorElem& x, int slot) {
  int n = x.arity();
  TensorElem shape(n + 1, H.dim);
  KeyMap m;
  std::vector<Index> idx(n), out(n + 1);
  std::vector<Index> pair(2);
  for (const auto& [k, c] : x.terms()) {
    x.unpack(k, idx.data());
    const TensorElem& d = H.comul_table[idx[slot]];
    for (const auto& [kd, cd] : d.terms()) {
      d.unpack(kd, pair.data());
      for (int s = 0, t = 0; s < n; ++s) {
        if (s == slot) {
          out[t++] = pair[0];
          out[t++] = pair[1];
        } else {
          out[t++] = idx[s];
        }
      }
      add_to(m, shape.pack(out.data()), c * cd);
    }
  }
  return from_map(n + 1, H.dim, m);
}

TensorElem tensor_permute(const TensorElem& x, const std::vector<int>& perm) {
  int n = x.arity();
  std::vector<std::pair<TensorElem::Key, CycNum>> t;
  std::vector<Index> idx(n), out(n);
  for (const auto& [k, c] : x.terms()) {
    x.unpack(k, idx.data());
    for (int s = 0; s < n; ++s) out[s] = idx[perm[s]];
    t.emplace_back(x.pack(out.data()), c);
  }
  return TensorElem::from_terms(n, x.dim(), std::move(t));
}

TensorElem tensor_embed(const HopfData& H, const TensorElem& x, int n, int k, int l) {
  TensorElem shape(n, H.dim);
  KeyMap m;
  std::vector<Index> pair(2), idx(n);
  std::vector<const AlgElem*> slots(n, &H.unit);
  std::vector<AlgElem> singles(2);
  for (const auto& [kx, c] : x.terms()) {
    x.unpack(kx, pair.data());
    singles[0] = AlgElem::basis(pair[0]);
    singles[1] = AlgElem::basis(pair[1]);
    slots.assign(n, &H.unit);
    slots[k] = &singles[0];
    slots[l] = &singles[1];
    expand(shape, slots, c, m);
  }
  return from_map(n, H.dim, m);
}

AlgElem tensor_to_alg(const TensorElem& x) {
  if (x.arity() != 1) throw PreconditionError("tensor_to_alg needs arity 1");
  std::vector<std::pair<Index, CycNum>> t;
  for (const auto& [k, c] : x.terms()) t.emplace_back(static_cast<Index>(k), c);
  return AlgElem::from_terms(std::move(t));
}

TensorElem alg_to_tensor(const AlgElem& a, Index dim) {
  std::vector<std::pair<TensorElem::Key, CycNum>> t;
  for (const auto& [i, c] : a.terms()) t.emplace_back(i, c);
  return TensorElem::from_terms(1, dim, std::move(t));
}

TensorElem r_matrix(const HopfData& H) {
  KeyMap m;
  TensorElem shape(2, H.dim);
  for (const auto& rt : H.R) {
    std::vector<const AlgElem*> slots{&rt.alpha, &rt.beta};
    expand(shape, slots, H.one(), m);
  }
  return from_map(2, H.dim, m);
}

RibbonElements ribbon_elements(const HopfData& H) {
  RibbonElements r;
  AlgElem u, tinv;
  for (const auto& rt : H.R) {
    AlgElem sb = antipode(H, rt.beta);
    u += mul(H, sb, rt.alpha);
    tinv += mul(H, rt.alpha, sb);
  }
  r.u = u;
  r.theta_inv = mul(H, tinv, H.g);
  AlgElem uinv;
  try {
    uinv = inverse(H, u);
  } catch (const StructureError&) {
    throw StructureError("Drinfeld element u is not invertible");
  }
  r.theta = mul(H, H.g, uinv);
  if (mul(H, r.theta, r.theta_inv) != H.unit)
    throw StructureError("theta * theta_inv != 1");
  return r;
}

AlgElem phi_solve(const HopfData& H, const std::vector<CycNum>& f) {
  if (f.size() != H.dim) throw PreconditionError("phi_solve: functional has wrong length");
  // Row b: sum_i x_i λ(e_i e_b) = f_b.
  std::vector<SparseRow> rows(H.dim);
  for (Index i = 0; i < H.dim; ++i)
    for (const auto& [b, val] : H.pairing[i]) rows[b].emplace_back(i, val);
  Echelon e(H.dim + 1);
  for (Index b = 0; b < H.dim; ++b) {
    SparseRow r = rows[b];
    if (!f[b].is_zero()) r.emplace_back(H.dim, f[b]);
    e.add(r);
  }
  if (e.pivot_row(H.dim) >= 0 || e.rank() != H.dim)
    throw StructureError("phi_solve: pairing a,b -> λ(ab) is singular");
  std::vector<CycNum> x(H.dim + 1);
  x[H.dim] = CycNum(-1);
  for (Index pc = H.dim; pc-- > 0;) {
    const auto& row = e.rows()[e.pivot_row(pc)];
    CycNum s;
    for (const auto& [c, a] : row)
      if (c != pc) s += a * x[c];
    x[pc] = -s;
  }
  std::vector<std::pair<Index, CycNum>> t;
  for (Index j = 0; j < H.dim; ++j)
    if (!x[j].is_zero()) t.emplace_back(j, x[j].with_p(H.p));
  return AlgElem::from_terms(std::move(t));
}

std::string format_elem(const HopfData& H, const AlgElem& a) {
  if (a.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [i, c] : a.terms()) {
    if (!first) os << " + ";
    first = false;
    os << "(" << c.str() << ")*" << H.labels[i];
  }
  return os.str();
}

}  // namespace hkr

namespace hkr {

AlgElem parse_elem(const HopfData& H, const std::string& raw) {
  std::string text;
  {
    std::istringstream in(raw);
    std::string line;
    while (std::getline(in, line)) {
      auto hash = line.find('#');
      if (hash != std::string::npos) line.resize(hash);
      text += line + "\n";
    }
  }
  std::unordered_map<std::string, Index> by_label;
  for (Index i = 0; i < H.dim; ++i) by_label.emplace(H.labels[i], i);
  AlgElem out;
  size_t k = 0;
  auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; };
  while (k < text.size()) {
    if (is_space(text[k]) || text[k] == '+') {
      ++k;
      continue;
    }
    if (text[k] == '0' && (k + 1 == text.size() || is_space(text[k + 1]))) {
      ++k;
      continue;
    }
    if (text[k] != '(') throw PreconditionError("element: expected '(' at offset " + std::to_string(k));
    int depth = 0;
    size_t close = k;
    for (; close < text.size(); ++close) {
      if (text[close] == '(') ++depth;
      if (text[close] == ')' && --depth == 0) break;
    }
    if (close >= text.size() || close + 1 >= text.size() || text[close + 1] != '*')
      throw PreconditionError("element: expected ')*LABEL' after offset " + std::to_string(k));
    CycNum c = CycNum::parse(H.p, text.substr(k + 1, close - k - 1));
    size_t end = close + 2;
    while (end < text.size() && !is_space(text[end])) ++end;
    std::string label = text.substr(close + 2, end - close - 2);
    auto it = by_label.find(label);
    if (it == by_label.end()) throw PreconditionError("element: unknown basis label '" + label + "'");
    out += AlgElem::basis(it->second, c);
    k = end;
  }
  return out;
}

}  // namespace hkr
