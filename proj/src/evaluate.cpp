#include "hkr/evaluate.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <map>
#include <memory>
#include <mutex>
#include <tuple>
#include <thread>
#include <unordered_map>

#include "hkr/errors.hpp"

namespace hkr {

using Key = TensorElem::Key;

Coloring uniform_coloring(const Diagram& D, const AlgElem& z, const AlgElem& w) {
  TraceResult T = trace(D);
  Coloring c;
  c.undotted.assign(T.n_closed, z);
  c.dotted.assign(T.dot_ids.size(), w);
  return c;
}

namespace {

// A bead deposited on one strand slot: multiplied on the left of the chain
// word when the strand points up, on the right when it points down.
struct Bead {
  int slot;
  AlgElem label;  // already S^{-1}-adjusted
};

struct Alternative {
  CycNum coef;
  std::vector<Bead> beads;
};

// Bead tables for crossings. For the label family L_i (one per R-term), a
// strand pointing down multiplies its chain word on the right by L_i and a
// strand pointing up on the left by S^{-1}(L_i). by_word[w] lists the
// nonzero (i, x, c) with product c e_x; by_word_label[w * n + i] the same
// products grouped by i.
enum Family { kAlpha, kSAlpha, kBeta };

struct BeadTable {
  size_t n = 0;
  std::vector<std::vector<std::tuple<uint32_t, Index, CycNum>>> by_word;
  std::vector<std::vector<std::pair<Index, CycNum>>> by_word_label;
};

const BeadTable& bead_table(const HopfData& H, Family fam, bool up) {
  using CacheKey = std::tuple<std::string, int, Index, int, bool>;
  static std::mutex mu;
  static std::map<CacheKey, std::unique_ptr<BeadTable>> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = cache[CacheKey{H.name, H.p, H.dim, fam, up}];
  if (slot) return *slot;
  auto t = std::make_unique<BeadTable>();
  t->n = H.R.size();
  t->by_word.resize(H.dim);
  t->by_word_label.resize(size_t(H.dim) * t->n);
  for (size_t i = 0; i < t->n; ++i) {
    AlgElem L = fam == kAlpha ? H.R[i].alpha : fam == kBeta ? H.R[i].beta : antipode(H, H.R[i].alpha);
    if (up) L = antipode_inv(H, L);
    for (Index w = 0; w < H.dim; ++w) {
      AlgElem prod = up ? mul(H, L, AlgElem::basis(w, H.one())) : mul(H, AlgElem::basis(w, H.one()), L);
      for (const auto& [x, c] : prod.terms()) {
        t->by_word[w].emplace_back(static_cast<uint32_t>(i), x, c);
        t->by_word_label[size_t(w) * t->n + i].emplace_back(x, c);
      }
    }
  }
  slot = std::move(t);
  return *slot;
}

// Dense x -> λ(a e_x).
std::vector<CycNum> functional(const HopfData& H, const AlgElem& a) {
  std::vector<CycNum> f(H.dim);
  for (const auto& [i, c] : a.terms())
    for (const auto& [x, val] : H.pairing[i]) f[x] += c * val;
  return f;
}

void require_colors(const HopfData& H, const TraceResult& T, const Coloring& col) {
  if (col.undotted.size() < static_cast<size_t>(T.n_closed))
    throw PreconditionError("evaluate: missing colors for undotted components");
  if (col.dotted.size() < T.dot_ids.size()) throw PreconditionError("evaluate: missing colors for dotted components");
  for (const auto& z : col.undotted) require_central(H, z, "evaluate (undotted color)");
  for (const auto& w : col.dotted) require_central(H, w, "evaluate (dotted color)");
}

int dot_index(const TraceResult& T, int id) {
  return static_cast<int>(std::lower_bound(T.dot_ids.begin(), T.dot_ids.end(), id) - T.dot_ids.begin());
}

// ------------------------------------------------------------------ slice engine

class SliceEngine {
 public:
  SliceEngine(const HopfData& H, const Diagram& D, const TraceResult& T, const Coloring& col, int jobs)
      : H_(H), D_(D), T_(T), col_(col), jobs_(std::max(1, jobs)) {
    terms_.emplace_back(0, H.one());
  }

  EvalResult run() {
    for (int i = 0; i < T_.widths[0]; ++i) {
      int c = new_chain(H_.unit, T_.comp_at[0][i]);
      pos_chain_.push_back(c);
    }
    for (size_t r = 0; r < D_.rows.size(); ++r) step(static_cast<int>(r));
    return finish();
  }

 private:
  struct Chain {
    int tslot;
    int comp;
  };

  const HopfData& H_;
  const Diagram& D_;
  const TraceResult& T_;
  const Coloring& col_;
  int jobs_;
  int arity_ = 0;
  std::vector<std::pair<Key, CycNum>> terms_;
  std::vector<Chain> chains_;
  std::vector<int> pos_chain_;  // chain id per strand slot

  void check_width() const {
    double bits = (arity_ + 1) * std::log2(static_cast<double>(H_.dim));
    if (bits > 63 || arity_ + 1 > 16) throw PreconditionError("evaluate: too many open chains for the slice engine");
  }

  void unpack(Key k, std::vector<Index>& idx) const {
    idx.resize(arity_);
    for (int s = arity_ - 1; s >= 0; --s) {
      idx[s] = static_cast<Index>(k % H_.dim);
      k /= H_.dim;
    }
  }

  Key pack(const std::vector<Index>& idx) const {
    Key k = 0;
    for (Index i : idx) k = k * H_.dim + i;
    return k;
  }

  void set_terms(std::unordered_map<Key, CycNum>& acc) {
    terms_.clear();
    terms_.reserve(acc.size());
    for (auto& [k, c] : acc)
      if (!c.is_zero()) terms_.emplace_back(k, std::move(c));
    std::sort(terms_.begin(), terms_.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  }

  // Runs f(idx, coef, out) over all terms, in parallel chunks.
  template <class F>
  void transform(F f) {
    const size_t n = terms_.size();
    int jobs = n < 256 ? 1 : jobs_;
    std::vector<std::unordered_map<Key, CycNum>> parts(jobs);
    auto work = [&](int j) {
      std::vector<Index> idx;
      for (size_t t = j; t < n; t += jobs) {
        unpack(terms_[t].first, idx);
        f(idx, terms_[t].second, parts[j]);
      }
    };
    if (jobs == 1) {
      work(0);
    } else {
      std::vector<std::thread> th;
      for (int j = 0; j < jobs; ++j) th.emplace_back(work, j);
      for (auto& t : th) t.join();
      for (int j = 1; j < jobs; ++j)
        for (auto& [k, c] : parts[j]) parts[0][k] += c;
    }
    set_terms(parts[0]);
  }

  int new_chain(const AlgElem& word, int comp) {
    check_width();
    int id = static_cast<int>(chains_.size());
    chains_.push_back({arity_, comp});
    auto old = std::move(terms_);
    terms_.clear();
    for (const auto& [k, c] : old)
      for (const auto& [i, d] : word.terms()) terms_.emplace_back(k * H_.dim + i, c * d);
    ++arity_;
    std::sort(terms_.begin(), terms_.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    return id;
  }

  void remove_tslot(int t) {
    for (auto& ch : chains_)
      if (ch.tslot > t) --ch.tslot;
    --arity_;
  }

  bool down(int row, int pos) const { return T_.down_at[row][pos]; }

  // Applies each alternative's beads; bead slots are strand positions at
  // boundary `row`.
  void apply(int row, const std::vector<Alternative>& alts) {
    struct PBead {
      int ts;
      bool left;
      const AlgElem* label;
    };
    struct Prepared {
      const CycNum* coef;
      bool unit;
      std::vector<PBead> beads;
    };
    std::vector<Prepared> prep;
    for (const auto& a : alts) {
      Prepared p{&a.coef, a.coef.is_one(), {}};
      for (const auto& b : a.beads) p.beads.push_back({chains_[pos_chain_[b.slot]].tslot, !down(row, b.slot), &b.label});
      prep.push_back(std::move(p));
    }
    transform([&](std::vector<Index>& idx, const CycNum& coef, std::unordered_map<Key, CycNum>& out) {
      Word w;
      std::copy(idx.begin(), idx.end(), w.begin());
      for (const auto& p : prep) descend(p.beads, 0, w, coef, *p.coef, p.unit, out);
    });
  }

  using Word = std::array<Index, 16>;

  // Multiplies in beads[k..] one at a time; coefficients are only formed
  // for nonzero partial products.
  template <class Bs>
  void descend(const Bs& beads, size_t k, Word& w, const CycNum& c, const CycNum& tail, bool unit_tail,
               std::unordered_map<Key, CycNum>& out) const {
    if (k == beads.size()) {
      Key key = 0;
      for (int s = 0; s < arity_; ++s) key = key * H_.dim + w[s];
      if (unit_tail)
        out[key] += c;
      else
        out[key] += c * tail;
      return;
    }
    const auto& b = beads[k];
    const Index old = w[b.ts];
    for (const auto& [l, lc] : b.label->terms()) {
      const AlgElem& prod = b.left ? H_.mul_basis(l, old) : H_.mul_basis(old, l);
      for (const auto& [x, xc] : prod.terms()) {
        w[b.ts] = x;
        descend(beads, k + 1, w, c * (lc.is_one() ? xc : lc * xc), tail, unit_tail, out);
      }
    }
    w[b.ts] = old;
  }

  void step(int r) {
    const Event& e = D_.rows[r];
    const int P = e.pos;
    switch (e.kind) {
      case EventKind::Cup: {
        bool left_down = down(r + 1, P);
        int c = new_chain(left_down ? H_.g_inv : H_.unit, T_.comp_at[r + 1][P]);
        pos_chain_.insert(pos_chain_.begin() + P, {c, c});
        break;
      }
      case EventKind::Cap:
        cap(r, P);
        break;
      case EventKind::CrossPos:
      case EventKind::CrossNeg: {
        cross(r, P, e.kind);
        std::swap(pos_chain_[P], pos_chain_[P + 1]);
        break;
      }
      case EventKind::Dot: {
        const AlgElem& w = col_.dotted[dot_index(T_, e.id)];
        int t = e.hi - e.pos + 1;
        if (t == 0) {
          CycNum eps = counit(H_, w);
          for (auto& [k, c] : terms_) c *= eps;
          terms_.erase(std::remove_if(terms_.begin(), terms_.end(), [](const auto& x) { return x.second.is_zero(); }),
                       terms_.end());
          break;
        }
        TensorElem dw = comul_n(H_, w, t);
        std::vector<Alternative> alts;
        for (const auto& [k, c] : dw.terms()) {
          auto legs = dw.unpack(k);
          Alternative a{c, {}};
          for (int i = 0; i < t; ++i) {
            AlgElem l = AlgElem::basis(legs[t - 1 - i], H_.one());
            if (!down(r, P + i)) l = antipode_inv(H_, l);
            a.beads.push_back({P + i, std::move(l)});
          }
          alts.push_back(std::move(a));
        }
        apply(r, alts);
        break;
      }
      case EventKind::Base:
        break;
    }
  }

  // x+: the left strand passes under and gets α_i, the right one β_i.
  // x-: the left strand passes over and gets β_i, the right one S(α_i).
  void cross(int r, int P, EventKind kind) {
    bool pos = kind == EventKind::CrossPos;
    const BeadTable& A = bead_table(H_, pos ? kAlpha : kBeta, !down(r, P));
    const BeadTable& B = bead_table(H_, pos ? kBeta : kSAlpha, !down(r, P + 1));
    const int ta = chains_[pos_chain_[P]].tslot, tb = chains_[pos_chain_[P + 1]].tslot;
    transform([&](std::vector<Index>& idx, const CycNum& coef, std::unordered_map<Key, CycNum>& out) {
      const Index wa = idx[ta];
      for (const auto& [i, x, c1] : A.by_word[wa]) {
        idx[ta] = x;
        const Index wb = idx[tb];
        const auto& list = B.by_word_label[size_t(wb) * B.n + i];
        if (!list.empty()) {
          CycNum c = coef * c1;
          for (const auto& [y, c2] : list) {
            idx[tb] = y;
            out[pack(idx)] += c * c2;
          }
          idx[tb] = wb;
        }
        idx[ta] = wa;
      }
    });
  }

  void cap(int r, int P) {
    int c1 = pos_chain_[P], c2 = pos_chain_[P + 1];
    bool left_down = down(r, P);
    pos_chain_.erase(pos_chain_.begin() + P, pos_chain_.begin() + P + 2);
    if (c1 == c2) {
      // Closing: λ(g z W), or λ(g z W g) = λ(g² z W) after a right-to-left minimum.
      const AlgElem& z = col_.undotted[chains_[c1].comp];
      AlgElem a = mul(H_, H_.g, z);
      if (!left_down) a = mul(H_, H_.g, a);
      auto f = functional(H_, a);
      int ts = chains_[c1].tslot;
      transform([&](std::vector<Index>& idx, const CycNum& coef, std::unordered_map<Key, CycNum>& out) {
        const CycNum& v = f[idx[ts]];
        if (v.is_zero()) return;
        idx.erase(idx.begin() + ts);
        out[pack_short(idx)] += coef * v;
      });
      remove_tslot(ts);
      chains_[c1].tslot = -1;
      return;
    }
    // Merge: W1 W2 for a left-to-right minimum, W2 g W1 otherwise.
    int t1 = chains_[c1].tslot, t2 = chains_[c2].tslot;
    const AlgElem& g = H_.g;
    transform([&](std::vector<Index>& idx, const CycNum& coef, std::unordered_map<Key, CycNum>& out) {
      Index w1 = idx[t1], w2 = idx[t2];
      idx.erase(idx.begin() + t2);
      int keep = t1 > t2 ? t1 - 1 : t1;
      auto emit = [&](const AlgElem& prod, const CycNum& c) {
        for (const auto& [x, xc] : prod.terms()) {
          idx[keep] = x;
          out[pack_short(idx)] += c * xc;
        }
      };
      if (left_down) {
        emit(H_.mul_basis(w1, w2), coef);
      } else {
        for (const auto& [gi, gc] : g.terms())
          for (const auto& [y, yc] : H_.mul_basis(w2, gi).terms()) emit(H_.mul_basis(y, w1), coef * gc * yc);
      }
    });
    // A chain keeps its component; merged chains of one component agree.
    remove_tslot(t2);
    chains_[c2].tslot = -1;
    for (int& pc : pos_chain_)
      if (pc == c2) pc = c1;
  }

  // pack() for a vector one shorter than the current arity.
  Key pack_short(const std::vector<Index>& idx) const {
    Key k = 0;
    for (Index i : idx) k = k * H_.dim + i;
    return k;
  }

  EvalResult finish() {
    EvalResult res;
    if (arity_ == 0) {
      res.closed = true;
      res.value = terms_.empty() ? H_.zero() : terms_.front().second.with_p(H_.p);
      return res;
    }
    res.closed = false;
    std::vector<std::pair<int, int>> order;  // (component, tslot)
    for (const auto& ch : chains_)
      if (ch.tslot >= 0) order.emplace_back(ch.comp, ch.tslot);
    std::sort(order.begin(), order.end());
    std::vector<int> perm;
    for (auto& [comp, ts] : order) perm.push_back(ts);
    TensorElem t = TensorElem::from_terms(arity_, H_.dim, terms_);
    res.tensor = tensor_permute(t, perm);
    return res;
  }
};

// ------------------------------------------------------------------ summation oracle

class SummationEngine {
 public:
  SummationEngine(const HopfData& H, const Diagram& D, const TraceResult& T, const Coloring& col, int jobs)
      : H_(H), D_(D), T_(T), col_(col), jobs_(std::max(1, jobs)) {}

  CycNum run() {
    if (D_.top != 0 || T_.widths.back() != 0) throw PreconditionError("summation backend: closed diagrams only");
    for (const auto& r : H_.R) S_alpha_.push_back(antipode(H_, r.alpha));
    CycNum scalar = H_.one();
    for (size_t r = 0; r < D_.rows.size(); ++r) {
      const Event& e = D_.rows[r];
      if (e.kind == EventKind::CrossPos || e.kind == EventKind::CrossNeg) {
        choice_of_row_[r] = static_cast<int>(sizes_.size());
        sizes_.push_back(H_.R.size());
      } else if (e.kind == EventKind::Dot) {
        const AlgElem& w = col_.dotted[dot_index(T_, e.id)];
        int t = e.hi - e.pos + 1;
        if (t == 0) {
          scalar *= counit(H_, w);
          continue;
        }
        TensorElem dw = comul_n(H_, w, t);
        std::vector<std::pair<std::vector<Index>, CycNum>> legs;
        for (const auto& [k, c] : dw.terms()) legs.emplace_back(dw.unpack(k), c);
        choice_of_row_[r] = static_cast<int>(sizes_.size());
        sizes_.push_back(legs.size());
        dot_legs_[r] = std::move(legs);
      }
    }
    if (scalar.is_zero()) return H_.zero();
    for (int c = 0; c < T_.n_closed; ++c)
      closers_.push_back(functional(H_, mul(H_, H_.g, col_.undotted[c])));
    if (sizes_.empty()) return scalar * leaf({});
    std::vector<CycNum> part(jobs_, H_.zero());
    auto work = [&](int j) {
      std::vector<size_t> ch(sizes_.size(), 0);
      for (size_t first = j; first < sizes_[0]; first += jobs_) {
        ch[0] = first;
        part[j] += enumerate(ch, 1);
      }
    };
    if (jobs_ == 1) {
      work(0);
    } else {
      std::vector<std::thread> th;
      for (int j = 0; j < jobs_; ++j) th.emplace_back(work, j);
      for (auto& t : th) t.join();
    }
    CycNum total = H_.zero();
    for (const auto& x : part) total += x;
    return (scalar * total).with_p(H_.p);
  }

 private:
  const HopfData& H_;
  const Diagram& D_;
  const TraceResult& T_;
  const Coloring& col_;
  int jobs_;
  std::vector<AlgElem> S_alpha_;
  std::vector<size_t> sizes_;
  std::map<size_t, int> choice_of_row_;
  std::map<size_t, std::vector<std::pair<std::vector<Index>, CycNum>>> dot_legs_;
  std::vector<std::vector<CycNum>> closers_;

  CycNum enumerate(std::vector<size_t>& ch, size_t k) {
    if (k == ch.size()) return leaf(ch);
    CycNum s = H_.zero();
    for (size_t i = 0; i < sizes_[k]; ++i) {
      ch[k] = i;
      s += enumerate(ch, k + 1);
    }
    return s;
  }

  CycNum leaf(const std::vector<size_t>& ch) {
    CycNum coef = H_.one();
    for (const auto& [row, legs] : dot_legs_) coef *= legs[ch[choice_of_row_.at(row)]].second;
    for (int c = 0; c < T_.n_closed; ++c) {
      AlgElem w = H_.unit;
      for (const auto& v : T_.components[c].visits) {
        AlgElem label;
        bool has = true;
        switch (v.kind) {
          case Visit::Over:
          case Visit::Under: {
            size_t i = ch[choice_of_row_.at(v.row)];
            const Event& e = D_.rows[v.row];
            if (v.kind == Visit::Over)
              label = H_.R[i].beta;
            else
              label = e.kind == EventKind::CrossPos ? H_.R[i].alpha : S_alpha_[i];
            break;
          }
          case Visit::DotLeg: {
            const auto& legs = dot_legs_.at(v.row)[ch[choice_of_row_.at(v.row)]].first;
            label = AlgElem::basis(legs[legs.size() - 1 - v.index], H_.one());
            break;
          }
          case Visit::Max:
            has = !v.left_to_right;
            label = H_.g_inv;
            break;
          case Visit::Min:
            has = !v.left_to_right;
            label = H_.g;
            break;
        }
        if (!has) continue;
        bool vertical = v.kind == Visit::Over || v.kind == Visit::Under || v.kind == Visit::DotLeg;
        if (vertical && !v.down) label = antipode_inv(H_, label);
        w = mul(H_, w, label);
        if (w.is_zero()) return H_.zero();
      }
      CycNum val;
      for (const auto& [x, cx] : w.terms()) val += cx * closers_[c][x];
      coef *= val;
      if (coef.is_zero()) return H_.zero();
    }
    return coef;
  }
};

}  // namespace

EvalResult evaluate(const HopfData& H, const Diagram& D, const Coloring& col, Backend backend, int jobs) {
  TraceResult T = trace(D);
  require_colors(H, T, col);
  if (backend == Backend::Summation) {
    EvalResult r;
    r.value = SummationEngine(H, D, T, col, jobs).run();
    return r;
  }
  return SliceEngine(H, D, T, col, jobs).run();
}

CycNum invariant(const CenterContext& ctx, const Diagram& D, const AlgElem& z, const std::optional<AlgElem>& w,
                 int jobs) {
  TraceReport rep = classify_trace_element(ctx, z);
  if (!rep.in_T4) throw PreconditionError("invariant: trace element is not in T4");
  AlgElem wit = w ? *w : rep.witness;
  if (w && !class_equal(ctx.center, mul(*ctx.H, z, *w), ctx.H->Lambda))
    throw PreconditionError("invariant: [z w] != [Lambda]");
  auto res = evaluate(*ctx.H, D, uniform_coloring(D, z, wit), Backend::Slice, jobs);
  if (!res.closed) throw PreconditionError("invariant: open tangle");
  return res.value;
}

BoundaryValue boundary_invariant(const CenterContext& ctx, const Diagram& D, const AlgElem& z, int jobs) {
  TraceReport rep = classify_trace_element(ctx, z);
  if (!rep.in_T3) throw PreconditionError("boundary_invariant: trace element is not in T3");
  BoundaryValue b;
  b.raw = invariant(ctx, D, z, rep.witness, jobs);
  LinkingData L = linking_data(D);
  b.C_plus = rep.C_plus;
  b.C_minus = rep.C_minus;
  b.exp_plus = L.n_dotted - L.sigma_plus;
  b.exp_minus = L.n_dotted - L.sigma_minus;
  auto pw = [&](const CycNum& x, int e) {
    CycNum r = ctx.H->one();
    CycNum base = e < 0 ? x.inverse() : x;
    for (int i = 0; i < std::abs(e); ++i) r *= base;
    return r;
  };
  b.value = (pw(b.C_plus, b.exp_plus) * pw(b.C_minus, b.exp_minus) * b.raw).with_p(ctx.H->p);
  return b;
}

}  // namespace hkr
