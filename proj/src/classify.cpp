#include <algorithm>

#include "hkr/center.hpp"
#include "hkr/errors.hpp"
#include "hkr/uqsl2.hpp"

namespace hkr {

CenterContext make_context(HopfPtr H) {
  CenterContext ctx{H, ribbon_elements(*H), compute_center(H), std::nullopt};
  if (is_uqsl2(*H)) {
    ctx.kerler = kerler_basis(*H);
    const auto& K = *ctx.kerler;
    std::vector<AlgElem> reps;
    std::vector<std::string> names;
    for (int j = 0; j < K.q; ++j) {
      reps.push_back(K.P[j]);
      names.push_back("P" + std::to_string(j));
    }
    for (int j = 0; j < K.q; ++j) {
      reps.push_back(K.Ndot_minus[j]);
      names.push_back("Nd" + std::to_string(j) + "-");
    }
    set_class_basis(ctx.center, std::move(reps), std::move(names));
  }
  return ctx;
}

AlgElem named_trace_element(const CenterContext& ctx, const std::string& name) {
  const HopfData& H = *ctx.H;
  if (name == "one") return H.unit;
  if (name == "lambda") return H.Lambda;
  if (ctx.kerler) {
    const auto& K = *ctx.kerler;
    if (name == "p0") return K.P[0];
    if (name == "zrt") {
      AlgElem z;
      for (int j = 0; j < K.q; ++j) z += qint(H.p, 2 * j + 1) * K.Ndot_minus[j];
      return z;
    }
  }
  throw PreconditionError("unknown trace element '" + name + "'");
}

bool in_TZ(const CenterContext& ctx, const AlgElem& z) {
  const HopfData& H = *ctx.H;
  require_central(H, z, "in_TZ");
  const auto& E = ctx.center.elements;
  std::vector<AlgElem> zE;
  for (const auto& e : E) zE.push_back(mul(H, z, e));
  // λ(zc((bz)⋆a)) = λ(zc(b⋆(za))) for all basis triples.
  for (size_t a = 0; a < E.size(); ++a)
    for (size_t b = 0; b < E.size(); ++b) {
      AlgElem u = star(H, zE[b], E[a]) - star(H, E[b], zE[a]);
      if (u.is_zero()) continue;
      for (size_t c = 0; c < E.size(); ++c)
        if (!lambda_pair(H, zE[c], u).is_zero()) return false;
    }
  return true;
}

std::optional<AlgElem> t4_witness(const CenterContext& ctx, const AlgElem& z) {
  const auto& C = ctx.center;
  const HopfData& H = *ctx.H;
  size_t d = C.dim_Zhat();
  std::vector<SparseRow> rows(d);
  for (size_t i = 0; i < d; ++i) {
    auto col = class_coords(C, mul(H, z, C.class_basis[i]));
    for (size_t r = 0; r < d; ++r)
      if (!col[r].is_zero()) rows[r].emplace_back(static_cast<uint32_t>(i), col[r]);
  }
  auto x = solve_linear(rows, class_coords(C, H.Lambda), static_cast<uint32_t>(d));
  if (!x) return std::nullopt;
  for (auto& c : *x) c = c.with_p(H.p);
  return class_rep(C, *x);
}

namespace {

// Solves [z1 · y] = [z] for [z1].
std::optional<AlgElem> solve_left_factor(const CenterContext& ctx, const AlgElem& y, const AlgElem& z) {
  const auto& C = ctx.center;
  size_t d = C.dim_Zhat();
  std::vector<SparseRow> rows(d);
  for (size_t i = 0; i < d; ++i) {
    auto col = class_coords(C, mul(*ctx.H, C.class_basis[i], y));
    for (size_t r = 0; r < d; ++r)
      if (!col[r].is_zero()) rows[r].emplace_back(static_cast<uint32_t>(i), col[r]);
  }
  auto x = solve_linear(rows, class_coords(C, z), static_cast<uint32_t>(d));
  if (!x) return std::nullopt;
  for (auto& c : *x) c = c.with_p(ctx.H->p);
  return class_rep(C, *x);
}

bool delta_vanishes(const CenterContext& ctx, const AlgElem& w, const AlgElem& z) {
  const auto& E = ctx.center.elements;
  for (const auto& a : E)
    for (const auto& b : E)
      for (const auto& c : E)
        if (!delta_pairing(*ctx.H, w, z, a, b, c).is_zero()) return false;
  return true;
}

}  // namespace

TraceReport classify_trace_element(const CenterContext& ctx, const AlgElem& z, bool search_T2) {
  const HopfData& H = *ctx.H;
  require_central(H, z, "classify_trace_element");
  TraceReport r;
  r.coords = class_coords(ctx.center, z);
  r.C_plus = lambda(H, mul(H, z, ctx.ribbon.theta));
  r.C_minus = lambda(H, mul(H, z, ctx.ribbon.theta_inv));
  r.in_TZ = in_TZ(ctx, z);
  // 𝒯⁴ needs [z] ∈ 𝒯; only the 𝒯_Z predicate is decidable here.
  if (r.in_TZ) {
    if (auto w = t4_witness(ctx, z)) {
      r.in_T4 = true;
      r.witness = *w;
    }
  }
  r.X_z = H.zero();
  auto lam = class_coords(ctx.center, H.Lambda);
  auto zj = class_coords(ctx.center, mul(H, z, J(H, z)));
  size_t piv = 0;
  while (lam[piv].is_zero()) ++piv;
  CycNum x = zj[piv] * lam[piv].inverse();
  bool proportional = true;
  for (size_t i = 0; i < lam.size(); ++i)
    if (zj[i] != x * lam[i]) proportional = false;
  if (proportional) r.X_z = x;
  r.in_T3 = r.in_T4 && proportional && !x.is_zero();

  if (search_T2 && r.in_T4) {
    std::vector<std::pair<std::string, AlgElem>> catalog;
    if (ctx.kerler) {
      for (const char* nm : {"one", "lambda", "p0", "zrt"}) catalog.emplace_back(nm, named_trace_element(ctx, nm));
    } else {
      catalog.emplace_back("one", H.unit);
      catalog.emplace_back("lambda", H.Lambda);
    }
    for (size_t i = 0; i < ctx.center.dim_Zhat(); ++i)
      catalog.emplace_back(ctx.center.class_names[i], ctx.center.class_basis[i]);
    size_t base = catalog.size();
    for (size_t i = 0; i < base; ++i) catalog.emplace_back("J(" + catalog[i].first + ")", J(H, catalog[i].second));
    r.t2_witness = "no witness in catalog";
    for (const auto& [nm, z2] : catalog) {
      auto z1 = solve_left_factor(ctx, J(H, z2), z);
      if (!z1) continue;
      if (delta_vanishes(ctx, *z1, z2)) {
        r.in_T2 = true;
        r.t2_witness = "z2 = " + nm;
        break;
      }
    }
  }
  return r;
}

std::vector<std::vector<int>> fusion_closed_subsets(int p) {
  const int q = (p - 1) / 2;
  std::vector<std::vector<int>> out;
  for (unsigned mask = 1; mask < (1u << q); mask += 2) {
    auto in = [&](int i) { return (mask >> i) & 1u; };
    bool closed = true;
    for (int i = 0; i < q && closed; ++i)
      for (int j = 0; j < q && closed; ++j)
        for (int k = 0; k < q && closed; ++k)
          if (fusion_rule(p, i, j, k) && in(i) + in(j) + in(k) == 2) closed = false;
    if (!closed) continue;
    std::vector<int> s;
    for (int i = 0; i < q; ++i)
      if (in(i)) s.push_back(i);
    out.push_back(s);
  }
  return out;
}

std::vector<TZRay> enumerate_TZ(const CenterContext& ctx) {
  if (!ctx.kerler) throw PreconditionError("enumerate_TZ requires the quantum sl(2)");
  const HopfData& H = *ctx.H;
  const auto& K = *ctx.kerler;
  auto subsets = fusion_closed_subsets(H.p);
  CycNum lam0 = lambda(H, K.Ndot_minus[0]);
  std::vector<TZRay> rays;
  auto label = [&](const std::vector<int>& I, const char* full, const char* single, const char* pre) {
    if (static_cast<int>(I.size()) == K.q) return std::string(full);
    if (I.size() == 1) return std::string(single);
    std::string s = pre;
    for (int i : I) s += std::to_string(i);
    return s;
  };
  for (const auto& I : subsets) {
    AlgElem z;
    for (int i : I) z += K.P[i];
    rays.push_back({label(I, "[1]", "[P_0]", "P_"), z, {}});
  }
  for (const auto& I : subsets) {
    AlgElem z;
    for (int i : I) z += (lambda(H, K.Ndot_minus[i]) * lam0.inverse()) * K.Ndot_minus[i];
    rays.push_back({label(I, "z_RT", "[Lambda]", "N_"), z, {}});
  }
  for (auto& r : rays) {
    if (!in_TZ(ctx, r.rep)) throw ConsistencyError("enumerated ray " + r.name + " fails the T_Z predicate");
    r.coords = class_coords(ctx.center, r.rep);
  }
  return rays;
}

}  // namespace hkr
