#include <iomanip>
#include <random>
#include <set>
#include <sstream>

#include "hkr/errors.hpp"
#include "hkr/hopf.hpp"

namespace hkr {

namespace {

class Checker {
 public:
  explicit Checker(AxiomReport& rep) : rep_(rep) {}

  AxiomResult& get(const std::string& name) {
    for (auto& r : rep_.results)
      if (r.name == name) return r;
    rep_.results.push_back({name, true, 0, ""});
    return rep_.results.back();
  }

  void check(const std::string& name, bool ok, const std::function<std::string()>& where) {
    AxiomResult& r = get(name);
    ++r.checked;
    if (!ok && r.pass) {
      r.pass = false;
      r.counterexample = where();
    }
  }

 private:
  AxiomReport& rep_;
};

TensorElem swap12(const TensorElem& x) { return tensor_permute(x, {1, 0}); }

}  // namespace

bool AxiomReport::all_pass() const {
  for (const auto& r : results)
    if (!r.pass) return false;
  return true;
}

std::string AxiomReport::str() const {
  std::ostringstream os;
  for (const auto& r : results) {
    os << std::left << std::setw(52) << r.name << " " << (r.pass ? "PASS" : "FAIL") << "  checked="
       << r.checked;
    if (!r.pass) os << "  counterexample: " << r.counterexample;
    os << "\n";
  }
  return os.str();
}

AxiomReport axiom_report(const HopfData& H, const AxiomOptions& opts) {
  AxiomReport rep;
  Checker ck(rep);
  const Index dim = H.dim;
  auto e = [&](Index i) { return AlgElem::basis(i, H.one()); };
  auto lbl = [&](Index i) { return H.labels[i]; };
  std::mt19937_64 rng(opts.seed);
  std::uniform_int_distribution<Index> pick(0, dim - 1);

  // Basis elements that occur in the algebra generators are always checked.
  std::set<Index> gen_basis;
  for (const auto& gen : H.generators)
    for (const auto& [i, c] : gen.terms()) gen_basis.insert(i);

  std::vector<Index> unary;
  if (opts.all || static_cast<int>(dim) <= opts.samples) {
    for (Index i = 0; i < dim; ++i) unary.push_back(i);
  } else {
    std::set<Index> s = gen_basis;
    while (static_cast<int>(s.size()) < opts.samples + static_cast<int>(gen_basis.size()))
      s.insert(pick(rng));
    unary.assign(s.begin(), s.end());
  }

  std::vector<std::pair<Index, Index>> pairs;
  if (opts.all) {
    for (Index i = 0; i < dim; ++i)
      for (Index j = 0; j < dim; ++j) pairs.emplace_back(i, j);
  } else {
    for (Index i : gen_basis)
      for (Index j : gen_basis) pairs.emplace_back(i, j);
    for (int k = 0; k < opts.samples; ++k) pairs.emplace_back(pick(rng), pick(rng));
  }

  auto ribbon = ribbon_elements(H);
  TensorElem R = r_matrix(H);
  TensorElem R21 = swap12(R);
  TensorElem R21R = tensor_mul(H, R21, R);
  TensorElem one2 = TensorElem::pure(dim, {H.unit, H.unit});

  // ---- unary
  for (Index i : unary) {
    AlgElem a = e(i);
    auto where = [&] { return lbl(i); };
    ck.check("unit", mul(H, H.unit, a) == a && mul(H, a, H.unit) == a, where);
    TensorElem d = H.comul_table[i];
    AlgElem left = tensor_to_alg(tensor_contract(d, 0, [&](Index k) { return H.counit_table[k]; }));
    AlgElem right = tensor_to_alg(tensor_contract(d, 1, [&](Index k) { return H.counit_table[k]; }));
    ck.check("counit", left == a && right == a, where);
    ck.check("coassociativity", tensor_comul(H, d, 0) == tensor_comul(H, d, 1), where);
    AlgElem sl, sr;
    for (const auto& [k, c] : d.terms()) {
      Index x = static_cast<Index>(k / dim), y = static_cast<Index>(k % dim);
      sl += c * mul(H, H.antipode_table[x], e(y));
      sr += c * mul(H, e(x), H.antipode_table[y]);
    }
    AlgElem eps1 = H.counit_table[i] * H.unit;
    ck.check("antipode", sl == eps1 && sr == eps1, where);
    TensorElem ds = comul(H, H.antipode_table[i]);
    TensorElem ssd = swap12(tensor_apply(H, tensor_apply(H, d, 0, [&](Index k) { return H.antipode_table[k]; }),
                                         1, [&](Index k) { return H.antipode_table[k]; }));
    ck.check("antipode coproduct T(SxS)D = DS", ds == ssd, where);
    AlgElem rint = tensor_to_alg(tensor_contract(d, 0, [&](Index k) { return H.lambda_row[k]; }));
    ck.check("right integral law", rint == H.lambda_row[i] * H.unit, where);
    AlgElem lint = tensor_to_alg(tensor_contract(d, 1, [&](Index k) { return lambda(H, H.antipode_table[k]); }));
    ck.check("left integral law for lambda o S", lint == lambda(H, H.antipode_table[i]) * H.unit, where);
    AlgElem eL = H.counit_table[i] * H.Lambda;
    ck.check("Lambda two-sided integral", mul(H, a, H.Lambda) == eL && mul(H, H.Lambda, a) == eL, where);
    AlgElem s2 = antipode(H, H.antipode_table[i]);
    ck.check("S^2(a) = g a g^-1", s2 == mul(H, {H.g, a, H.g_inv}), where);
    ck.check("S^2(a) u = u a", mul(H, s2, ribbon.u) == mul(H, ribbon.u, a), where);
    ck.check("S bijective", antipode(H, H.antipode_inv_table[i]) == a, where);
    ck.check("quasitriangular (a) T D(a) R = R D(a)",
             tensor_mul(H, swap12(d), R) == tensor_mul(H, R, d), where);
    ck.check("theta central", mul(H, ribbon.theta, a) == mul(H, a, ribbon.theta), where);
  }

  // ---- binary
  for (auto [i, j] : pairs) {
    auto where = [&] { return lbl(i) + " , " + lbl(j); };
    const AlgElem& ab = H.mul_basis(i, j);
    ck.check("comultiplicativity D(ab) = D(a)D(b)",
             comul(H, ab) == tensor_mul(H, H.comul_table[i], H.comul_table[j]), where);
    ck.check("counit multiplicative", counit(H, ab) == H.counit_table[i] * H.counit_table[j], where);
    ck.check("antipode anti-multiplicative",
             antipode(H, ab) == mul(H, H.antipode_table[j], H.antipode_table[i]), where);
    AlgElem s2b = antipode(H, H.antipode_table[j]);
    ck.check("unimodularity lambda(ab) = lambda(S^2(b)a)",
             lambda(H, ab) == lambda(H, mul(H, s2b, e(i))), where);
  }
  if (opts.all) {
    for (Index i = 0; i < dim; ++i)
      for (Index j = 0; j < dim; ++j) {
        const AlgElem& ab = H.mul_basis(i, j);
        for (Index k = 0; k < dim; ++k) {
          const AlgElem& bc = H.mul_basis(j, k);
          if (ab.is_zero() && bc.is_zero()) {
            ck.check("associativity", true, [] { return std::string(); });
            continue;
          }
          ck.check("associativity", mul(H, ab, e(k)) == mul(H, e(i), bc),
                   [&] { return lbl(i) + " , " + lbl(j) + " , " + lbl(k); });
        }
      }
  } else {
    for (int t = 0; t < opts.samples; ++t) {
      Index i = pick(rng), j = pick(rng), k = pick(rng);
      ck.check("associativity", mul(H, H.mul_basis(i, j), e(k)) == mul(H, e(i), H.mul_basis(j, k)),
               [&] { return lbl(i) + " , " + lbl(j) + " , " + lbl(k); });
    }
  }

  // ---- global
  auto none = [] { return std::string("global"); };
  ck.check("D(1) = 1 x 1", comul(H, H.unit) == one2, none);
  ck.check("eps(1) = 1", counit(H, H.unit) == H.one(), none);
  ck.check("lambda(Lambda) = 1", lambda(H, H.Lambda) == H.one(), none);
  ck.check("lambda(S(Lambda)) = 1", lambda(H, antipode(H, H.Lambda)) == H.one(), none);
  ck.check("g grouplike", comul(H, H.g) == TensorElem::pure(dim, {H.g, H.g}) &&
                              mul(H, H.g, H.g_inv) == H.unit, none);

  TensorElem R13 = tensor_embed(H, R, 3, 0, 2);
  TensorElem R23 = tensor_embed(H, R, 3, 1, 2);
  TensorElem R12 = tensor_embed(H, R, 3, 0, 1);
  ck.check("quasitriangular (b) (Dx1)R = R13 R23", tensor_comul(H, R, 0) == tensor_mul(H, R13, R23), none);
  ck.check("quasitriangular (c) (1xD)R = R13 R12", tensor_comul(H, R, 1) == tensor_mul(H, R13, R12), none);
  ck.check("quasitriangular (d) Yang-Baxter",
           tensor_mul(H, tensor_mul(H, R12, R13), R23) == tensor_mul(H, tensor_mul(H, R23, R13), R12),
           none);
  auto S = [&](Index k) { return H.antipode_table[k]; };
  auto Sinv = [&](Index k) { return H.antipode_inv_table[k]; };
  TensorElem SR = tensor_apply(H, R, 0, S);
  ck.check("quasitriangular (e) (Sx1)R = R^-1",
           tensor_mul(H, SR, R) == one2 && tensor_mul(H, R, SR) == one2, none);
  ck.check("quasitriangular (e) (1xS^-1)R = (Sx1)R", tensor_apply(H, R, 1, Sinv) == SR, none);
  ck.check("quasitriangular (e) (SxS)R = R", tensor_apply(H, SR, 1, S) == R, none);
  auto eps = [&](Index k) { return H.counit_table[k]; };
  ck.check("quasitriangular (f) (eps x 1)R = 1 = (1 x eps)R",
           tensor_to_alg(tensor_contract(R, 0, eps)) == H.unit &&
               tensor_to_alg(tensor_contract(R, 1, eps)) == H.unit,
           none);
  ck.check("quasitriangular (g) D(u) R21R = u x u",
           tensor_mul(H, comul(H, ribbon.u), R21R) == TensorElem::pure(dim, {ribbon.u, ribbon.u}), none);
  ck.check("ribbon (a) S(theta) = theta", antipode(H, ribbon.theta) == ribbon.theta, none);
  AlgElem th2, th3, ti2;
  for (const auto& rt : H.R) {
    th2 += mul(H, {rt.alpha, H.g_inv, rt.beta});
    th3 += mul(H, {rt.beta, H.g, rt.alpha});
    ti2 += mul(H, {antipode(H, rt.beta), rt.alpha, H.g_inv});
  }
  ck.check("ribbon theta = g u^-1 = u^-1 g", mul(H, inverse(H, ribbon.u), H.g) == ribbon.theta, none);
  ck.check("ribbon theta = sum a g^-1 b = sum b g a", th2 == ribbon.theta && th3 == ribbon.theta, none);
  ck.check("ribbon (b) theta^-1 = sum a S(b) g = sum S(b) a g^-1",
           mul(H, ribbon.theta, ribbon.theta_inv) == H.unit && ti2 == ribbon.theta_inv, none);
  // With theta = g u^-1 and D(u) = (u x u)(R21R)^-1, the coproduct of theta
  // picks up R21R itself, not its inverse.
  ck.check("ribbon (c) D(theta) = (theta x theta) R21R",
           comul(H, ribbon.theta) ==
               tensor_mul(H, TensorElem::pure(dim, {ribbon.theta, ribbon.theta}), R21R),
           none);
  ck.check("ribbon (c) D(theta^-1) R21R = theta^-1 x theta^-1",
           tensor_mul(H, comul(H, ribbon.theta_inv), R21R) ==
               TensorElem::pure(dim, {ribbon.theta_inv, ribbon.theta_inv}),
           none);
  ck.check("eps(theta) = 1", counit(H, ribbon.theta) == H.one(), none);
  return rep;
}

}  // namespace hkr
