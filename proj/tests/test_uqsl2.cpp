#include <doctest.h>

#include <random>

#include "hkr/center.hpp"
#include "hkr/errors.hpp"
#include "hkr/uqsl2.hpp"
#include "oracle.hpp"

using namespace hkr;

namespace {

const HopfPtr& sl2(int p) {
  static HopfPtr h5 = build_uqsl2(5), h7 = build_uqsl2(7);
  return p == 5 ? h5 : h7;
}

AlgElem e(const HopfData& H, Index i) { return AlgElem::basis(i, H.one()); }

Matrix zero_matrix(int d, int p) { return Matrix(d, std::vector<CycNum>(d, CycNum(0).with_p(p))); }

// Action of 1_c E^(a) F^(b) on V_n straight from the module formulas:
// F e_i = e_{i-1}, E e_i = [n+i+1][n-i] e_{i+1}, divided powers by [k]!.
Matrix oracle_matrix(int p, int n, int c, int a, int b) {
  const int d = 2 * n + 1;
  Matrix M = zero_matrix(d, p);
  for (int i = -n; i <= n; ++i) {
    int j = i - b;
    if (j < -n) continue;
    CycNum coef(1);
    for (int k = 0; k < a; ++k) {
      int w = j + k;
      if (w + 1 > n) {
        coef = CycNum(0);
        break;
      }
      coef *= oracle::to_cyc(oracle::qint(p, n + w + 1) * oracle::qint(p, n - w));
    }
    int out = j + a;
    if (coef.is_zero() || out > n) continue;
    coef = coef / (qfact(p, a) * qfact(p, b));
    if (((2 * out) % p + p) % p != c) continue;
    M[out + n][i + n] = coef.with_p(p);
  }
  return M;
}

}  // namespace

TEST_CASE("construction") {
  for (int p : {5, 7}) {
    const HopfData& H = *sl2(p);
    CHECK(H.dim == Index(p * p * p));
    CHECK(is_uqsl2(H));
    CHECK(lambda(H, H.Lambda).is_one());
    CHECK(counit(H, H.Lambda).is_zero());
    CHECK(lambda(H, H.unit).is_zero());
    CHECK(H.Lambda == e(H, sl2_index(p, 0, p - 1, p - 1)));
    for (Index i = 0; i < H.dim; ++i) {
      Sl2Basis b = sl2_decode(p, i);
      CHECK(sl2_index(p, b.c, b.n, b.m) == i);
      CycNum want = (b.n == p - 1 && b.m == p - 1) ? CycNum::v_power(p, b.c) : H.zero();
      CHECK(lambda(H, e(H, i)) == want);
    }
  }
  CHECK_THROWS_AS(build_uqsl2(3), PreconditionError);
  CHECK_THROWS_AS(build_uqsl2(9), PreconditionError);
}

TEST_CASE("divided power product example") {
  const HopfData& H = *sl2(5);
  AlgElem lhs = mul(H, e(H, sl2_index(5, 2, 1, 0)), e(H, sl2_index(5, 0, 1, 0)));
  CHECK(lhs == qbinom(5, 2, 1) * e(H, sl2_index(5, 2, 2, 0)));
  CHECK(mul(H, e(H, sl2_index(5, 1, 1, 0)), e(H, sl2_index(5, 0, 1, 0))).is_zero());
}

TEST_CASE("simple modules") {
  for (int p : {5, 7}) {
    const HopfData& H = *sl2(p);
    const int q = (p - 1) / 2;
    for (int n = 0; n < q; ++n) {
      RepVn V = make_rep(p, n);
      CHECK(V.dim() == 2 * n + 1);
      // Highest and lowest weight vectors.
      std::vector<CycNum> top(V.dim(), H.zero()), bottom(V.dim(), H.zero());
      top.back() = H.one();
      bottom.front() = H.one();
      for (auto x : rep_action(V, sl2_E(H), top)) CHECK(x.is_zero());
      for (auto x : rep_action(V, sl2_F(H), bottom)) CHECK(x.is_zero());
      // Basis matrices against the formula oracle.
      for (Index i = 0; i < H.dim; ++i) {
        Sl2Basis b = sl2_decode(p, i);
        CHECK(rep_matrix(V, i) == oracle_matrix(p, n, b.c, b.n, b.m));
      }
      Matrix id = zero_matrix(V.dim(), p);
      for (int k = 0; k < V.dim(); ++k) id[k][k] = H.one();
      CHECK(rep_matrix(V, H.unit) == id);
    }
  }
  const HopfData& H = *sl2(5);
  RepVn V1 = make_rep(5, 1);
  std::vector<CycNum> e0{H.zero(), H.one(), H.zero()};
  auto out = rep_action(V1, sl2_E(H), e0);
  CHECK(out[2] == qint(5, 2));
  std::vector<CycNum> em1{H.one(), H.zero(), H.zero()};
  for (auto x : rep_action(V1, sl2_F(H), em1)) CHECK(x.is_zero());
  RepVn V0 = make_rep(5, 0);
  for (Index i = 0; i < H.dim; ++i) CHECK(rep_matrix(V0, i)[0][0] == counit(H, e(H, i)));
}

TEST_CASE("representation property") {
  for (int p : {5, 7}) {
    const HopfData& H = *sl2(p);
    std::mt19937 rng(p);
    for (int n = 0; n < (p - 1) / 2; ++n) {
      RepVn V = make_rep(p, n);
      std::vector<AlgElem> gens = H.generators;
      for (const auto& a : gens)
        for (const auto& b : gens) CHECK(rep_matrix(V, mul(H, a, b)) == mat_mul(rep_matrix(V, a), rep_matrix(V, b)));
      for (int t = 0; t < 150; ++t) {
        Index a = rng() % H.dim, b = rng() % H.dim;
        CHECK(rep_matrix(V, mul(H, e(H, a), e(H, b))) == mat_mul(rep_matrix(V, a), rep_matrix(V, b)));
      }
    }
  }
}

TEST_CASE("quantum trace and trace elements") {
  for (int p : {5, 7}) {
    const HopfData& H = *sl2(p);
    const int q = (p - 1) / 2;
    std::mt19937 rng(p + 1);
    for (int n = 0; n < q; ++n) {
      RepVn V = make_rep(p, n);
      CHECK(quantum_trace(H, V, H.unit) == qint(p, 2 * n + 1));
      for (int t = 0; t < 40; ++t) {
        AlgElem a = e(H, rng() % H.dim), b = e(H, rng() % H.dim);
        CHECK(quantum_trace(H, V, mul(H, a, b)) == quantum_trace(H, V, mul(H, b, antipode(H, antipode(H, a)))));
      }
      AlgElem z = trace_element(H, V);
      CHECK(commutes_with_generators(H, z));
      AlgElem g2 = mul(H, H.g, H.g);
      for (Index i = 0; i < H.dim; i += (p == 5 ? 1 : 3))
        CHECK(quantum_trace(H, V, e(H, i)) == lambda(H, mul(H, {g2, z, e(H, i)})));
    }
  }
}

TEST_CASE("trace element classes and the RT element") {
  for (int p : {5, 7}) {
    CenterContext ctx = make_context(sl2(p));
    const HopfData& H = *ctx.H;
    const auto& K = *ctx.kerler;
    AlgElem zrt;
    for (int n = 0; n < K.q; ++n) {
      AlgElem zn = trace_element(H, make_rep(p, n));
      CHECK(class_equal(ctx.center, zn, K.Ndot_minus[n]));
      zrt += qint(p, 2 * n + 1) * zn;
    }
    CHECK(class_equal(ctx.center, zrt, named_trace_element(ctx, "zrt")));
    CHECK(class_equal(ctx.center, trace_element(H, make_rep(p, 0)), H.Lambda));
  }
}

TEST_CASE("quantum dimensions multiply on tensor products") {
  const int p = 5;
  const HopfData& H = *sl2(p);
  std::mt19937 rng(17);
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) {
      RepVn Vi = make_rep(p, i), Vj = make_rep(p, j);
      auto tensor_trace = [&](const AlgElem& a) {
        TensorElem d = comul(H, a);
        CycNum s = H.zero();
        for (const auto& [k, c] : d.terms()) {
          auto idx = d.unpack(k);
          s += c * quantum_trace(H, Vi, e(H, idx[0])) * quantum_trace(H, Vj, e(H, idx[1]));
        }
        return s;
      };
      CHECK(tensor_trace(H.unit) == qint(p, 2 * i + 1) * qint(p, 2 * j + 1));
      // The tensor-product trace is again a quantum trace.
      for (int t = 0; t < 20; ++t) {
        AlgElem a = e(H, rng() % H.dim), b = e(H, rng() % H.dim);
        CHECK(tensor_trace(mul(H, a, b)) == tensor_trace(mul(H, b, antipode(H, antipode(H, a)))));
      }
    }
}
