#include <doctest.h>

#include <random>

#include "golden.hpp"
#include "kirby_corpus.hpp"
#include "hkr/errors.hpp"
#include "hkr/evaluate.hpp"
#include "hkr/uqsl2.hpp"
#include "oracle.hpp"

using namespace hkr;
using kirby_corpus::corpus_texts;
using kirby_corpus::random_isotopy_move;

namespace {

const CenterContext& ctx_for(int p) {
  static CenterContext c5 = make_context(build_uqsl2(5)), c7 = make_context(build_uqsl2(7));
  return p == 5 ? c5 : c7;
}

const std::vector<std::string> kNames{"one", "lambda", "p0", "zrt"};

AlgElem power(const HopfData& H, const AlgElem& x, const AlgElem& x_inv, int n) {
  AlgElem r = H.unit;
  for (int i = 0; i < std::abs(n); ++i) r = mul(H, r, n > 0 ? x : x_inv);
  return r;
}

CycNum value(const HopfData& H, const Diagram& D, const AlgElem& z, const AlgElem& w) {
  return evaluate(H, D, uniform_coloring(D, z, w)).value;
}

// Σ_{j<q} v^{2nj(j+1)} [2j+1]^2
oracle::Poly rt_sum(int p, int n) {
  oracle::Poly s(p);
  for (int j = 0; j < (p - 1) / 2; ++j)
    s = s + oracle::Poly::vpow(p, 2L * n * j * (j + 1)) * oracle::qint(p, 2 * j + 1) * oracle::qint(p, 2 * j + 1);
  return s;
}

oracle::Poly minus_pn_vminus(int p, int n) { return oracle::vminus(p).scaled(-long(p) * n); }

}  // namespace

TEST_CASE("curl calibration: framed unknots give lambda(z theta^f)") {
  for (int p : {5, 7}) {
    const CenterContext& ctx = ctx_for(p);
    const HopfData& H = *ctx.H;
    for (const auto& nm : kNames) {
      AlgElem z = named_trace_element(ctx, nm);
      for (int f = -2; f <= 2; ++f) {
        CAPTURE(p);
        CAPTURE(nm);
        CAPTURE(f);
        AlgElem t = power(H, ctx.ribbon.theta, ctx.ribbon.theta_inv, f);
        CHECK(value(H, unknot_diagram(f), z, H.unit) == lambda(H, mul(H, z, t)));
      }
    }
  }
}

TEST_CASE("lens value tables match the closed forms") {
  for (int p : {5, 7}) {
    const CenterContext& ctx = ctx_for(p);
    const HopfData& H = *ctx.H;
    AlgElem one = H.unit, zrt = named_trace_element(ctx, "zrt"), p0 = named_trace_element(ctx, "p0");
    for (int n = 0; n <= 5; ++n) {
      CAPTURE(p);
      CAPTURE(n);
      AlgElem tn = power(H, ctx.ribbon.theta, ctx.ribbon.theta_inv, n);
      Diagram D = lens_diagram(n);
      CycNum l1 = value(H, D, one, H.Lambda), lrt = value(H, D, zrt, one), lp0 = value(H, D, p0, one);
      CHECK(l1 == lambda(H, tn));
      CHECK(lrt == lambda(H, mul(H, zrt, tn)));
      CHECK(lp0 == lambda(H, mul(H, p0, tn)));
      CHECK(oracle::same(l1, minus_pn_vminus(p, n) * rt_sum(p, n)));
      CHECK(oracle::same(lrt, rt_sum(p, n)));
      CHECK(oracle::same(lp0, minus_pn_vminus(p, n)));
    }
  }
}

TEST_CASE("boundary invariant: lens spaces and the Hennings-RT product") {
  for (int p : {5, 7}) {
    const CenterContext& ctx = ctx_for(p);
    const HopfData& H = *ctx.H;
    AlgElem one = H.unit, zrt = named_trace_element(ctx, "zrt"), p0 = named_trace_element(ctx, "p0");
    for (int n = 0; n <= 5; ++n) {
      CAPTURE(p);
      CAPTURE(n);
      Diagram D = lens_diagram(n);
      CycNum b1 = boundary_invariant(ctx, D, one).value, brt = boundary_invariant(ctx, D, zrt).value,
             bp0 = boundary_invariant(ctx, D, p0).value;
      CHECK(b1 == brt * bp0);
      if (n == 0) {
        CHECK(b1.is_zero());
        CHECK(bp0.is_zero());
        CHECK(brt == lambda(H, zrt));
        CHECK(oracle::same(brt, rt_sum(p, 0)));
      } else {
        // λ(zθ^n)/λ(zθ)
        CHECK(oracle::same(brt * oracle::to_cyc(rt_sum(p, 1)), rt_sum(p, n)));
        CHECK(bp0 == CycNum(n));
      }
    }
    // S^2 x S^1 through a dotted circle as well.
    CHECK(boundary_invariant(ctx, s1xd3_diagram(), zrt).value == boundary_invariant(ctx, unknot_diagram(0), zrt).value);
    CHECK(boundary_invariant(ctx, s1xd3_diagram(), one).value.is_zero());
  }
}

TEST_CASE("unknot golden value through the invariant") {
  auto gold = golden::load("golden/lambda_zrt.txt");
  for (int p : {5, 7}) {
    const CenterContext& ctx = ctx_for(p);
    Diagram D = load_diagram(golden::path("unknot0.kbl"));
    CHECK(invariant(ctx, D, named_trace_element(ctx, "zrt")) == CycNum::parse(p, gold.at(p).at(0)));
  }
}

TEST_CASE("Reidemeister, base point and orientation invariance on the corpus") {
  const CenterContext& ctx = ctx_for(5);
  const HopfData& H = *ctx.H;
  std::vector<AlgElem> zs;
  for (const auto& nm : kNames) zs.push_back(named_trace_element(ctx, nm));
  std::mt19937 rng(41);
  int diagrams = 0, moves = 0;
  for (const auto& text : corpus_texts()) {
    Diagram D = parse_diagram(text);
    std::vector<CycNum> base;
    for (const auto& z : zs) base.push_back(value(H, D, z, H.Lambda));
    Diagram E = D;
    std::vector<std::string> applied;
    for (int attempt = 0; attempt < 100 && applied.size() < 4; ++attempt) {
      std::optional<Move> m = random_isotopy_move(rng, E);
      if (!m) continue;
      try {
        E = apply_move(E, *m);
        applied.push_back(format_kirby_move(*m));
      } catch (const PreconditionError&) {
      }
    }
    CAPTURE(text);
    CAPTURE(format_diagram(E));
    for (size_t i = 0; i < zs.size(); ++i) CHECK(value(H, E, zs[i], H.Lambda) == base[i]);
    ++diagrams;
    moves += static_cast<int>(applied.size());
  }
  CHECK(diagrams >= 10);
  CHECK(moves >= 20);
}

TEST_CASE("handle slide invariance on the Hopf-slide pair") {
  for (int p : {5, 7}) {
    const CenterContext& ctx = ctx_for(p);
    const HopfData& H = *ctx.H;
    Diagram D = hopf_diagram();
    Diagram E = apply_move(D, {MoveKind::HandleSlide, 2, 0, 1, 1, 2});
    REQUIRE(E != D);
    for (const auto& nm : kNames) {
      CAPTURE(p);
      CAPTURE(nm);
      AlgElem z = named_trace_element(ctx, nm);
      CHECK(value(H, E, z, H.unit) == value(H, D, z, H.unit));
    }
  }
}

TEST_CASE("handle slides on a three-component link") {
  const CenterContext& ctx = ctx_for(5);
  const HopfData& H = *ctx.H;
  Diagram D = parse_diagram("cup 0\ncup 2\ncup 4\nx+ 1\nx+ 1\nx- 3\nx- 3\ncap 0\ncap 0\ncap 0\n");
  TraceResult T = trace(D);
  AlgElem z = named_trace_element(ctx, "zrt");
  CycNum base = value(H, D, z, H.unit);
  int slides = 0;
  for (int row = 0; row < static_cast<int>(T.widths.size()) && slides < 1; ++row)
    for (int pos = 0; pos + 1 < T.widths[row] && slides < 1; ++pos)
      for (int a = 1; a <= 3; ++a)
        for (int b = 1; b <= 3; ++b) {
          if (a == b || slides >= 1) continue;
          Diagram E;
          try {
            E = apply_move(D, {MoveKind::HandleSlide, row, pos, 1, a, b});
          } catch (const PreconditionError&) {
            continue;
          }
          CAPTURE(format_diagram(E));
          CHECK(value(H, E, z, H.unit) == base);
          ++slides;
        }
  CHECK(slides == 1);
}

TEST_CASE("crossings pass through dotted circles") {
  const CenterContext& ctx = ctx_for(5);
  const HopfData& H = *ctx.H;
  const auto& K = *ctx.kerler;
  // Opposite and equal strand directions through the dot.
  for (std::string text : {"cup 0\ncup 2\ndot 1 2 1\nx+ 1\nx- 1\nx+ 1\ncap 2\ncap 0\n",
                           "cup 0\ncup 1\ndot 0 1 1\nx+ 0\ncap 1\ncap 0\n"}) {
    Diagram D = parse_diagram(text);
    Diagram E = apply_move(D, {MoveKind::Commute, 2});
    REQUIRE(E != D);
    CAPTURE(text);
    for (const AlgElem& z : {H.unit, K.P[0], named_trace_element(ctx, "zrt")})
      for (const AlgElem& w : {H.Lambda, K.P[1], H.unit}) CHECK(value(H, E, z, w) == value(H, D, z, w));
  }
}

TEST_CASE("handle slides across dotted circles") {
  const CenterContext& ctx = ctx_for(5);
  const HopfData& H = *ctx.H;
  const auto& K = *ctx.kerler;
  int slides = 0;
  for (std::string text : {"cup 0\ncup 2\ndot 1 2 1\ncap 2\ncap 0\n", "cup 0\ncup 2\ndot 1 2 1\nx+ 1\nx+ 1\ncap 2\ncap 0\n"}) {
    Diagram D = parse_diagram(text);
    TraceResult T = trace(D);
    int here = 0;
    for (int row = 0; row < static_cast<int>(T.widths.size()); ++row)
      for (int pos = 0; pos + 1 < T.widths[row]; ++pos)
        for (int a = 1; a <= 2 && here < 2; ++a) {
          Diagram E;
          try {
            E = apply_move(D, {MoveKind::HandleSlide, row, pos, 1, a, 3 - a});
          } catch (const PreconditionError&) {
            continue;
          }
          ++slides;
          ++here;
          CAPTURE(format_diagram(E));
          for (const AlgElem& z : {H.unit, K.P[0], named_trace_element(ctx, "zrt")})
            for (const AlgElem& w : {H.Lambda, K.P[1]}) CHECK(value(H, E, z, w) == value(H, D, z, w));
        }
  }
  CHECK(slides >= 4);
}

TEST_CASE("cancelling pair and disjoint dotted circles") {
  for (int p : {5, 7}) {
    const CenterContext& ctx = ctx_for(p);
    const HopfData& H = *ctx.H;
    Diagram C = cancel_pair_diagram();
    CHECK(value(H, C, H.unit, H.Lambda).is_one());
    CHECK(value(H, C, H.Lambda, H.unit).is_one());
    CHECK(invariant(ctx, C, H.unit).is_one());
    CHECK(invariant(ctx, C, H.Lambda).is_one());
    for (const auto& nm : kNames) {
      AlgElem w = named_trace_element(ctx, nm);
      CHECK(value(H, s1xd3_diagram(), H.unit, w) == counit(H, w));
      AlgElem z = named_trace_element(ctx, "zrt");
      CHECK(value(H, disjoint_union(unknot_diagram(0), s1xd3_diagram()), z, w) == lambda(H, z) * counit(H, w));
    }
  }
}

TEST_CASE("colors in K annihilate") {
  const CenterContext& ctx = ctx_for(5);
  const HopfData& H = *ctx.H;
  REQUIRE(ctx.center.dim_K() > 0);
  for (std::string text : {"cup 0\ncup 1\nx+ 0\ncap 1\ncap 0\n", "cup 0\ncup 1\nx+ 0\nx+ 0\nx+ 0\ncap 1\ncap 0\n",
                           "cup 0\ncup 1\nx+ 0\nx+ 2\ncap 1\ncap 0\n"}) {
    Diagram D = parse_diagram(text);
    for (const auto& k : ctx.center.k_basis) {
      Coloring col = uniform_coloring(D, named_trace_element(ctx, "zrt"), H.unit);
      col.undotted[0] = k;
      CHECK(evaluate(H, D, col).value.is_zero());
    }
  }
  Diagram dotted = parse_diagram("cup 0\ncup 2\ndot 1 2 1\ncap 2\ncap 0\n");
  for (const auto& k : ctx.center.k_basis) CHECK(value(H, dotted, H.unit, k).is_zero());
}

TEST_CASE("scalar rescaling by gamma = 2") {
  const CenterContext& ctx = ctx_for(5);
  const HopfData& H = *ctx.H;
  CycNum two(2), half = CycNum(2).inverse();
  for (const auto& text : corpus_texts()) {
    Diagram D = parse_diagram(text);
    TraceResult T = trace(D);
    int chi1 = T.n_closed - static_cast<int>(T.dot_ids.size());
    CycNum scale(1);
    for (int i = 0; i < std::abs(chi1); ++i) scale *= chi1 > 0 ? two : half;
    AlgElem z = named_trace_element(ctx, "p0");
    AlgElem w = *t4_witness(ctx, z);
    CAPTURE(text);
    CHECK(value(H, D, two * z, half * w) == scale * value(H, D, z, w));
  }
}

TEST_CASE("J-colored unknot and factorization") {
  for (int p : {5, 7}) {
    const CenterContext& ctx = ctx_for(p);
    const HopfData& H = *ctx.H;
    Diagram D = hopf_diagram();
    for (const auto& nm : kNames) {
      AlgElem z = named_trace_element(ctx, nm);
      Coloring col{{z, H.unit}, {}};
      CAPTURE(nm);
      CHECK(evaluate(H, D, col).value == lambda(H, J(H, z)));
      Coloring rev{{H.unit, z}, {}};
      CHECK(evaluate(H, D, rev).value == lambda(H, J(H, z)));
    }
  }
  const CenterContext& ctx = ctx_for(5);
  const HopfData& H = *ctx.H;
  AlgElem zrt = named_trace_element(ctx, "zrt");
  AlgElem jz = J(H, zrt), zsj = star(H, zrt, jz);
  for (std::string text : {"cup 0\ncap 0\n", "cup 0\ncup 1\nx+ 0\ncap 1\ncap 0\n", "cup 0\ncup 1\nx- 0\ncap 1\ncap 0\n",
                           "cup 0\ncup 1\nx+ 0\nx+ 0\nx+ 0\ncap 1\ncap 0\n"}) {
    Diagram D = parse_diagram(text);
    CAPTURE(text);
    CHECK(value(H, D, zsj, H.unit) == value(H, D, zrt, H.unit) * value(H, D, jz, H.unit));
  }
  // Split diagrams factor.
  Diagram A = unknot_diagram(1), B = parse_diagram("cup 0\ncup 1\nx+ 0\nx+ 0\nx+ 0\ncap 1\ncap 0\n");
  for (const auto& nm : kNames) {
    AlgElem z = named_trace_element(ctx, nm);
    CHECK(value(H, disjoint_union(A, B), z, H.unit) == value(H, A, z, H.unit) * value(H, B, z, H.unit));
  }
}

TEST_CASE("slice backend agrees with the summation oracle") {
  const CenterContext& ctx = ctx_for(5);
  const HopfData& H = *ctx.H;
  for (std::string text : {"cup 0\ncap 0\n", "cup 0\ncup 1\nx+ 0\ncap 1\ncap 0\n", "cup 0\ncup 1\nx- 0\ncap 1\ncap 0\n",
                            "cup 0\ncup 1\nx+ 0\nx+ 2\ncap 1\ncap 0\n", "cup 0\ndot 0 0 1\ncap 0\n",
                            "cup 0\ncup 2\ndot 1 2 1\ncap 2\ncap 0\n", "cup 0\ncup 1\nx+ 0\ndot 0 1 1\ncap 1\ncap 0\n"}) {
    Diagram D = parse_diagram(text);
    CAPTURE(text);
    for (std::string nm : {"zrt", "p0"}) {
      Coloring col = uniform_coloring(D, named_trace_element(ctx, nm), named_trace_element(ctx, "zrt"));
      EvalResult a = evaluate(H, D, col, Backend::Slice), b = evaluate(H, D, col, Backend::Summation);
      CHECK(a.closed == b.closed);
      if (a.closed)
        CHECK(a.value == b.value);
      else
        CHECK(a.tensor == b.tensor);
    }
  }
  // Thread count does not change the value.
  Diagram D = hopf_diagram();
  Coloring col = uniform_coloring(D, named_trace_element(ctx, "zrt"), H.unit);
  CHECK(evaluate(H, D, col, Backend::Slice, 3).value == evaluate(H, D, col, Backend::Slice, 1).value);
}

TEST_CASE("open tangle: a single crossing is the R-matrix") {
  const HopfData& H = *ctx_for(5).H;
  EvalResult r = evaluate(H, parse_diagram("top 2\nx+ 0\n"), Coloring{});
  CHECK_FALSE(r.closed);
  CHECK(r.tensor.arity() == 2);
}

TEST_CASE("witness independence") {
  const CenterContext& ctx = ctx_for(5);
  const HopfData& H = *ctx.H;
  const auto& K = *ctx.kerler;
  struct Case {
    AlgElem z, w1, w2;
  };
  std::vector<Case> cases{{K.P[0], *t4_witness(ctx, K.P[0]), *t4_witness(ctx, K.P[0]) + K.P[1]},
                          {H.Lambda, H.unit, H.unit + K.P[1]}};
  for (const auto& c : cases) {
    REQUIRE(c.w1 != c.w2);
    REQUIRE(class_equal(ctx.center, mul(H, c.z, c.w2), H.Lambda));
    for (std::string text : {"cup 0\ncup 2\ndot 1 2 1\ncap 2\ncap 0\n", "cup 0\ncup 1\nx+ 0\ndot 0 1 1\ncap 1\ncap 0\n",
                             "cup 0\ndot 0 0 1\ncap 0\n", "cup 0\ncup 2\nx+ 1\ndot 1 2 1\nx+ 1\ncap 2\ncap 0\n"}) {
      Diagram D = parse_diagram(text);
      CAPTURE(text);
      CHECK(invariant(ctx, D, c.z, c.w1) == invariant(ctx, D, c.z, c.w2));
    }
  }
  CHECK_THROWS_AS(invariant(ctx, unknot_diagram(0), K.P[0], H.unit), PreconditionError);
  CHECK_THROWS_AS(invariant(ctx, unknot_diagram(0), K.P[1]), PreconditionError);
}

TEST_CASE("boundary invariant under dots and blow-ups") {
  const CenterContext& ctx = ctx_for(5);
  const HopfData& H = *ctx.H;
  std::vector<Diagram> ds{unknot_diagram(0), lens_diagram(2), lens_diagram(-3), hopf_diagram(),
                          parse_diagram("cup 0\ncup 2\ndot 1 2 1\ncap 2\ncap 0\n")};
  for (const auto& nm : kNames) {
    AlgElem z = named_trace_element(ctx, nm);
    for (const auto& D : ds) {
      CAPTURE(nm);
      CAPTURE(format_diagram(D));
      CycNum base = boundary_invariant(ctx, D, z).value;
      for (int s : {1, -1}) {
        Diagram up = apply_move(D, {MoveKind::BlowUp, 0, 0, s});
        CHECK(boundary_invariant(ctx, up, z).value == base);
        int comp = trace(up).n_closed;
        CHECK(apply_move(up, {MoveKind::BlowDown, 0, 0, 1, comp}) == D);
      }
      Diagram with_dot = disjoint_union(D, unknot_diagram(0));
      Diagram dotted = apply_move(with_dot, {MoveKind::AddDot, 0, 0, 1, trace(with_dot).n_closed});
      CHECK(boundary_invariant(ctx, dotted, z).value == boundary_invariant(ctx, with_dot, z).value);
    }
  }
  CHECK_THROWS_AS(boundary_invariant(ctx, unknot_diagram(0), ctx.kerler->P[1]), PreconditionError);
  CHECK_THROWS_AS(boundary_invariant(ctx, unknot_diagram(0), H.Lambda + ctx.kerler->P[1]), PreconditionError);
}
