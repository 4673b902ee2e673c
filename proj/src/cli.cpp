#include "hkr/cli.hpp"

#include <CLI11.hpp>

#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <random>
#include <sstream>

#include "hkr/center.hpp"
#include "hkr/errors.hpp"
#include "hkr/evaluate.hpp"
#include "hkr/grpalg.hpp"
#include "hkr/kirby.hpp"
#include "hkr/uqsl2.hpp"

namespace hkr {

namespace {

struct Common {
  int p = 5;
  int jobs = 1;
  std::string group;
  bool rational_only = false;
};

struct Source {
  std::string file;
  std::string build;
};

std::string read_text(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw PreconditionError("cannot read '" + path + "'");
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

FiniteGroup load_group(const std::string& spec) {
  if (std::filesystem::exists(spec)) return load_cayley(spec);
  return named_group(spec);
}

HopfPtr algebra(const Common& c) {
  if (!c.group.empty()) return group_algebra(load_group(c.group), c.p);
  return build_uqsl2(c.p);
}

Diagram build_diagram(const std::string& spec) {
  std::istringstream in(spec);
  std::string name;
  in >> name;
  auto arg = [&]() {
    long n;
    if (!(in >> n)) throw PreconditionError("builder '" + name + "' needs an integer argument");
    return static_cast<int>(n);
  };
  Diagram D;
  if (name == "unknot") D = unknot_diagram(arg());
  else if (name == "hopf") D = hopf_diagram();
  else if (name == "lens") D = lens_diagram(arg());
  else if (name == "s1xd3") D = s1xd3_diagram();
  else if (name == "cancel-pair") D = cancel_pair_diagram();
  else throw PreconditionError("unknown builder '" + name + "'");
  std::string extra;
  if (in >> extra) throw PreconditionError("trailing input in builder spec '" + spec + "'");
  return D;
}

Diagram load_source(const Source& s) {
  if (!s.file.empty() && !s.build.empty()) throw PreconditionError("give either --diagram or --build, not both");
  if (!s.file.empty()) return load_diagram(s.file);
  if (!s.build.empty()) return build_diagram(s.build);
  throw PreconditionError("a diagram is required (--diagram FILE or --build SPEC)");
}

AlgElem element(const CenterContext& ctx, const std::string& spec) {
  if (spec.rfind("file:", 0) == 0) {
    AlgElem z = parse_elem(*ctx.H, read_text(spec.substr(5)));
    require_central(*ctx.H, z, "element file");
    return z;
  }
  return named_trace_element(ctx, spec);
}

std::vector<std::string> default_names(const CenterContext& ctx) {
  if (ctx.kerler) return {"one", "lambda", "p0", "zrt"};
  return {"one", "lambda"};
}

void emit(std::ostream& out, const CycNum& x, const Common& c) {
  if (c.rational_only && !x.is_rational()) throw PreconditionError("result is not rational: " + x.str());
  out << x.str() << "\n";
}

std::string coords_str(const std::vector<CycNum>& v) {
  std::string s = "[";
  for (size_t i = 0; i < v.size(); ++i) s += (i ? ", " : "") + v[i].str();
  return s + "]";
}

void add_common(CLI::App* app, Common& c, bool with_group = true) {
  app->add_option("--p", c.p, "odd prime root-of-unity order (scalar field modulus)")->capture_default_str();
  app->add_option("--jobs", c.jobs, "worker threads")->capture_default_str()->check(CLI::Range(1, 256));
  if (with_group) app->add_option("--group", c.group, "use the group algebra of a named group (Z6, S3) or .cayley file");
  app->add_flag("--rational-only", c.rational_only, "fail unless the result is rational");
}

void add_source(CLI::App* app, Source& s) {
  app->add_option("--diagram", s.file, ".kbl diagram file");
  app->add_option("--build", s.build, "builder: 'unknot F', 'hopf', 'lens N', 's1xd3', 'cancel-pair'");
}

// ----------------------------------------------------------------- commands

int cmd_check_axioms(const Common& c, bool all, int samples, std::ostream& out) {
  HopfPtr H = algebra(c);
  AxiomOptions opts;
  opts.all = all;
  opts.samples = samples;
  AxiomReport R = axiom_report(*H, opts);
  out << "algebra " << H->name << " dim " << H->dim << "\n" << R.str();
  return R.all_pass() ? 0 : 2;
}

int cmd_center(const Common& c, std::ostream& out) {
  CenterContext ctx = make_context(algebra(c));
  const HopfData& H = *ctx.H;
  const auto& C = ctx.center;
  out << "algebra " << H.name << " dim " << H.dim << "\n";
  out << "dim Z " << C.dim_Z() << "\ndim K " << C.dim_K() << "\ndim Zhat " << C.dim_Zhat() << "\n";
  auto name = [&](size_t i) { return i < C.class_names.size() ? C.class_names[i] : "b" + std::to_string(i); };
  out << "lambda values\n";
  for (size_t i = 0; i < C.dim_Zhat(); ++i) out << "  " << name(i) << " " << lambda(H, C.class_basis[i]).str() << "\n";
  out << "product table (class coordinates)\n";
  for (size_t i = 0; i < C.dim_Zhat(); ++i)
    for (size_t j = i; j < C.dim_Zhat(); ++j)
      out << "  " << name(i) << " * " << name(j) << " = "
          << coords_str(class_coords(C, mul(H, C.class_basis[i], C.class_basis[j]))) << "\n";
  if (ctx.kerler) {
    auto fails = kerler_product_failures(H, *ctx.kerler);
    if (!fails.empty()) throw ConsistencyError("Kerler product table: " + fails.front());
    out << "Kerler product table verified\n";
    out << "T_Z rays\n";
    for (const auto& r : enumerate_TZ(ctx)) out << "  " << r.name << " " << coords_str(r.coords) << "\n";
  }
  return 0;
}

void report_element(std::ostream& out, const CenterContext& ctx, const std::string& label, const AlgElem& z,
                    bool t2) {
  TraceReport R = classify_trace_element(ctx, z, t2);
  out << label << " " << coords_str(R.coords) << "\n";
  out << "  T_Z " << (R.in_TZ ? "yes" : "no") << "\n";
  out << "  T3 " << (R.in_T3 ? "yes" : "no") << " X_z " << R.X_z.str() << " C+ " << R.C_plus.str() << " C- "
      << R.C_minus.str() << "\n";
  out << "  T4 " << (R.in_T4 ? "yes" : "no");
  if (R.in_T4) out << " witness " << format_elem(*ctx.H, R.witness);
  out << "\n";
  if (t2) out << "  T2 " << (R.in_T2 ? "yes " + R.t2_witness : std::string("no witness in catalog")) << "\n";
}

int cmd_trace_elements(const Common& c, const std::vector<std::string>& zs, bool t2, std::ostream& out) {
  CenterContext ctx = make_context(algebra(c));
  if (!zs.empty()) {
    for (const auto& s : zs) report_element(out, ctx, s, element(ctx, s), t2);
    return 0;
  }
  if (ctx.kerler) {
    auto rays = enumerate_TZ(ctx);
    out << "rays " << rays.size() << "\n";
    for (const auto& r : rays) report_element(out, ctx, r.name, r.rep, t2);
  } else {
    for (const auto& s : default_names(ctx)) report_element(out, ctx, s, element(ctx, s), t2);
  }
  return 0;
}

int cmd_fusion(const Common& c, std::ostream& out) {
  CenterContext ctx = make_context(algebra(c));
  if (!ctx.kerler) throw PreconditionError("fusion requires the quantum sl(2)");
  auto eps = fusion_coefficients(*ctx.H, *ctx.kerler);
  const int q = ctx.kerler->q;
  out << "q " << q << "\n";
  for (int i = 0; i < q; ++i)
    for (int j = 0; j < q; ++j) {
      out << "N" << i << " x N" << j << " =";
      bool any = false;
      for (int s = 0; s < q; ++s)
        if (eps[i][j][s]) {
          out << (any ? " +" : "") << " " << (eps[i][j][s] == 1 ? "" : std::to_string(eps[i][j][s]) + "*") << "N"
              << s;
          any = true;
        }
      if (!any) out << " 0";
      out << "\n";
    }
  return 0;
}

int cmd_invariant(const Common& c, const Source& src, const std::string& zs, const std::string& ws, bool boundary,
                  bool verbose, std::ostream& out) {
  CenterContext ctx = make_context(algebra(c));
  Diagram D = load_source(src);
  AlgElem z = element(ctx, zs);
  if (boundary) {
    BoundaryValue B = boundary_invariant(ctx, D, z, c.jobs);
    if (verbose)
      out << "raw " << B.raw.str() << "\nC+ " << B.C_plus.str() << " ^ " << B.exp_plus << "\nC- " << B.C_minus.str()
          << " ^ " << B.exp_minus << "\n";
    emit(out, B.value, c);
    return 0;
  }
  std::optional<AlgElem> w;
  if (!ws.empty()) w = element(ctx, ws);
  emit(out, invariant(ctx, D, z, w, c.jobs), c);
  return 0;
}

int cmd_lens(const Common& c, int n, const std::string& zs, std::ostream& out) {
  CenterContext ctx = make_context(algebra(c));
  BoundaryValue B = boundary_invariant(ctx, lens_diagram(n), element(ctx, zs), c.jobs);
  out << "L(1," << n << ") z=" << zs << "\n";
  out << "raw " << B.raw.str() << "\nC+ " << B.C_plus.str() << " ^ " << B.exp_plus << "\nC- " << B.C_minus.str()
      << " ^ " << B.exp_minus << "\nboundary ";
  emit(out, B.value, c);
  return 0;
}

int cmd_table_hrt(const Common& c, int nmax, std::ostream& out) {
  CenterContext ctx = make_context(algebra(c));
  if (!ctx.kerler) throw PreconditionError("table-hrt requires the quantum sl(2)");
  AlgElem one = element(ctx, "one"), zrt = element(ctx, "zrt"), p0 = element(ctx, "p0");
  bool ok = true;
  for (int n = 0; n <= nmax; ++n) {
    Diagram D = unknot_diagram(n);
    auto lam = [&](const AlgElem& z) { return evaluate(*ctx.H, D, uniform_coloring(D, z, z), Backend::Slice, c.jobs).value; };
    CycNum b1 = boundary_invariant(ctx, D, one, c.jobs).value;
    CycNum bz = boundary_invariant(ctx, D, zrt, c.jobs).value;
    CycNum bp = boundary_invariant(ctx, D, p0, c.jobs).value;
    bool row_ok = b1 == bz * bp;
    ok = ok && row_ok;
    out << "n " << n << "\n";
    out << "  lambda(theta^n) " << lam(one).str() << "\n";
    out << "  lambda(zrt theta^n) " << lam(zrt).str() << "\n";
    out << "  lambda(p0 theta^n) " << lam(p0).str() << "\n";
    out << "  boundary[1] " << b1.str() << "\n";
    out << "  boundary[zrt] " << bz.str() << "\n";
    out << "  boundary[p0] " << bp.str() << "\n";
    out << "  product check " << (row_ok ? "ok" : "FAIL") << "\n";
  }
  return ok ? 0 : 2;
}

int cmd_hom_count(const Common& c, const std::string& pres, const Source& src, std::ostream& out) {
  if (c.group.empty()) throw PreconditionError("hom-count needs --group");
  FiniteGroup G = load_group(c.group);
  Presentation P;
  if (!pres.empty()) {
    if (!src.file.empty() || !src.build.empty()) throw PreconditionError("give either --pres or a diagram");
    P = load_presentation(pres);
  } else {
    P = extract_presentation(load_source(src));
  }
  out << hom_count(P, G, c.jobs) << "\n";
  return 0;
}

int cmd_presentation(const Source& src, std::ostream& out) {
  Diagram D = load_source(src);
  Presentation P = extract_presentation(D);
  LinkingData L = linking_data(D);
  out << "presentation " << pretty_presentation(P) << "\n";
  out << "linking matrix\n";
  for (const auto& row : L.matrix) {
    out << " ";
    for (long x : row) out << " " << x;
    out << "\n";
  }
  out << "signature + " << L.sigma_plus << " - " << L.sigma_minus << " 0 " << L.sigma_zero << "\n";
  out << "dotted " << L.n_dotted << "\nparity";
  for (int x : L.parity) out << " " << x;
  out << "\n--- pres\n" << format_presentation(P);
  return 0;
}

std::vector<Move> candidate_moves(const Diagram& D) {
  TraceResult T = trace(D);
  const int rows = static_cast<int>(D.rows.size());
  std::vector<Move> out;
  for (int r = 0; r <= rows; ++r)
    for (int P = 0; P + 1 < T.widths[r]; ++P)
      for (int s : {1, -1}) out.push_back({MoveKind::R2Insert, r, P, s});
  for (int r = 0; r <= rows; ++r)
    for (int P = 0; P < T.widths[r]; ++P)
      for (int s : {1, -1}) out.push_back({MoveKind::ZigzagInsert, r, P, s});
  for (int r = 0; r < rows; ++r) {
    out.push_back({MoveKind::R2Remove, r});
    out.push_back({MoveKind::ZigzagRemove, r});
    out.push_back({MoveKind::CupSlide, r});
    out.push_back({MoveKind::CapSlide, r});
    out.push_back({MoveKind::Commute, r});
    out.push_back({MoveKind::R3, r});
  }
  for (int a = 1; a <= T.n_closed; ++a) {
    out.push_back({MoveKind::Flip, 0, 0, 1, a});
    for (int r = 0; r <= rows; ++r)
      for (int P = 0; P < T.widths[r]; ++P) out.push_back({MoveKind::MoveBase, r, P, 1, a});
    for (int b = 1; b <= T.n_closed; ++b)
      if (a != b)
        for (int r = 0; r <= rows; ++r)
          for (int P = 0; P + 1 < T.widths[r]; ++P) out.push_back({MoveKind::HandleSlide, r, P, 1, a, b});
  }
  return out;
}

int cmd_moves_check(const Common& c, const Source& src, const std::vector<std::string>& zs_in,
                    const std::string& moves_file, int random, uint64_t seed, bool boundary, std::ostream& out) {
  CenterContext ctx = make_context(algebra(c));
  Diagram D = load_source(src);
  std::vector<std::string> zs = zs_in.empty() ? default_names(ctx) : zs_in;
  std::vector<AlgElem> elems;
  for (const auto& s : zs) elems.push_back(element(ctx, s));
  auto values = [&](const Diagram& E) {
    std::vector<CycNum> v;
    for (const auto& z : elems)
      v.push_back(boundary ? boundary_invariant(ctx, E, z, c.jobs).value : invariant(ctx, E, z, std::nullopt, c.jobs));
    return v;
  };
  const std::vector<CycNum> base = values(D);
  for (size_t k = 0; k < zs.size(); ++k) out << "z=" << zs[k] << " " << base[k].str() << "\n";
  bool ok = true;
  auto step = [&](const Move& m) {
    D = apply_move(D, m);
    auto v = values(D);
    bool same = v == base;
    ok = ok && same;
    out << format_kirby_move(m) << (same ? " ok" : " MISMATCH") << "\n";
    if (!same)
      for (size_t k = 0; k < zs.size(); ++k)
        if (v[k] != base[k]) out << "  z=" << zs[k] << " " << v[k].str() << "\n";
  };
  if (!moves_file.empty()) {
    std::istringstream in(read_text(moves_file));
    std::string line;
    while (std::getline(in, line)) {
      auto hash = line.find('#');
      if (hash != std::string::npos) line.resize(hash);
      if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
      step(parse_kirby_move(line));
    }
  }
  std::mt19937_64 rng(seed);
  for (int i = 0; i < random; ++i) {
    // Kind first, then a move of that kind, so no kind dominates.
    std::map<MoveKind, std::vector<Move>> cand;
    for (const Move& m : candidate_moves(D)) {
      try {
        apply_move(D, m);
        cand[m.kind].push_back(m);
      } catch (const PreconditionError&) {
      }
    }
    if (cand.empty()) break;
    auto it = std::next(cand.begin(), static_cast<long>(rng() % cand.size()));
    step(it->second[rng() % it->second.size()]);
  }
  out << "--- final diagram\n" << format_diagram(D);
  out << (ok ? "all moves preserve the invariant\n" : "invariance FAILED\n");
  return ok ? 0 : 2;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact HKR invariants of 4-thickenings over finite-dimensional ribbon Hopf algebras", "hkr"};
  app.require_subcommand(1);
  Common c;
  Source src;
  std::string z = "zrt", w, pres, moves_file;
  std::vector<std::string> zlist;
  bool all = false, boundary = false, t2 = false, verbose = false;
  int samples = 200, nmax = 5, n = 0, random = 0;
  uint64_t seed = 1;

  auto* ax = app.add_subcommand("check-axioms", "verify the Hopf, integral and ribbon axioms");
  add_common(ax, c);
  ax->add_flag("--all", all, "exhaustive pairwise checks");
  ax->add_option("--samples", samples, "random tuples for ternary checks")->capture_default_str();

  auto* ce = app.add_subcommand("center", "center dimensions, class products and lambda values");
  add_common(ce, c);

  auto* te = app.add_subcommand("trace-elements", "classify trace elements (T_Z, T3, T4)");
  add_common(te, c);
  te->add_option("--z", zlist, "elements to classify (default: the enumerated rays)");
  te->add_flag("--t2", t2, "also search for T2 witnesses");

  auto* fu = app.add_subcommand("fusion", "fusion coefficients of the semisimple quotient");
  add_common(fu, c, false);

  auto* inv = app.add_subcommand("invariant", "evaluate a diagram");
  add_common(inv, c);
  add_source(inv, src);
  inv->add_option("--z", z, "one | lambda | p0 | zrt | file:ELT")->capture_default_str();
  inv->add_option("--w", w, "dotted color (default: the T4 witness)");
  inv->add_flag("--boundary", boundary, "apply the boundary normalization (requires T3)");
  inv->add_flag("--verbose", verbose, "print raw value and normalization factors");

  auto* le = app.add_subcommand("lens", "boundary invariant of the lens space L(1,n)");
  add_common(le, c);
  le->add_option("--n", n, "surgery coefficient")->required();
  le->add_option("--z", z, "trace element")->capture_default_str();

  auto* th = app.add_subcommand("table-hrt", "lens-space value table and the Hennings/RT product check");
  add_common(th, c, false);
  th->add_option("--nmax", nmax, "largest framing")->capture_default_str()->check(CLI::Range(0, 50));

  auto* hc = app.add_subcommand("hom-count", "count homomorphisms from a presented group");
  add_common(hc, c);
  hc->add_option("--pres", pres, ".pres file");
  add_source(hc, src);

  auto* pr = app.add_subcommand("presentation", "presentation, linking matrix and signature of a diagram");
  add_source(pr, src);

  auto* mc = app.add_subcommand("moves-check", "apply Kirby moves and verify invariance");
  add_common(mc, c);
  add_source(mc, src);
  mc->add_option("--z", zlist, "trace elements (default: all named)");
  mc->add_option("--moves", moves_file, "file with one move per line");
  mc->add_option("--random", random, "number of random invariance-preserving moves")->capture_default_str();
  mc->add_option("--seed", seed, "random seed")->capture_default_str();
  mc->add_flag("--boundary", boundary, "compare boundary invariants");

  std::vector<std::string> rev(args.rbegin(), args.rend());
  try {
    app.parse(rev);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e, out, err);
    return code == 0 ? 0 : 1;
  }

  try {
    if (c.p < 3 || !is_prime(c.p)) throw PreconditionError("--p must be an odd prime");
    if (*ax) return cmd_check_axioms(c, all, samples, out);
    if (*ce) return cmd_center(c, out);
    if (*te) return cmd_trace_elements(c, zlist, t2, out);
    if (*fu) return cmd_fusion(c, out);
    if (*inv) return cmd_invariant(c, src, z, w, boundary, verbose, out);
    if (*le) return cmd_lens(c, n, z, out);
    if (*th) return cmd_table_hrt(c, nmax, out);
    if (*hc) return cmd_hom_count(c, pres, src, out);
    if (*pr) return cmd_presentation(src, out);
    if (*mc) return cmd_moves_check(c, src, zlist, moves_file, random, seed, boundary, out);
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  } catch (const StructureError& e) {
    err << "structure error: " << e.what() << "\n";
    return 1;
  } catch (const ConsistencyError& e) {
    err << "consistency error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return 2;
  }
  return 1;
}

}  // namespace hkr
