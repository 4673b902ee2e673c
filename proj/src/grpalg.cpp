#include "hkr/grpalg.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>
#include <thread>

#include "hkr/errors.hpp"

namespace hkr {

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw PreconditionError("cannot open " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

FiniteGroup make_group(std::string name, int order, std::vector<int> table) {
  if (order < 1 || table.size() != size_t(order) * order)
    throw PreconditionError("Cayley table has wrong size");
  for (int x : table)
    if (x < 0 || x >= order) throw PreconditionError("Cayley table entry out of range");
  FiniteGroup G{std::move(name), order, 0, std::move(table), {}};
  for (int a = 0; a < order; ++a)
    if (G.mul(0, a) != a || G.mul(a, 0) != a)
      throw PreconditionError("element 0 is not the identity");
  for (int a = 0; a < order; ++a)
    for (int b = 0; b < order; ++b)
      for (int c = 0; c < order; ++c)
        if (G.mul(G.mul(a, b), c) != G.mul(a, G.mul(b, c)))
          throw PreconditionError("Cayley table is not associative at (" + std::to_string(a) + "," +
                                  std::to_string(b) + "," + std::to_string(c) + ")");
  G.inv.assign(order, -1);
  for (int a = 0; a < order; ++a)
    for (int b = 0; b < order; ++b)
      if (G.mul(a, b) == 0 && G.mul(b, a) == 0) G.inv[a] = b;
  for (int a = 0; a < order; ++a)
    if (G.inv[a] < 0) throw PreconditionError("element " + std::to_string(a) + " has no inverse");
  return G;
}

FiniteGroup parse_cayley(const std::string& text, const std::string& name) {
  std::vector<int> entries;
  int rows = 0;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    std::replace(line.begin(), line.end(), ',', ' ');
    std::istringstream ls(line);
    std::string tok;
    int cols = 0;
    while (ls >> tok) {
      try {
        size_t used = 0;
        entries.push_back(std::stoi(tok, &used));
        if (used != tok.size()) throw std::invalid_argument(tok);
      } catch (const std::exception&) {
        throw PreconditionError("Cayley table: bad entry '" + tok + "'");
      }
      ++cols;
    }
    ++rows;
    if (cols != static_cast<int>(entries.size()) / rows)
      throw PreconditionError("Cayley table: ragged row " + std::to_string(rows));
  }
  return make_group(name, rows, std::move(entries));
}

FiniteGroup load_cayley(const std::string& path) {
  std::string name = path;
  auto slash = name.find_last_of('/');
  if (slash != std::string::npos) name = name.substr(slash + 1);
  return parse_cayley(read_file(path), name);
}

std::string cayley_csv(const FiniteGroup& G) {
  std::ostringstream os;
  for (int a = 0; a < G.order; ++a) {
    for (int b = 0; b < G.order; ++b) os << (b ? "," : "") << G.mul(a, b);
    os << "\n";
  }
  return os.str();
}

FiniteGroup cyclic_group(int n) {
  std::vector<int> t(size_t(n) * n);
  for (int a = 0; a < n; ++a)
    for (int b = 0; b < n; ++b) t[size_t(a) * n + b] = (a + b) % n;
  return make_group("Z" + std::to_string(n), n, std::move(t));
}

FiniteGroup symmetric_group(int n) {
  std::vector<int> base(n);
  std::iota(base.begin(), base.end(), 0);
  std::vector<std::vector<int>> perms;
  do perms.push_back(base);
  while (std::next_permutation(base.begin(), base.end()));
  int order = static_cast<int>(perms.size());
  auto find = [&](const std::vector<int>& q) {
    return static_cast<int>(std::find(perms.begin(), perms.end(), q) - perms.begin());
  };
  std::vector<int> t(size_t(order) * order);
  std::vector<int> comp(n);
  for (int a = 0; a < order; ++a)
    for (int b = 0; b < order; ++b) {
      // (a*b)(x) = a(b(x))
      for (int x = 0; x < n; ++x) comp[x] = perms[a][perms[b][x]];
      t[size_t(a) * order + b] = find(comp);
    }
  return make_group("S" + std::to_string(n), order, std::move(t));
}

FiniteGroup named_group(const std::string& name) {
  if (name.size() >= 2 && (name[0] == 'Z' || name[0] == 'S')) {
    try {
      int n = std::stoi(name.substr(1));
      if (n >= 1 && name[0] == 'Z' && n <= 1000) return cyclic_group(n);
      if (n >= 1 && name[0] == 'S' && n <= 5) return symmetric_group(n);
    } catch (const std::exception&) {
    }
  }
  throw PreconditionError("unknown group '" + name + "'");
}

// ------------------------------------------------------------ presentations

Presentation parse_presentation(const std::string& text) {
  Presentation P;
  std::istringstream in(text);
  std::string line;
  bool have_header = false;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.resize(hash);
    std::istringstream ls(line);
    std::vector<std::string> toks;
    std::string tok;
    while (ls >> tok) toks.push_back(tok);
    if (toks.empty()) continue;
    if (!have_header) {
      if (toks.size() != 2 || toks[0] != "generators")
        throw ParseError(lineno, 1, "expected 'generators n'");
      try {
        P.n_generators = std::stoi(toks[1]);
      } catch (const std::exception&) {
        throw ParseError(lineno, 12, "bad generator count");
      }
      if (P.n_generators < 0) throw ParseError(lineno, 12, "negative generator count");
      have_header = true;
      continue;
    }
    Word w;
    if (toks.size() == 1 && toks[0] == "1") {
      P.relators.push_back(w);
      continue;
    }
    for (const auto& t : toks) {
      if (t.size() < 2 || (t[0] != '+' && t[0] != '-'))
        throw ParseError(lineno, 1, "letter '" + t + "' must be a signed index such as +1 or -2");
      int k;
      try {
        size_t used = 0;
        k = std::stoi(t.substr(1), &used);
        if (used + 1 != t.size()) throw std::invalid_argument(t);
      } catch (const std::exception&) {
        throw ParseError(lineno, 1, "bad letter '" + t + "'");
      }
      if (k < 1 || k > P.n_generators)
        throw ParseError(lineno, 1, "generator index " + std::to_string(k) + " out of range");
      w.push_back(t[0] == '+' ? k : -k);
    }
    P.relators.push_back(w);
  }
  if (!have_header) throw ParseError(lineno, 1, "missing 'generators n' header");
  return P;
}

Presentation load_presentation(const std::string& path) { return parse_presentation(read_file(path)); }

std::string format_presentation(const Presentation& P) {
  std::ostringstream os;
  os << "generators " << P.n_generators << "\n";
  for (const auto& w : P.relators) {
    if (w.empty()) {
      os << "1\n";
      continue;
    }
    for (size_t i = 0; i < w.size(); ++i) os << (i ? " " : "") << (w[i] > 0 ? "+" : "-") << std::abs(w[i]);
    os << "\n";
  }
  return os.str();
}

std::string pretty_presentation(const Presentation& P) {
  std::ostringstream os;
  os << "<";
  for (int k = 1; k <= P.n_generators; ++k) os << (k > 1 ? "," : "") << "x" << k;
  os << " |";
  for (size_t r = 0; r < P.relators.size(); ++r) {
    os << (r ? ", " : " ");
    if (P.relators[r].empty()) os << "1";
    for (size_t i = 0; i < P.relators[r].size(); ++i) {
      int l = P.relators[r][i];
      os << (i ? " " : "") << "x" << std::abs(l) << (l < 0 ? "^-1" : "");
    }
  }
  os << ">";
  return os.str();
}

// ------------------------------------------------------------ group algebra

HopfPtr group_algebra(const FiniteGroup& G, int p) {
  auto H = std::make_shared<HopfData>();
  H->name = "group:" + G.name;
  H->p = p;
  H->dim = static_cast<Index>(G.order);
  for (int a = 0; a < G.order; ++a) H->labels.push_back("g" + std::to_string(a));
  H->mul_table.resize(size_t(H->dim) * H->dim);
  H->comul_table.resize(H->dim);
  H->antipode_table.resize(H->dim);
  H->counit_table.assign(H->dim, H->one());
  H->lambda_row.assign(H->dim, H->zero());
  H->lambda_row[G.identity] = H->one();
  for (int a = 0; a < G.order; ++a) {
    for (int b = 0; b < G.order; ++b)
      H->mul_table[size_t(a) * H->dim + b] = AlgElem::basis(G.mul(a, b), H->one());
    Index pr[2] = {Index(a), Index(a)};
    TensorElem shape(2, H->dim);
    H->comul_table[a] = TensorElem::from_terms(2, H->dim, {{shape.pack(pr), H->one()}});
    H->antipode_table[a] = AlgElem::basis(G.inv[a], H->one());
    H->Lambda += AlgElem::basis(a, H->one());
    H->generators.push_back(AlgElem::basis(a, H->one()));
  }
  H->unit = AlgElem::basis(G.identity, H->one());
  H->g = H->unit;
  H->g_inv = H->unit;
  H->R.push_back({H->unit, H->unit});
  finalize(*H);
  return H;
}

// ------------------------------------------------------------ counting

int eval_word(const FiniteGroup& G, const Word& w, const std::vector<int>& assignment) {
  int x = G.identity;
  for (int l : w) {
    int a = assignment[std::abs(l) - 1];
    x = G.mul(x, l > 0 ? a : G.inv[a]);
  }
  return x;
}

uint64_t hom_count(const Presentation& P, const FiniteGroup& G, int jobs) {
  long double total = 1;
  for (int k = 0; k < P.n_generators; ++k) total *= G.order;
  if (total > 1e8L) throw PreconditionError("hom_count: |G|^n exceeds 1e8");
  uint64_t n_tuples = static_cast<uint64_t>(total);
  jobs = std::max(1, std::min<int>(jobs, static_cast<int>(std::min<uint64_t>(n_tuples, 64))));
  std::vector<uint64_t> counts(jobs, 0);
  auto worker = [&](int w) {
    std::vector<int> a(P.n_generators);
    for (uint64_t t = w; t < n_tuples; t += jobs) {
      uint64_t r = t;
      for (int k = 0; k < P.n_generators; ++k) {
        a[k] = static_cast<int>(r % G.order);
        r /= G.order;
      }
      bool ok = true;
      for (const auto& rel : P.relators)
        if (eval_word(G, rel, a) != G.identity) {
          ok = false;
          break;
        }
      if (ok) ++counts[w];
    }
  };
  if (jobs == 1) {
    worker(0);
  } else {
    std::vector<std::thread> th;
    for (int w = 0; w < jobs; ++w) th.emplace_back(worker, w);
    for (auto& t : th) t.join();
  }
  return std::accumulate(counts.begin(), counts.end(), uint64_t(0));
}

// ------------------------------------------------------------ AC moves

Word invert_word(const Word& w) {
  Word r(w.rbegin(), w.rend());
  for (int& l : r) l = -l;
  return r;
}

namespace {

void check_word(const Presentation& P, const Word& w) {
  for (int l : w)
    if (l == 0 || std::abs(l) > P.n_generators)
      throw PreconditionError("word letter " + std::to_string(l) + " out of range");
}

void check_rel(const Presentation& P, int i) {
  if (i < 1 || i > static_cast<int>(P.relators.size()))
    throw PreconditionError("relator index " + std::to_string(i) + " out of range");
}

}  // namespace

Presentation ac_move(const Presentation& P, const AcMove& m) {
  Presentation Q = P;
  switch (m.kind) {
    case AcKind::Swap:
      check_rel(P, m.i);
      check_rel(P, m.j);
      std::swap(Q.relators[m.i - 1], Q.relators[m.j - 1]);
      break;
    case AcKind::Conjugate: {
      check_rel(P, m.i);
      check_word(P, m.word);
      Word w = m.word;
      const Word& r = P.relators[m.i - 1];
      w.insert(w.end(), r.begin(), r.end());
      Word wi = invert_word(m.word);
      w.insert(w.end(), wi.begin(), wi.end());
      Q.relators[m.i - 1] = w;
      break;
    }
    case AcKind::Invert:
      check_rel(P, m.i);
      Q.relators[m.i - 1] = invert_word(P.relators[m.i - 1]);
      break;
    case AcKind::Multiply: {
      check_rel(P, m.i);
      check_rel(P, m.j);
      if (m.i == m.j) throw PreconditionError("multiply needs two distinct relators");
      Word w = P.relators[m.i - 1];
      const Word& r = P.relators[m.j - 1];
      w.insert(w.end(), r.begin(), r.end());
      Q.relators[m.i - 1] = w;
      break;
    }
    case AcKind::AddGenerator: {
      check_word(P, m.word);
      Q.n_generators = P.n_generators + 1;
      Word w{Q.n_generators};
      w.insert(w.end(), m.word.begin(), m.word.end());
      Q.relators.push_back(w);
      break;
    }
    case AcKind::RemoveGenerator: {
      check_rel(P, m.i);
      const Word& r = P.relators[m.i - 1];
      if (r.empty() || r[0] <= 0)
        throw PreconditionError("remove_generator: relator must have the form y R");
      int y = r[0];
      for (size_t k = 0; k < P.relators.size(); ++k)
        for (size_t t = 0; t < P.relators[k].size(); ++t) {
          if (k == size_t(m.i - 1) && t == 0) continue;
          if (std::abs(P.relators[k][t]) == y)
            throw PreconditionError("remove_generator: generator " + std::to_string(y) +
                                    " occurs outside the leading letter of relator " +
                                    std::to_string(m.i));
        }
      Q.relators.erase(Q.relators.begin() + (m.i - 1));
      Q.n_generators = P.n_generators - 1;
      for (auto& w : Q.relators)
        for (int& l : w)
          if (std::abs(l) > y) l += l > 0 ? -1 : 1;
      break;
    }
  }
  return Q;
}

std::string format_move(const AcMove& m) {
  std::ostringstream os;
  auto word = [&] {
    std::ostringstream ws;
    for (size_t i = 0; i < m.word.size(); ++i) ws << (i ? " " : "") << m.word[i];
    return ws.str();
  };
  switch (m.kind) {
    case AcKind::Swap: os << "swap(" << m.i << "," << m.j << ")"; break;
    case AcKind::Conjugate: os << "conjugate(" << m.i << ", [" << word() << "])"; break;
    case AcKind::Invert: os << "invert(" << m.i << ")"; break;
    case AcKind::Multiply: os << "multiply(" << m.i << "," << m.j << ")"; break;
    case AcKind::AddGenerator: os << "add_generator([" << word() << "])"; break;
    case AcKind::RemoveGenerator: os << "remove_generator(" << m.i << ")"; break;
  }
  return os.str();
}

Presentation wedge(const Presentation& P, const Presentation& Q) {
  Presentation W = P;
  W.n_generators = P.n_generators + Q.n_generators;
  for (Word w : Q.relators) {
    for (int& l : w) l += l > 0 ? P.n_generators : -P.n_generators;
    W.relators.push_back(w);
  }
  return W;
}

}  // namespace hkr
