#include "hkr/kirby.hpp"

#include <gmpxx.h>

#include <algorithm>
#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "hkr/errors.hpp"

namespace hkr {

namespace {

// Validation failure tied to a diagram row, so parse() can report the line.
class RowError : public PreconditionError {
 public:
  RowError(int row, const std::string& msg) : PreconditionError("row " + std::to_string(row) + ": " + msg), row_(row) {}
  int row() const { return row_; }

 private:
  int row_;
};

const char* keyword(EventKind k) {
  switch (k) {
    case EventKind::Cup: return "cup";
    case EventKind::Cap: return "cap";
    case EventKind::CrossPos: return "x+";
    case EventKind::CrossNeg: return "x-";
    case EventKind::Dot: return "dot";
    case EventKind::Base: return "base";
  }
  return "?";
}

struct Token {
  std::string text;
  int col;
};

std::vector<Token> tokenize(const std::string& line) {
  std::vector<Token> out;
  size_t i = 0;
  while (i < line.size()) {
    if (line[i] == '#') break;
    if (std::isspace(static_cast<unsigned char>(line[i]))) {
      ++i;
      continue;
    }
    size_t j = i;
    while (j < line.size() && !std::isspace(static_cast<unsigned char>(line[j])) && line[j] != '#') ++j;
    out.push_back({line.substr(i, j - i), static_cast<int>(i) + 1});
    i = j;
  }
  return out;
}

int parse_int(const Token& t, int line) {
  try {
    size_t used = 0;
    long v = std::stol(t.text, &used);
    if (used != t.text.size()) throw std::invalid_argument("trailing");
    return static_cast<int>(v);
  } catch (const std::exception&) {
    throw ParseError(line, t.col, "expected an integer, got '" + t.text + "'");
  }
}

}  // namespace

Diagram parse_diagram(const std::string& text) {
  Diagram D;
  std::vector<int> row_line, row_col;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  bool seen_event = false;
  while (std::getline(in, line)) {
    ++lineno;
    auto tok = tokenize(line);
    if (tok.empty()) continue;
    const std::string& kw = tok[0].text;
    auto need = [&](size_t n) {
      if (tok.size() != n + 1)
        throw ParseError(lineno, tok[0].col, "'" + kw + "' takes " + std::to_string(n) + " argument(s)");
    };
    if (kw == "top") {
      need(1);
      if (seen_event) throw ParseError(lineno, tok[0].col, "'top' must precede all events");
      D.top = parse_int(tok[1], lineno);
      if (D.top < 0) throw ParseError(lineno, tok[1].col, "negative width");
      continue;
    }
    if (kw == "flip") {
      need(1);
      D.flips.push_back(parse_int(tok[1], lineno));
      continue;
    }
    Event e{EventKind::Cup};
    if (kw == "cup" || kw == "cap" || kw == "x+" || kw == "x-") {
      need(1);
      e.kind = kw == "cup" ? EventKind::Cup : kw == "cap" ? EventKind::Cap : kw == "x+" ? EventKind::CrossPos : EventKind::CrossNeg;
      e.pos = parse_int(tok[1], lineno);
    } else if (kw == "dot") {
      need(3);
      e.kind = EventKind::Dot;
      e.pos = parse_int(tok[1], lineno);
      e.hi = parse_int(tok[2], lineno);
      e.id = parse_int(tok[3], lineno);
    } else if (kw == "base") {
      need(2);
      e.kind = EventKind::Base;
      e.pos = parse_int(tok[1], lineno);
      e.id = parse_int(tok[2], lineno);
    } else {
      throw ParseError(lineno, tok[0].col, "unknown event '" + kw + "'");
    }
    seen_event = true;
    D.rows.push_back(e);
    row_line.push_back(lineno);
    row_col.push_back(tok.size() > 1 ? tok[1].col : tok[0].col);
  }
  try {
    trace(D);
  } catch (const RowError& err) {
    int r = err.row();
    if (r >= 0 && r < static_cast<int>(row_line.size())) {
      std::string msg = err.what();
      msg = msg.substr(msg.find(": ") + 2);
      throw ParseError(row_line[r], row_col[r], msg);
    }
    throw ParseError(lineno + 1, 1, err.what());
  }
  return D;
}

Diagram load_diagram(const std::string& path) {
  std::ifstream f(path);
  if (!f) throw PreconditionError("cannot open diagram file '" + path + "'");
  std::stringstream ss;
  ss << f.rdbuf();
  return parse_diagram(ss.str());
}

std::string format_diagram(const Diagram& D) {
  std::ostringstream out;
  if (D.top > 0) out << "top " << D.top << "\n";
  for (const auto& e : D.rows) {
    out << keyword(e.kind) << " " << e.pos;
    if (e.kind == EventKind::Dot) out << " " << e.hi << " " << e.id;
    if (e.kind == EventKind::Base) out << " " << e.id;
    out << "\n";
  }
  for (int c : D.flips) out << "flip " << c << "\n";
  return out.str();
}

void save_diagram(const Diagram& D, const std::string& path) {
  std::ofstream f(path);
  if (!f) throw PreconditionError("cannot write diagram file '" + path + "'");
  f << format_diagram(D);
}

// ------------------------------------------------------------------ tracing

namespace {

enum class LinkKind { None, Vertical, Max, Min };

struct Link {
  LinkKind kind = LinkKind::None;
  int node = -1;
  int row = -1;
};

struct Graph {
  std::vector<int> offset;  // node id of (b, 0)
  std::vector<int> widths;
  std::vector<Link> up, down;
  std::vector<int> boundary, slot;  // inverse of offset

  int id(int b, int i) const { return offset[b] + i; }
};

Graph build_graph(const Diagram& D) {
  Graph G;
  const int R = static_cast<int>(D.rows.size());
  G.widths.push_back(D.top);
  std::set<int> dot_ids;
  for (int r = 0; r < R; ++r) {
    const Event& e = D.rows[r];
    int w = G.widths.back();
    switch (e.kind) {
      case EventKind::Cup:
        if (e.pos < 0 || e.pos > w) throw RowError(r, "cup position out of range (width " + std::to_string(w) + ")");
        G.widths.push_back(w + 2);
        break;
      case EventKind::Cap:
        if (e.pos < 0 || e.pos + 1 >= w) throw RowError(r, "cap position out of range (width " + std::to_string(w) + ")");
        G.widths.push_back(w - 2);
        break;
      case EventKind::CrossPos:
      case EventKind::CrossNeg:
        if (e.pos < 0 || e.pos + 1 >= w)
          throw RowError(r, "crossing position out of range (width " + std::to_string(w) + ")");
        G.widths.push_back(w);
        break;
      case EventKind::Dot:
        if (e.pos < 0 || e.hi < e.pos - 1 || e.hi >= w) throw RowError(r, "dot span out of range");
        if (e.id <= 0) throw RowError(r, "dot id must be positive");
        if (!dot_ids.insert(e.id).second) throw RowError(r, "dot id " + std::to_string(e.id) + " used twice");
        G.widths.push_back(w);
        break;
      case EventKind::Base:
        if (e.pos < 0 || e.pos >= w) throw RowError(r, "base position out of range");
        if (e.id <= 0) throw RowError(r, "component number must be positive");
        G.widths.push_back(w);
        break;
    }
  }
  int total = 0;
  for (int w : G.widths) {
    G.offset.push_back(total);
    for (int i = 0; i < w; ++i) {
      G.boundary.push_back(static_cast<int>(G.offset.size()) - 1);
      G.slot.push_back(i);
    }
    total += w;
  }
  G.up.assign(total, {});
  G.down.assign(total, {});
  auto vertical = [&](int r, int i, int j) {
    int a = G.id(r, i), b = G.id(r + 1, j);
    G.down[a] = {LinkKind::Vertical, b, r};
    G.up[b] = {LinkKind::Vertical, a, r};
  };
  for (int r = 0; r < R; ++r) {
    const Event& e = D.rows[r];
    int w = G.widths[r];
    int P = e.pos;
    switch (e.kind) {
      case EventKind::Cup:
        for (int i = 0; i < w; ++i) vertical(r, i, i < P ? i : i + 2);
        G.up[G.id(r + 1, P)] = {LinkKind::Max, G.id(r + 1, P + 1), r};
        G.up[G.id(r + 1, P + 1)] = {LinkKind::Max, G.id(r + 1, P), r};
        break;
      case EventKind::Cap:
        for (int i = 0; i < w; ++i)
          if (i != P && i != P + 1) vertical(r, i, i < P ? i : i - 2);
        G.down[G.id(r, P)] = {LinkKind::Min, G.id(r, P + 1), r};
        G.down[G.id(r, P + 1)] = {LinkKind::Min, G.id(r, P), r};
        break;
      case EventKind::CrossPos:
      case EventKind::CrossNeg:
        for (int i = 0; i < w; ++i) vertical(r, i, i == P ? P + 1 : i == P + 1 ? P : i);
        break;
      default:
        for (int i = 0; i < w; ++i) vertical(r, i, i);
    }
  }
  return G;
}

struct Walk {
  std::vector<Visit> visits;
  std::vector<std::pair<int, bool>> nodes;  // (node, moving down)
  int base_row = -1;  // Base event met on the walk
  size_t base_at = 0;  // visit index where it was met
  int base_count = 0;
  bool closed = false;
};

// Follows the strand from `start`, travelling down if `down`.
Walk walk(const Diagram& D, const Graph& G, int start, bool down) {
  Walk W;
  int n = start;
  bool d = down;
  const size_t limit = 2 * G.up.size() + 4;
  while (true) {
    W.nodes.emplace_back(n, d);
    if (W.nodes.size() > limit) throw ConsistencyError("strand walk does not terminate");
    const Link& L = d ? G.down[n] : G.up[n];
    if (L.kind == LinkKind::None) break;
    int from_slot = G.slot[n];
    if (L.kind == LinkKind::Vertical) {
      const Event& e = D.rows[L.row];
      int top_slot = d ? from_slot : G.slot[L.node];
      if ((e.kind == EventKind::CrossPos || e.kind == EventKind::CrossNeg) && (top_slot == e.pos || top_slot == e.pos + 1)) {
        bool over = e.kind == EventKind::CrossPos ? top_slot == e.pos + 1 : top_slot == e.pos;
        W.visits.push_back({over ? Visit::Over : Visit::Under, L.row, L.row, d});
      } else if (e.kind == EventKind::Dot && top_slot >= e.pos && top_slot <= e.hi) {
        W.visits.push_back({Visit::DotLeg, L.row, top_slot - e.pos, d});
      } else if (e.kind == EventKind::Base && top_slot == e.pos) {
        ++W.base_count;
        W.base_row = L.row;
        // Base sits at the top boundary of its row: before the row when
        // travelling down, after it when travelling up (no beads in a Base row).
        W.base_at = W.visits.size();
      }
      n = L.node;
    } else {
      bool ltr = G.slot[L.node] > from_slot;
      W.visits.push_back({L.kind == LinkKind::Max ? Visit::Max : Visit::Min, L.row, 0, d, ltr});
      n = L.node;
      d = !d;
    }
    if (n == start && d == down) {
      W.closed = true;
      break;
    }
  }
  return W;
}

}  // namespace

TraceResult trace(const Diagram& D) {
  Graph G = build_graph(D);
  TraceResult T;
  T.widths = G.widths;
  const int R = static_cast<int>(D.rows.size());
  const int total = static_cast<int>(G.up.size());
  std::vector<int> comp(total, -1);

  struct Raw {
    int start;
    bool down;
    bool closed;
    int first_row;
  };
  std::vector<Raw> raws;
  auto discover = [&](int start, bool down) {
    Walk W = walk(D, G, start, down);
    int idx = static_cast<int>(raws.size());
    for (auto [nd, dd] : W.nodes) comp[nd] = idx;
    raws.push_back({start, down, W.closed, G.boundary[start]});
  };
  for (int i = 0; i < G.widths[0]; ++i)
    if (comp[G.id(0, i)] < 0) discover(G.id(0, i), true);
  for (int i = 0; i < G.widths[R]; ++i)
    if (comp[G.id(R, i)] < 0) discover(G.id(R, i), false);
  for (int r = 0; r < R; ++r)
    if (D.rows[r].kind == EventKind::Cup && comp[G.id(r + 1, D.rows[r].pos)] < 0)
      discover(G.id(r + 1, D.rows[r].pos), true);
  for (auto& r : raws)
    if (!r.closed && G.boundary[r.start] != 0 && G.boundary[r.start] != R)
      throw RowError(r.first_row, "dangling strand");

  // Numbering: explicit bases first, remaining closed components in
  // discovery order, then open components.
  std::vector<int> number(raws.size(), 0);
  std::map<int, int> taken;  // number -> raw index
  int n_closed = 0;
  for (auto& r : raws) n_closed += r.closed;
  for (int r = 0; r < R; ++r) {
    const Event& e = D.rows[r];
    if (e.kind != EventKind::Base) continue;
    int c = comp[G.id(r, e.pos)];
    if (!raws[c].closed) throw RowError(r, "base on an open component");
    if (number[c]) throw RowError(r, "duplicate base on one component");
    if (taken.count(e.id)) throw RowError(r, "component number " + std::to_string(e.id) + " used twice");
    if (e.id > n_closed) throw RowError(r, "component number " + std::to_string(e.id) + " exceeds the component count");
    number[c] = e.id;
    taken[e.id] = c;
  }
  int next = 1;
  for (size_t c = 0; c < raws.size(); ++c) {
    if (!raws[c].closed || number[c]) continue;
    while (taken.count(next)) ++next;
    number[c] = next;
    taken[next] = static_cast<int>(c);
  }
  int open_next = n_closed + 1;
  for (size_t c = 0; c < raws.size(); ++c)
    if (!raws[c].closed) number[c] = open_next++;

  std::set<int> flips;
  for (int f : D.flips) {
    if (f < 1 || f >= open_next) throw RowError(R, "flip names unknown component " + std::to_string(f));
    if (!flips.insert(f).second) throw RowError(R, "component " + std::to_string(f) + " flipped twice");
  }

  T.n_closed = n_closed;
  T.components.resize(raws.size());
  T.down_at.assign(G.widths.size(), {});
  T.comp_at.assign(G.widths.size(), {});
  for (size_t b = 0; b < G.widths.size(); ++b) {
    T.down_at[b].assign(G.widths[b], 0);
    T.comp_at[b].assign(G.widths[b], -1);
  }
  for (size_t c = 0; c < raws.size(); ++c) {
    const Raw& r = raws[c];
    bool flipped = flips.count(number[c]) > 0;
    int start = r.start;
    bool down = r.down;
    if (flipped) {
      if (r.closed) {
        down = !down;
      } else {
        Walk fw = walk(D, G, r.start, r.down);
        start = fw.nodes.back().first;
        down = !fw.nodes.back().second;
      }
    }
    Walk W = walk(D, G, start, down);
    if (W.base_count > 1) throw RowError(W.base_row, "duplicate base on one component");
    TracedComponent tc;
    tc.number = number[c];
    tc.closed = r.closed;
    tc.flipped = flipped;
    tc.visits = std::move(W.visits);
    if (W.base_count == 1)
      std::rotate(tc.visits.begin(), tc.visits.begin() + static_cast<long>(W.base_at), tc.visits.end());
    size_t slot = static_cast<size_t>(number[c] - 1);
    for (auto [nd, dd] : W.nodes) {
      T.down_at[G.boundary[nd]][G.slot[nd]] = dd;
      T.comp_at[G.boundary[nd]][G.slot[nd]] = static_cast<int>(slot);
    }
    T.components[slot] = std::move(tc);
  }
  for (int r = 0; r < R; ++r)
    if (D.rows[r].kind == EventKind::Dot) T.dot_ids.push_back(D.rows[r].id);
  std::sort(T.dot_ids.begin(), T.dot_ids.end());
  T.dot_row.resize(T.dot_ids.size());
  for (int r = 0; r < R; ++r)
    if (D.rows[r].kind == EventKind::Dot) {
      auto it = std::lower_bound(T.dot_ids.begin(), T.dot_ids.end(), D.rows[r].id);
      T.dot_row[it - T.dot_ids.begin()] = r;
    }
  return T;
}

// ------------------------------------------------------------------ linking

void signature(const std::vector<std::vector<long>>& m, int& plus, int& minus, int& zero) {
  const size_t n = m.size();
  std::vector<std::vector<mpq_class>> a(n, std::vector<mpq_class>(n));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) a[i][j] = m[i][j];
  plus = minus = zero = 0;
  std::vector<char> done(n, 0);
  for (size_t step = 0; step < n; ++step) {
    size_t piv = n;
    for (size_t i = 0; i < n && piv == n; ++i)
      if (!done[i] && a[i][i] != 0) piv = i;
    if (piv == n) {
      // Zero diagonal: a nonzero off-diagonal a_ij makes row i + row j a pivot.
      size_t pi = n, pj = n;
      for (size_t i = 0; i < n && pi == n; ++i)
        for (size_t j = 0; j < n; ++j)
          if (!done[i] && !done[j] && i != j && a[i][j] != 0) {
            pi = i;
            pj = j;
            break;
          }
      if (pi == n) break;
      for (size_t k = 0; k < n; ++k) a[pi][k] += a[pj][k];
      for (size_t k = 0; k < n; ++k) a[k][pi] += a[k][pj];
      piv = pi;
    }
    const mpq_class d = a[piv][piv];
    (d > 0 ? plus : minus) += 1;
    done[piv] = 1;
    for (size_t i = 0; i < n; ++i) {
      if (done[i] || a[i][piv] == 0) continue;
      mpq_class f = a[i][piv] / d;
      for (size_t k = 0; k < n; ++k) a[i][k] -= f * a[piv][k];
    }
    for (size_t k = 0; k < n; ++k)
      if (!done[k]) a[k][piv] = a[piv][k] = 0;
  }
  zero = static_cast<int>(n) - plus - minus;
}

LinkingData linking_data(const Diagram& D) {
  TraceResult T = trace(D);
  if (D.top != 0 || T.widths.back() != 0) throw PreconditionError("linking_data: open tangle");
  const int n = T.n_closed;
  LinkingData L;
  L.matrix.assign(n, std::vector<long>(n, 0));
  for (size_t r = 0; r < D.rows.size(); ++r) {
    const Event& e = D.rows[r];
    if (e.kind != EventKind::CrossPos && e.kind != EventKind::CrossNeg) continue;
    int a = T.comp_at[r][e.pos], b = T.comp_at[r][e.pos + 1];
    long s = e.kind == EventKind::CrossPos ? 1 : -1;
    if (!T.down_at[r][e.pos]) s = -s;
    if (!T.down_at[r][e.pos + 1]) s = -s;
    L.matrix[a][b] += s;
    if (a != b) L.matrix[b][a] += s;
  }
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      if (L.matrix[i][j] % 2 != 0) throw ConsistencyError("odd crossing count between components");
      L.matrix[i][j] /= 2;
      L.matrix[j][i] /= 2;
    }
  signature(L.matrix, L.sigma_plus, L.sigma_minus, L.sigma_zero);
  L.n_dotted = static_cast<int>(T.dot_ids.size());
  for (int i = 0; i < n; ++i) L.parity.push_back(static_cast<int>(((L.matrix[i][i] % 2) + 2) % 2));
  return L;
}

Presentation extract_presentation(const Diagram& D) {
  TraceResult T = trace(D);
  if (D.top != 0 || T.widths.back() != 0) throw PreconditionError("extract_presentation: open tangle");
  Presentation P;
  P.n_generators = static_cast<int>(T.dot_ids.size());
  for (int c = 0; c < T.n_closed; ++c) {
    Word w;
    for (const auto& v : T.components[c].visits) {
      if (v.kind != Visit::DotLeg) continue;
      int id = D.rows[v.row].id;
      int gen = static_cast<int>(std::lower_bound(T.dot_ids.begin(), T.dot_ids.end(), id) - T.dot_ids.begin()) + 1;
      w.push_back(v.down ? gen : -gen);
    }
    P.relators.push_back(std::move(w));
  }
  return P;
}

// ------------------------------------------------------------------ builders

Diagram unknot_diagram(int framing) {
  Diagram D;
  D.rows.push_back({EventKind::Cup, 0});
  for (int k = 0; k < std::abs(framing); ++k) {
    D.rows.push_back({EventKind::Cup, 1});
    D.rows.push_back({framing > 0 ? EventKind::CrossPos : EventKind::CrossNeg, 0});
    D.rows.push_back({EventKind::Cap, 1});
  }
  D.rows.push_back({EventKind::Cap, 0});
  return D;
}

Diagram hopf_diagram() {
  return parse_diagram("cup 0\ncup 1\nx+ 0\nx+ 2\ncap 1\ncap 0\n");
}

Diagram lens_diagram(int n) { return unknot_diagram(n); }

Diagram s1xd3_diagram() {
  Diagram D;
  D.rows.push_back({EventKind::Dot, 0, -1, 1});
  return D;
}

Diagram cancel_pair_diagram() { return parse_diagram("cup 0\ndot 0 0 1\ncap 0\n"); }

Diagram disjoint_union(const Diagram& A, const Diagram& B) {
  if (A.top || B.top) throw PreconditionError("disjoint_union: open tangle");
  TraceResult TA = trace(A);
  if (TA.widths.back() != 0) throw PreconditionError("disjoint_union: open tangle");
  int dot_shift = TA.dot_ids.empty() ? 0 : TA.dot_ids.back();
  Diagram D = A;
  bool b_has_base = false;
  for (const auto& e : B.rows) b_has_base |= e.kind == EventKind::Base;
  bool a_has_base = false;
  for (const auto& e : A.rows) a_has_base |= e.kind == EventKind::Base;
  if (b_has_base && !a_has_base && TA.n_closed > 0) {
    // Pin A's numbering so B's explicit numbers can be shifted past it.
    std::vector<Event> rows;
    for (const auto& e : A.rows) rows.push_back(e);
    D.rows.clear();
    for (size_t r = 0; r < rows.size(); ++r) {
      D.rows.push_back(rows[r]);
      if (rows[r].kind == EventKind::Cup) {
        int c = TA.comp_at[r + 1][rows[r].pos];
        bool first = true;
        for (size_t s = 0; s < r; ++s)
          if (rows[s].kind == EventKind::Cup && TA.comp_at[s + 1][rows[s].pos] == c) first = false;
        if (first) D.rows.push_back({EventKind::Base, rows[r].pos, 0, TA.components[c].number});
      }
    }
  }
  for (auto e : B.rows) {
    if (e.kind == EventKind::Dot) e.id += dot_shift;
    if (e.kind == EventKind::Base) e.id += TA.n_closed;
    D.rows.push_back(e);
  }
  for (int f : B.flips) D.flips.push_back(f + TA.n_closed);
  trace(D);
  return D;
}

}  // namespace hkr
