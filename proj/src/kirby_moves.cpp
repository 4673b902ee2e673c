#include <algorithm>
#include <iterator>
#include <set>
#include <sstream>

#include "hkr/errors.hpp"
#include "hkr/kirby.hpp"

namespace hkr {

namespace {

bool is_cross(EventKind k) { return k == EventKind::CrossPos || k == EventKind::CrossNeg; }

EventKind opposite(EventKind k) { return k == EventKind::CrossPos ? EventKind::CrossNeg : EventKind::CrossPos; }

EventKind cross_kind(int sign) { return sign > 0 ? EventKind::CrossPos : EventKind::CrossNeg; }

// Strands consumed from the top boundary and produced on the bottom one,
// starting at slot L.
struct Footprint {
  int L, kin, kout;
};

Footprint footprint(const Event& e) {
  switch (e.kind) {
    case EventKind::Cup: return {e.pos, 0, 2};
    case EventKind::Cap: return {e.pos, 2, 0};
    case EventKind::Dot: return {e.pos, e.hi - e.pos + 1, e.hi - e.pos + 1};
    case EventKind::Base: return {e.pos, 1, 1};
    default: return {e.pos, 2, 2};
  }
}

Event with_left(Event e, int L) {
  int span = e.hi - e.pos;
  e.pos = L;
  if (e.kind == EventKind::Dot) e.hi = L + span;
  return e;
}

[[noreturn]] void fail(const Move& m, const std::string& why) {
  throw PreconditionError(format_kirby_move(m) + ": " + why);
}

void check_row(const Diagram& D, const Move& m, int row, int count) {
  if (row < 0 || row + count > static_cast<int>(D.rows.size())) fail(m, "row out of range");
}

int count_before(const std::vector<int>& comps, int c, int limit) {
  int n = 0;
  for (int i = 0; i < limit && i < static_cast<int>(comps.size()); ++i) n += comps[i] == c;
  return n;
}

// Removes component c (0-based number-1) and the rows in `drop`, shifting
// everything else. Other components must not interact with c.
Diagram strip(const Diagram& D, const TraceResult& T, int c, const std::set<int>& drop, const Move& m) {
  Diagram out;
  out.top = D.top;
  const int number = c + 1;
  for (size_t r = 0; r < D.rows.size(); ++r) {
    if (drop.count(static_cast<int>(r))) continue;
    Event e = D.rows[r];
    const auto& top = T.comp_at[r];
    switch (e.kind) {
      case EventKind::Cup:
        if (T.comp_at[r + 1][e.pos] == c) continue;
        break;
      case EventKind::Cap:
      case EventKind::Base:
        if (top[e.pos] == c) continue;
        break;
      case EventKind::CrossPos:
      case EventKind::CrossNeg: {
        int hits = (top[e.pos] == c) + (top[e.pos + 1] == c);
        if (hits == 2) continue;
        if (hits == 1) fail(m, "component crosses another component");
        break;
      }
      case EventKind::Dot:
        for (int i = e.pos; i <= e.hi; ++i)
          if (top[i] == c) fail(m, "component pierces another dotted circle");
        break;
    }
    e = with_left(e, e.pos - count_before(top, c, e.pos));
    if (e.kind == EventKind::Base && e.id > number) --e.id;
    out.rows.push_back(e);
  }
  for (int f : D.flips)
    if (f != number) out.flips.push_back(f > number ? f - 1 : f);
  return out;
}

struct Census {
  int cups = 0, caps = 0, self_cross = 0, other_cross = 0, dot_legs = 0;
  int cup_row = -1, cap_row = -1;
};

Census census(const Diagram& D, const TraceResult& T, int c) {
  Census s;
  for (size_t r = 0; r < D.rows.size(); ++r) {
    const Event& e = D.rows[r];
    const auto& top = T.comp_at[r];
    if (e.kind == EventKind::Cup && T.comp_at[r + 1][e.pos] == c) {
      ++s.cups;
      s.cup_row = static_cast<int>(r);
    } else if (e.kind == EventKind::Cap && top[e.pos] == c) {
      ++s.caps;
      s.cap_row = static_cast<int>(r);
    } else if (is_cross(e.kind)) {
      int hits = (top[e.pos] == c) + (top[e.pos + 1] == c);
      if (hits == 2) ++s.self_cross;
      if (hits == 1) ++s.other_cross;
    } else if (e.kind == EventKind::Dot) {
      for (int i = e.pos; i <= e.hi; ++i) s.dot_legs += top[i] == c;
    }
  }
  return s;
}

int closed_component(const TraceResult& T, int number, const Move& m) {
  if (number < 1 || number > T.n_closed) fail(m, "no closed component " + std::to_string(number));
  return number - 1;
}

int dot_row(const Diagram& D, int id, const Move& m) {
  for (size_t r = 0; r < D.rows.size(); ++r)
    if (D.rows[r].kind == EventKind::Dot && D.rows[r].id == id) return static_cast<int>(r);
  fail(m, "no dot with id " + std::to_string(id));
}

int next_dot_id(const Diagram& D) {
  int id = 0;
  for (const auto& e : D.rows)
    if (e.kind == EventKind::Dot) id = std::max(id, e.id);
  return id + 1;
}

Diagram validated(Diagram D) {
  trace(D);
  return D;
}

// Doubles component b along the blackboard framing and band-sums component
// a with the copy next to a at boundary `row`, slots pos, pos+1.
Diagram handle_slide(const Diagram& D, const Move& m) {
  TraceResult T = trace(D);
  int a = closed_component(T, m.a, m), b = closed_component(T, m.b, m);
  if (a == b) fail(m, "a component cannot slide over itself");
  if (m.row < 0 || m.row >= static_cast<int>(T.widths.size()) || m.pos < 0 || m.pos + 1 >= T.widths[m.row])
    fail(m, "band position out of range");
  int left = T.comp_at[m.row][m.pos], right = T.comp_at[m.row][m.pos + 1];
  if (!((left == a && right == b) || (left == b && right == a))) fail(m, "components are not adjacent at the band");

  auto nb = [&](int x, int i) { return i + count_before(T.comp_at[x], b, i); };
  auto is_b = [&](int x, int i) { return T.comp_at[x][i] == b; };
  Diagram out;
  out.top = D.top;
  out.flips = D.flips;
  std::vector<int> new_start(D.rows.size() + 1);
  int base_row = -1, base_slot = -1;
  for (size_t r = 0; r < D.rows.size(); ++r) {
    const int x = static_cast<int>(r);
    new_start[r] = static_cast<int>(out.rows.size());
    const Event& e = D.rows[r];
    auto push = [&](EventKind k, int pos) { out.rows.push_back({k, pos}); };
    switch (e.kind) {
      case EventKind::Cup:
        if (T.comp_at[x + 1][e.pos] == b) {
          push(EventKind::Cup, nb(x, e.pos));
          push(EventKind::Cup, nb(x, e.pos) + 1);
        } else {
          push(EventKind::Cup, nb(x, e.pos));
        }
        break;
      case EventKind::Cap:
        if (is_b(x, e.pos)) {
          push(EventKind::Cap, nb(x, e.pos) + 1);
          push(EventKind::Cap, nb(x, e.pos));
        } else {
          push(EventKind::Cap, nb(x, e.pos));
        }
        break;
      case EventKind::CrossPos:
      case EventKind::CrossNeg: {
        int n0 = nb(x, e.pos);
        bool lb = is_b(x, e.pos), rb = is_b(x, e.pos + 1);
        if (lb && rb) {
          for (int d : {1, 0, 2, 1}) push(e.kind, n0 + d);
        } else if (lb) {
          push(e.kind, n0 + 1);
          push(e.kind, n0);
        } else if (rb) {
          push(e.kind, n0);
          push(e.kind, n0 + 1);
        } else {
          push(e.kind, n0);
        }
        break;
      }
      case EventKind::Dot: {
        Event d = e;
        d.pos = nb(x, e.pos);
        d.hi = e.hi >= e.pos ? nb(x, e.hi) + (is_b(x, e.hi) ? 1 : 0) : d.pos - 1;
        out.rows.push_back(d);
        break;
      }
      case EventKind::Base:
        if (is_b(x, e.pos)) {
          base_row = static_cast<int>(out.rows.size());
          base_slot = nb(x, e.pos);
          out.rows.push_back({EventKind::Base, base_slot, 0, e.id});
        } else {
          out.rows.push_back({EventKind::Base, nb(x, e.pos), 0, e.id});
        }
        break;
    }
  }
  new_start[D.rows.size()] = static_cast<int>(out.rows.size());

  // Band slot: the copy of b adjacent to a.
  const int band_boundary = new_start[m.row];
  int a_slot = nb(m.row, left == a ? m.pos : m.pos + 1);
  int b_slot = left == a ? nb(m.row, m.pos + 1) : nb(m.row, m.pos) + 1;
  // The base of b must sit on the copy that is not banded.
  Diagram probe = out;
  if (base_row >= 0) probe.rows.erase(probe.rows.begin() + base_row);
  TraceResult PT = trace(probe);
  int pushoff = PT.comp_at[band_boundary - (base_row >= 0 && base_row < band_boundary ? 1 : 0)][b_slot];
  if (base_row >= 0 && PT.comp_at[base_row][base_slot] == pushoff) out.rows[base_row].pos = base_slot + 1;
  if (base_row >= 0 && PT.comp_at[base_row][base_slot] == pushoff && base_slot + 1 >= PT.widths[base_row])
    throw ConsistencyError("handle slide: base relocation out of range");
  int Q = std::min(a_slot, b_slot);
  out.rows.insert(out.rows.begin() + band_boundary, {Event{EventKind::Cap, Q}, Event{EventKind::Cup, Q}});
  return validated(out);
}

Diagram commute(const Diagram& D, const Move& m) {
  check_row(D, m, m.row, 2);
  const Event e1 = D.rows[m.row], e2 = D.rows[m.row + 1];
  Footprint f1 = footprint(e1), f2 = footprint(e2);
  Event n1 = e1, n2 = e2;
  if (e1.kind == EventKind::Dot && is_cross(e2.kind) && e2.pos >= e1.pos && e2.pos + 1 <= e1.hi) {
    // A crossing inside the pierced bundle slides through the dotted circle.
  } else if (e2.kind == EventKind::Dot && is_cross(e1.kind) && e1.pos >= e2.pos && e1.pos + 1 <= e2.hi) {
  } else if (f2.L + f2.kin <= f1.L) {
    n1 = with_left(e1, f1.L + f2.kout - f2.kin);
  } else if (f2.L >= f1.L + f1.kout) {
    n2 = with_left(e2, f2.L - f1.kout + f1.kin);
  } else {
    fail(m, "rows overlap");
  }
  Diagram out = D;
  out.rows[m.row] = n2;
  out.rows[m.row + 1] = n1;
  return validated(out);
}

}  // namespace

std::string format_kirby_move(const Move& m) {
  static const char* names[] = {"r2-insert", "r2-remove", "r3",        "cup-slide",      "cap-slide",  "zigzag-insert",
                                "zigzag-remove", "handle-slide", "cancel-pair", "introduce-pair", "add-dot", "remove-dot",
                                "blow-up",   "blow-down", "flip",      "move-base",      "commute"};
  std::ostringstream s;
  s << names[static_cast<int>(m.kind)] << " row=" << m.row << " pos=" << m.pos << " sign=" << m.sign << " a=" << m.a
    << " b=" << m.b;
  return s.str();
}

Move parse_kirby_move(const std::string& text) {
  static const char* names[] = {"r2-insert", "r2-remove", "r3",        "cup-slide",      "cap-slide",  "zigzag-insert",
                                "zigzag-remove", "handle-slide", "cancel-pair", "introduce-pair", "add-dot", "remove-dot",
                                "blow-up",   "blow-down", "flip",      "move-base",      "commute"};
  std::istringstream in(text);
  std::string name;
  if (!(in >> name)) throw PreconditionError("empty move");
  auto it = std::find(std::begin(names), std::end(names), name);
  if (it == std::end(names)) throw PreconditionError("unknown move '" + name + "'");
  Move m{static_cast<MoveKind>(it - std::begin(names))};
  std::string tok;
  while (in >> tok) {
    auto eq = tok.find('=');
    if (eq == std::string::npos) throw PreconditionError("expected key=value, got '" + tok + "'");
    std::string key = tok.substr(0, eq);
    int value;
    try {
      size_t used = 0;
      value = std::stoi(tok.substr(eq + 1), &used);
      if (used + eq + 1 != tok.size()) throw std::invalid_argument(tok);
    } catch (const std::exception&) {
      throw PreconditionError("bad value in '" + tok + "'");
    }
    if (key == "row") m.row = value;
    else if (key == "pos") m.pos = value;
    else if (key == "sign") m.sign = value;
    else if (key == "a") m.a = value;
    else if (key == "b") m.b = value;
    else throw PreconditionError("unknown move field '" + key + "'");
  }
  return m;
}

Diagram apply_move(const Diagram& D, const Move& m) {
  Diagram out = D;
  auto& rows = out.rows;
  auto at = [&](int r) { return rows.begin() + r; };
  switch (m.kind) {
    case MoveKind::R2Insert: {
      TraceResult T = trace(D);
      if (m.row < 0 || m.row > static_cast<int>(D.rows.size())) fail(m, "row out of range");
      if (m.pos < 0 || m.pos + 1 >= T.widths[m.row]) fail(m, "position out of range");
      rows.insert(at(m.row), {Event{cross_kind(m.sign), m.pos}, Event{cross_kind(-m.sign), m.pos}});
      return validated(out);
    }
    case MoveKind::R2Remove: {
      check_row(D, m, m.row, 2);
      const Event &x = D.rows[m.row], &y = D.rows[m.row + 1];
      if (!is_cross(x.kind) || !is_cross(y.kind) || x.pos != y.pos || x.kind == y.kind)
        fail(m, "rows are not a cancelling crossing pair");
      rows.erase(at(m.row), at(m.row + 2));
      return validated(out);
    }
    case MoveKind::R3: {
      check_row(D, m, m.row, 3);
      const Event &x = D.rows[m.row], &y = D.rows[m.row + 1], &z = D.rows[m.row + 2];
      if (!is_cross(x.kind) || !is_cross(y.kind) || !is_cross(z.kind) || x.pos != z.pos || std::abs(x.pos - y.pos) != 1)
        fail(m, "rows are not a crossing triangle");
      if (x.kind == z.kind && x.kind != y.kind) fail(m, "sign pattern admits no third Reidemeister move");
      rows[m.row] = {z.kind, y.pos};
      rows[m.row + 1] = {y.kind, x.pos};
      rows[m.row + 2] = {x.kind, y.pos};
      return validated(out);
    }
    case MoveKind::CupSlide: {
      check_row(D, m, m.row, 2);
      const Event &c = D.rows[m.row], &x = D.rows[m.row + 1];
      if (c.kind != EventKind::Cup || !is_cross(x.kind) || std::abs(c.pos - x.pos) != 1)
        fail(m, "rows are not a cup followed by an adjacent crossing");
      rows[m.row] = {EventKind::Cup, x.pos};
      rows[m.row + 1] = {opposite(x.kind), c.pos};
      return validated(out);
    }
    case MoveKind::CapSlide: {
      check_row(D, m, m.row, 2);
      const Event &x = D.rows[m.row], &c = D.rows[m.row + 1];
      if (c.kind != EventKind::Cap || !is_cross(x.kind) || std::abs(c.pos - x.pos) != 1)
        fail(m, "rows are not a crossing followed by an adjacent cap");
      rows[m.row] = {opposite(x.kind), c.pos};
      rows[m.row + 1] = {EventKind::Cap, x.pos};
      return validated(out);
    }
    case MoveKind::ZigzagInsert: {
      TraceResult T = trace(D);
      if (m.row < 0 || m.row > static_cast<int>(D.rows.size())) fail(m, "row out of range");
      if (m.pos < 0 || m.pos >= T.widths[m.row]) fail(m, "position out of range");
      if (m.sign > 0)
        rows.insert(at(m.row), {Event{EventKind::Cup, m.pos + 1}, Event{EventKind::Cap, m.pos}});
      else
        rows.insert(at(m.row), {Event{EventKind::Cup, m.pos}, Event{EventKind::Cap, m.pos + 1}});
      return validated(out);
    }
    case MoveKind::ZigzagRemove: {
      check_row(D, m, m.row, 2);
      const Event &c = D.rows[m.row], &d = D.rows[m.row + 1];
      if (c.kind != EventKind::Cup || d.kind != EventKind::Cap || std::abs(c.pos - d.pos) != 1)
        fail(m, "rows are not a zigzag");
      rows.erase(at(m.row), at(m.row + 2));
      return validated(out);
    }
    case MoveKind::HandleSlide:
      return handle_slide(D, m);
    case MoveKind::CancelPair: {
      TraceResult T = trace(D);
      int r = dot_row(D, m.a, m);
      int c = closed_component(T, m.b, m);
      const Event& d = D.rows[r];
      if (d.hi != d.pos || T.comp_at[r][d.pos] != c)
        fail(m, "the dotted circle must be pierced exactly once, by the component");
      Census s = census(D, T, c);
      if (s.dot_legs != 1) fail(m, "the component passes through other dotted circles");
      if (s.other_cross) fail(m, "the component crosses other components");
      return validated(strip(D, T, c, {r}, m));
    }
    case MoveKind::IntroducePair: {
      if (D.top != 0) fail(m, "open tangle");
      int id = next_dot_id(D);
      rows.insert(rows.begin(), {Event{EventKind::Cup, 0}, Event{EventKind::Dot, 0, 0, id}, Event{EventKind::Cap, 0}});
      return validated(out);
    }
    case MoveKind::AddDot: {
      TraceResult T = trace(D);
      int c = closed_component(T, m.a, m);
      Census s = census(D, T, c);
      if (s.cups != 1 || s.caps != 1 || s.self_cross || s.other_cross || s.dot_legs)
        fail(m, "component is not an isolated 0-framed unknot");
      int gap = D.rows[s.cup_row].pos;
      Diagram st = strip(D, T, c, {}, m);
      // The cup row was dropped; the row index of the following events is cup_row.
      st.rows.insert(st.rows.begin() + s.cup_row, Event{EventKind::Dot, gap, gap - 1, next_dot_id(D)});
      return validated(st);
    }
    case MoveKind::RemoveDot: {
      int r = dot_row(D, m.a, m);
      const Event d = D.rows[r];
      if (d.hi != d.pos - 1) fail(m, "dotted circle is pierced");
      rows[r] = {EventKind::Cup, d.pos};
      rows.insert(at(r + 1), Event{EventKind::Cap, d.pos});
      return validated(out);
    }
    case MoveKind::BlowUp: {
      TraceResult T = trace(D);
      if (D.top != 0 || T.widths.back() != 0) fail(m, "open tangle");
      for (const auto& e : unknot_diagram(m.sign > 0 ? 1 : -1).rows) rows.push_back(e);
      return validated(out);
    }
    case MoveKind::BlowDown: {
      TraceResult T = trace(D);
      int c = closed_component(T, m.a, m);
      Census s = census(D, T, c);
      if (s.cups != 2 || s.caps != 2 || s.self_cross != 1 || s.other_cross || s.dot_legs)
        fail(m, "component is not an isolated unknot with framing ±1");
      return validated(strip(D, T, c, {}, m));
    }
    case MoveKind::Flip: {
      TraceResult T = trace(D);
      if (m.a < 1 || m.a > static_cast<int>(T.components.size())) fail(m, "no such component");
      auto it = std::find(out.flips.begin(), out.flips.end(), m.a);
      if (it != out.flips.end())
        out.flips.erase(it);
      else
        out.flips.push_back(m.a);
      return validated(out);
    }
    case MoveKind::MoveBase: {
      TraceResult T = trace(D);
      int c = closed_component(T, m.a, m);
      if (m.row < 0 || m.row > static_cast<int>(D.rows.size())) fail(m, "row out of range");
      if (m.pos < 0 || m.pos >= T.widths[m.row] || T.comp_at[m.row][m.pos] != c)
        fail(m, "slot does not belong to the component");
      int insert_at = m.row;
      for (size_t r = 0; r < D.rows.size(); ++r)
        if (D.rows[r].kind == EventKind::Base && D.rows[r].id == m.a) {
          rows.erase(at(static_cast<int>(r)));
          if (static_cast<int>(r) < insert_at) --insert_at;
          break;
        }
      rows.insert(at(insert_at), Event{EventKind::Base, m.pos, 0, m.a});
      return validated(out);
    }
    case MoveKind::Commute:
      return commute(D, m);
  }
  fail(m, "unknown move");
}

}  // namespace hkr
