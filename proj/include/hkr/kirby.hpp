#pragma once

#include <string>
#include <vector>

#include "hkr/grpalg.hpp"

namespace hkr {

enum class EventKind { Cup, Cap, CrossPos, CrossNeg, Dot, Base };

// One slice of a diagram. Positions are 0-indexed strand slots at the
// row's top boundary. Dot pierces slots pos..hi (hi = pos-1 when empty).
struct Event {
  EventKind kind;
  int pos = 0;
  int hi = 0;
  int id = 0;  // dot id or component number of a Base
  bool operator==(const Event& o) const {
    return kind == o.kind && pos == o.pos && hi == o.hi && id == o.id;
  }
};

struct Diagram {
  int top = 0;  // strands entering from above (open tangles)
  std::vector<Event> rows;
  std::vector<int> flips;  // component numbers with reversed orientation
  bool operator==(const Diagram& o) const = default;
};

Diagram parse_diagram(const std::string& text);
Diagram load_diagram(const std::string& path);
std::string format_diagram(const Diagram& D);
void save_diagram(const Diagram& D, const std::string& path);

// Strand tracing. Node (b, i) is slot i on boundary b (the top of row b).
struct Visit {
  enum Kind { Over, Under, DotLeg, Max, Min } kind;
  int row;
  int index;  // crossing row for Over/Under, leg index for DotLeg
  bool down;  // direction of travel on vertical segments
  bool left_to_right = false;  // for Max / Min
};

struct TracedComponent {
  int number = 0;  // 1-based among closed (or open) undotted components
  bool closed = true;
  bool flipped = false;
  // Visits in traversal order, starting at the base point.
  std::vector<Visit> visits;
};

struct TraceResult {
  std::vector<int> widths;  // width of each boundary, size rows+1
  // comp_at[b][i]: index into components for node (b, i).
  std::vector<std::vector<int>> comp_at;
  // down_at[b][i]: strand direction at node (b, i).
  std::vector<std::vector<char>> down_at;
  std::vector<TracedComponent> components;  // closed first by number, then open
  int n_closed = 0;
  std::vector<int> dot_ids;  // sorted; generator k+1 is dot_ids[k]
  std::vector<int> dot_row;  // row of each dot, aligned with dot_ids
};

// Validates widths, dots, bases and flips; throws ParseError-style
// PreconditionErrors with the offending row.
TraceResult trace(const Diagram& D);

struct LinkingData {
  std::vector<std::vector<long>> matrix;
  int sigma_plus = 0, sigma_minus = 0, sigma_zero = 0;
  int n_dotted = 0;
  std::vector<int> parity;
};

// Counts of positive, negative and zero diagonal entries after exact
// rational congruence diagonalization.
void signature(const std::vector<std::vector<long>>& m, int& plus, int& minus, int& zero);
LinkingData linking_data(const Diagram& D);
Presentation extract_presentation(const Diagram& D);

// ------------------------------------------------------------------ moves

enum class MoveKind {
  R2Insert,      // x(sign) pos, x(-sign) pos at row
  R2Remove,      // remove the cancelling pair starting at row
  R3,            // braid-like triangle starting at row
  CupSlide,      // cup P+1; x P  <->  cup P; x' P+1 (at row)
  CapSlide,      // x P; cap P+1  <->  x' P+1; cap P (at row)
  ZigzagInsert,  // insert cup P+1; cap P (sign > 0) or cup P; cap P+1 at row
  ZigzagRemove,
  HandleSlide,   // slide component a over component b at boundary row
  CancelPair,    // dot id a with component b
  IntroducePair,
  AddDot,        // 0-framed isolated unknot number a -> empty dotted circle
  RemoveDot,     // empty dot id a -> 0-framed unknot
  BlowUp,        // add a disjoint unknot with framing sign
  BlowDown,      // remove isolated ±1 unknot number a
  Flip,          // reverse orientation of component a
  MoveBase,      // insert the base point of component a at (row, pos)
  Commute,       // swap rows row, row+1 with disjoint supports
};

struct Move {
  MoveKind kind;
  int row = 0;
  int pos = 0;
  int sign = 1;
  int a = 0;
  int b = 0;
};

std::string format_kirby_move(const Move& m);
// Inverse of format_kirby_move; omitted key=value fields keep their defaults.
Move parse_kirby_move(const std::string& text);
Diagram apply_move(const Diagram& D, const Move& m);

// Builders.
Diagram unknot_diagram(int framing);
Diagram hopf_diagram();
Diagram lens_diagram(int n);  // L(1, n): n-framed unknot
Diagram s1xd3_diagram();      // one empty dotted circle
Diagram cancel_pair_diagram();
Diagram disjoint_union(const Diagram& A, const Diagram& B);

}  // namespace hkr
