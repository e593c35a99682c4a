#pragma once

#include <array>
#include <map>
#include <utility>
#include <vector>

#include "jd/label.hpp"

namespace jd {

// One end of an edge as it appears in a cyclic order: edge id plus which
// endpoint (0 = edges[e].first, 1 = edges[e].second).  Self-loops contribute
// two distinct occurrences at the same vertex.
struct Occ {
  int edge = -1;
  int end = 0;
  friend bool operator==(const Occ& a, const Occ& b) { return a.edge == b.edge && a.end == b.end; }
};

// A uni-trivalent graph with a cyclic order at each trivalent vertex and
// colored legs.  Vertices 0..trivalent-1 are trivalent; leg j is vertex
// trivalent + j.  Multi-edges are first-class: edges carry identities so
// cyclic orders stay unambiguous.
struct Diagram {
  int trivalent = 0;
  std::vector<Label> legs;
  std::vector<std::pair<int, int>> edges;
  std::vector<std::array<Occ, 3>> cyc;  // one entry per trivalent vertex

  int leg_count() const { return static_cast<int>(legs.size()); }
  int vertex_count() const { return trivalent + leg_count(); }
  int leg_vertex(int j) const { return trivalent + j; }
  bool is_leg(int v) const { return v >= trivalent; }
  bool empty() const { return trivalent == 0 && legs.empty(); }

  bool has_self_loop() const {
    for (auto& e : edges)
      if (e.first == e.second) return true;
    return false;
  }
};

struct DiagramMetrics {
  int i_deg = 0;
  int component_count = 0;
  std::vector<int> loop_deg_per_component;
  std::vector<Label> leg_labels;  // sorted
  bool strut_free = true;
  bool connected = true;
  bool top_substantial = true;
};

// Throws std::invalid_argument describing the first violated invariant.
void validate(const Diagram& d);

DiagramMetrics metrics(const Diagram& d);

// Component index per vertex, 0-based in order of least vertex.
std::vector<int> components(const Diagram& d);

// Splits into connected component diagrams (vertex order preserved per part).
std::vector<Diagram> split_components(const Diagram& d);

// Disjoint union.
Diagram disjoint_union(const Diagram& a, const Diagram& b);

// The caterpillar tree T(a1,...,an), n >= 3, as drawn in the figures: the
// internal vertices sit on a horizontal line, legs a2..a_{n-1} point up,
// counterclockwise orders (a1,a2,e) / (e,a_{i+2},e') / (e,a_{n-1},a_n).
Diagram build_T(const std::vector<Label>& labels);

// The one-loop wheel O(a1,...,an), n >= 1 (n = 1 carries a self-loop and is
// trivial after reduction).
Diagram build_O(const std::vector<Label>& labels);

// A strut: a single edge with two colored ends and no trivalent vertex.
Diagram build_strut(Label a, Label b);

// Flips the sign of every leg label (the operator `rev`).
Diagram rev_diagram(const Diagram& d);

}  // namespace jd
