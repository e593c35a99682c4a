#pragma once

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "jd/diagram.hpp"
#include "jd/expr.hpp"

namespace jd {

// ---- local surgeries --------------------------------------------------------

// The two diagrams of delta_v at leg index `leg`: the leg-doubling term and
// the branched (l, l*) term.  The input must not be a strut at that leg.
std::pair<Diagram, Diagram> delta_v_terms(const Diagram& d, int leg);

// delta_{vw}: fuses legs v and w (equal labels, v != w) into an arc with a new
// midpoint leg carrying the same label.
Diagram delta_vw_term(const Diagram& d, int v, int w);

// IHX at an internal edge: returns (H, X) with  d - H + X  a relator.
// The edge must join two distinct trivalent vertices.
struct IhxPair {
  Diagram h, x;
};
IhxPair ihx_at(const Diagram& d, int edge);

// Doubling Delta_v: the Y-join of l(v) to two copies of d minus the leg v.
// The new vertex is ordered (leg, copy1, copy2).
Diagram double_at_leg(const Diagram& d, int leg);

// D_vw: copies of j1 and j2 with a new edge joining the midpoint of the edge
// at leg v (in j1) to the midpoint of the edge at leg w (in j2).
Diagram edge_join(const Diagram& j1, int v, const Diagram& j2, int w);

// Generalized attachment used by the Kirchhoff certificates: copy1 of j1 with
// the leg-v edge subdivided, joined to the midpoint of *edge e* of j2.
Diagram edge_join_at_edge(const Diagram& j1, int v, const Diagram& j2, int edge);

// ---- the paper's operators --------------------------------------------------

// delta' (sum of delta_v), delta'' (sum of delta_vw over equal-label pairs),
// delta = delta' + delta''.  Outputs are meaningful mod 2; coefficients are
// kept exact and reduced by callers.  Inputs must be strut-free.
DiagramExpr delta_prime(const Diagram& d);
DiagramExpr delta_double_prime(const Diagram& d);
DiagramExpr delta_diagram(const Diagram& d);
DiagramExpr delta_at_color(const Diagram& d, Label a);  // delta^a of Appendix B

DiagramExpr delta_prime(const DiagramExpr& e);
DiagramExpr delta_double_prime(const DiagramExpr& e);
DiagramExpr delta(const DiagramExpr& e);
DiagramExpr delta_at_color(const DiagramExpr& e, Label a);

// Y(J) = sum over i-deg-1 components Y of J (x) (J u Y).
DiagramExpr y_op(const Diagram& d);
DiagramExpr y_op(const DiagramExpr& e);

// Delta_{n,r}(J) = sum over legs of double_at_leg.
DiagramExpr Delta_op(const Diagram& d);
DiagramExpr Delta_op(const DiagramExpr& e);

// Star product and its color restriction; both inputs strut-free.
DiagramExpr star(const Diagram& a, const Diagram& b);
DiagramExpr star(const DiagramExpr& a, const DiagramExpr& b);
DiagramExpr star_i(const Diagram& a, const Diagram& b, int color_index);

// Composition: complete matchings of every i+ leg of a with i- legs of b;
// `a` must be top-substantial.
DiagramExpr compose(const Diagram& a, const Diagram& b);
DiagramExpr compose(const DiagramExpr& a, const DiagramExpr& b);

// Label-sign flip.
DiagramExpr rev(const DiagramExpr& e);

// ---- matching internals (exposed for the Appendix B identities) -------------

// One partial star_i matching: the glued diagram together with the surviving
// i+ legs of a and i- legs of b (as leg indices of the glued diagram).
struct StarTerm {
  Diagram glued;
  std::vector<int> left_legs;   // unmatched i+ legs coming from a
  std::vector<int> right_legs;  // unmatched i- legs coming from b
};
std::vector<StarTerm> star_i_terms(const Diagram& a, const Diagram& b, int color_index);

}  // namespace jd
