#pragma once

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "jd/diagram.hpp"
#include "jd/expr.hpp"
#include "jd/group.hpp"

namespace jd {

// ---- free associative (tensor) algebra over the 2g letters ----------------
// Words are byte strings of label codes; polynomials are word -> coefficient.
struct TensorPoly {
  std::map<std::string, Int> terms;

  TensorPoly& add(const std::string& w, const Int& c);
  TensorPoly& operator+=(const TensorPoly& o);
  TensorPoly& operator-=(const TensorPoly& o);
  bool is_zero() const { return terms.empty(); }
  friend bool operator==(const TensorPoly& a, const TensorPoly& b) { return a.terms == b.terms; }
};

TensorPoly tensor_word(const std::string& w, const Int& c = 1);
TensorPoly tensor_mul(const TensorPoly& a, const TensorPoly& b);
TensorPoly tensor_bracket(const TensorPoly& a, const TensorPoly& b);

// ---- free Lie algebra via Lyndon words -------------------------------------
Int witt_dim(int g, int n);

// Lyndon words of length n over the 2g label codes, lexicographically sorted.
std::vector<std::string> lyndon_words(int g, int n);

struct FreeLie {
  int g = 1, n = 1;
  std::vector<std::string> words;             // Lyndon basis, sorted
  std::map<std::string, int> index;
  std::vector<TensorPoly> expansion;          // standard bracketing of each word

  int dim() const { return static_cast<int>(words.size()); }
};

FreeLie free_lie(int g, int n);

// Standard (right) Lyndon bracketing as a tensor polynomial.
TensorPoly lyndon_expansion(const std::string& word);

// Coordinates in the Lyndon basis; throws std::invalid_argument when the
// polynomial is not a homogeneous degree-n Lie element.
std::vector<Int> lie_coords(const FreeLie& l, TensorPoly p);

// Lie bracket in coordinates.
std::vector<Int> lie_bracket(const FreeLie& lp, const FreeLie& lq, const FreeLie& lout,
                             const std::vector<Int>& x, const std::vector<Int>& y);

// ---- rooted trees and the free quasi-Lie algebra ---------------------------
struct Tree;
using TreePtr = std::shared_ptr<const Tree>;

struct Tree {
  int leaf = -1;  // label code when >= 0
  TreePtr l, r;

  bool is_leaf() const { return leaf >= 0; }
  int leaves() const;
};

TreePtr leaf(int code);
inline TreePtr leaf(Label l) { return leaf(l.code()); }
TreePtr node(TreePtr a, TreePtr b);

struct TreeClass {
  std::string key;
  int sign = +1;
  bool odd = false;
};
TreeClass canonical_tree(const TreePtr& t);
TreePtr decode_tree(const std::string& key);

// Tensor expansion of the full bracket word of the tree (the map gamma into
// the tensor algebra).
TensorPoly tree_tensor(const TreePtr& t);

// Lyndon bracketing of a word as a rooted tree.
TreePtr lyndon_tree(const std::string& word);

// Degree-n part of the free quasi-Lie algebra: rooted trees with n colored
// leaves modulo AS (built into canonical keys, residual 2x relators for
// self-paired trees) and the Jacobi relation per internal edge.
struct QuasiLie {
  int g = 1, n = 1;
  std::vector<std::string> gens;  // canonical tree keys, sorted
  std::map<std::string, int> index;
  PresentedGroup group;

  std::vector<Int> vec(const TreePtr& t, const Int& coeff = 1) const;
};

QuasiLie quasi_lie(int g, int n);

// gamma_n : L'_n -> L_n, tree |-> its bracket, in Lyndon coordinates.
GroupHom gamma_hom(const QuasiLie& lp, const FreeLie& l, const PresentedGroup& free_target);

// theta_k : L_k (x) Z/2 -> L'_2k, basis word w |-> [T_w, T_w].
std::vector<std::vector<Int>> theta_images(const FreeLie& lk, const QuasiLie& l2k);

// ---- conversions between tree diagrams and rooted trees --------------------

// Re-roots a connected 0-loop diagram at the given leg; the remaining tree is
// read off the cyclic orders ((parent, x, y) |-> [x, y]).
TreePtr diagram_to_tree(const Diagram& d, int leg_index);

// The tree diagram with a central vertex carrying leg `x` and the two
// subtrees (the picture T - x - T when a == b).
Diagram tree_pair_diagram(const TreePtr& a, Label x, const TreePtr& b);

// Two rooted trees joined by an edge between their roots (T - T).
Diagram tree_join_diagram(const TreePtr& a, const TreePtr& b);

// ---- the paper's structure maps --------------------------------------------

// eta'(tree diagram) = sum_v l(v) (x) T_v, returned as coefficient vectors in
// H (x) L'_{n+1): slot per (label code, quasi-Lie generator).
std::vector<Int> eta_prime_vector(const Diagram& tree_diagram, const QuasiLie& target);

// sq(x (x) w) as a diagram expression: the tree T_w - x - T_w.
DiagramExpr sq_expr(Label x, const std::string& lyndon_word);

// xi(a_0 (x) ... (x) a_k) = O(a_0, a_1, ..., a_{k-1}, a_k, a_{k-1}, ..., a_1).
DiagramExpr xi_expr(const std::vector<Label>& word);

// nu numerator: the diagram (T T); nu itself is half of this in Q/Z.
DiagramExpr nu_numerator(const TreePtr& t);

// j on wedge generators.
DiagramExpr j_wedge3(Label a, Label b, Label c);
DiagramExpr j_wedge2(Label a, Label b);

}  // namespace jd
