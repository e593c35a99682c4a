#pragma once

#include <vector>

#include "jd/expr.hpp"
#include "jd/group.hpp"
#include "jd/spaces.hpp"

namespace jd {

Int totient(long n);
// Necklace count N_q(n) = (sum_{d|n} phi(d) q^{n/d}) / n.
Int necklace_count(int alphabet, int n);
// Bracelet count via Polya (rotations and reflections).
Int bracelet_count(int alphabet, int n);
Int necklace_count_brute(int alphabet, int n);
Int bracelet_count_brute(int alphabet, int n);

// Predicted rank of A^c_{n,1} (n >= 2).
Int one_loop_rank(int g, int n);

// Cyclic-word flags: symmetric iff some rotation equals the reversal;
// periodic iff the word is its own half rotation (even length).
bool word_symmetric(const std::vector<Label>& w);
bool word_periodic(const std::vector<Label>& w);

// The dihedral coinvariants (H^{(x) n})_{D_2n}: generators all words of
// length n, relators w - x.w and w - (-1)^n y.w.
struct WordSpace {
  int g = 1, n = 1;
  std::vector<std::vector<Label>> words;  // all (2g)^n words, lexicographic
  PresentedGroup group;

  int word_index(const std::vector<Label>& w) const;
};

WordSpace dihedral_coinvariants(int g, int n);

// Phi: words -> wheels, as a certified hom into A^c_{n,1}.
GroupHom phi_hom(const WordSpace& ws, const SpacePresentation& one_loop);

// Reduces an expression of connected 1-loop diagrams to pure wheels by
// applying the IHX relation at branch edges (each step is an exact relator
// application, so the result equals the input in A^c_{n,1}).
DiagramExpr wheel_reduce(const DiagramExpr& e);

// The cyclic word of a pure wheel class; throws if the class is not a wheel.
std::vector<Label> wheel_word(const std::string& key);

}  // namespace jd
