#pragma once

#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "jd/f2.hpp"
#include "jd/matrix.hpp"
#include "jd/smith.hpp"

namespace jd {

struct GroupStructure {
  int rank = 0;
  std::vector<Int> invariant_factors;               // the factors > 1, d1 | d2 | ...
  std::vector<std::vector<Int>> torsion_basis;      // generator coordinates

  bool trivial() const { return rank == 0 && invariant_factors.empty(); }
  std::string to_string() const;
  friend bool operator==(const GroupStructure& a, const GroupStructure& b) {
    return a.rank == b.rank && a.invariant_factors == b.invariant_factors;
  }
};

// Smith coordinates of an element: one residue per invariant factor > 1 and
// the free coordinates.
struct SmithCoords {
  std::vector<Int> torsion;  // torsion[i] in [0, d_i)
  std::vector<Int> free;
};

// Finitely presented abelian group: Z^gens / column lattice of `relations`.
// Hermite and Smith data are computed lazily and cached.
class PresentedGroup {
 public:
  PresentedGroup() = default;
  PresentedGroup(int gens, IntMatrix relations);

  int gens() const { return gens_; }
  const IntMatrix& relations() const { return relations_; }

  const Hnf& lattice() const;
  GroupStructure structure() const;

  // Canonical coset representative; reduce(reduce(x)) == reduce(x).
  std::vector<Int> reduce(std::vector<Int> x) const;
  bool is_zero(const std::vector<Int>& x) const { return hnf_contains(lattice(), x); }
  bool equal(const std::vector<Int>& x, const std::vector<Int>& y) const;

  SmithCoords coords(const std::vector<Int>& x) const;
  // x == 0 in G tensor Z/2.
  bool is_zero_mod2(const std::vector<Int>& x) const;
  int dim_mod2() const;  // dim of G tensor F2
  int rank() const { return structure().rank; }

  // x given as a rational vector; tests x == 0 in G tensor Q/Z.
  bool is_zero_qz(const std::vector<Rat>& x) const;

  // Lattice of integer vectors representing 0 in G tensor Q/Z after division
  // by q, i.e. {v : v/q == 0}; exposed for subgroup comparisons.
  bool is_zero_qz_scaled(const std::vector<Int>& numerator, const Int& denominator) const;

  const Smith& smith_full() const;  // with U and W
  const Smith& smith_diag() const;  // diagonal only

  const F2Space& relations_mod2() const;

 private:
  int gens_ = 0;
  IntMatrix relations_;
  mutable std::optional<Hnf> hnf_;
  mutable std::optional<Smith> smith_diag_;
  mutable std::optional<Smith> smith_full_;
  mutable std::optional<F2Space> mod2_;
  mutable std::optional<Hnf> sat_plus_;  // HNF of [sat(L) | q I], cached per q
  mutable Int sat_plus_q_ = 0;
};

struct GroupElement {
  const PresentedGroup* owner = nullptr;
  std::vector<Int> coords;  // reduced normal form

  friend bool operator==(const GroupElement& a, const GroupElement& b) {
    return a.owner == b.owner && a.coords == b.coords;
  }
};

GroupElement make_element(const PresentedGroup& g, std::vector<Int> raw);

struct WellDefinednessError : std::runtime_error {
  int relator;
  WellDefinednessError(int rel, const std::string& what)
      : std::runtime_error(what), relator(rel) {}
};

// Homomorphism given by a matrix on generators (target gens x source gens),
// with the well-definedness certificate checked at construction.
class GroupHom {
 public:
  GroupHom(const PresentedGroup* src, const PresentedGroup* tgt, IntMatrix m,
           bool check = true);

  const PresentedGroup& source() const { return *src_; }
  const PresentedGroup& target() const { return *tgt_; }
  const IntMatrix& matrix() const { return m_; }

  std::vector<Int> apply(const std::vector<Int>& x) const { return m_.apply(x); }

  // {x in Z^srcGens : f(x) == 0 in target}; contains the source lattice.
  std::vector<std::vector<Int>> kernel_lattice() const;
  bool is_injective() const;
  GroupStructure cokernel_structure() const;
  bool is_surjective() const { return cokernel_structure().trivial(); }
  bool is_isomorphism() const;

  // Kernel and image as presented groups (kernel gens = kernel lattice basis;
  // image gens = source generators).
  PresentedGroup kernel_group() const;
  PresentedGroup image_group() const;

 private:
  const PresentedGroup* src_;
  const PresentedGroup* tgt_;
  IntMatrix m_;
};

// Images, one column per source generator.
GroupHom hom_from_images(const PresentedGroup& src, const PresentedGroup& tgt,
                         const std::vector<std::vector<Int>>& images);

// Subgroup of g generated by the given elements, presented on those elements.
PresentedGroup subgroup_presentation(const PresentedGroup& g,
                                     const std::vector<std::vector<Int>>& elements);

// g modulo the extra relators.
PresentedGroup quotient_presentation(const PresentedGroup& g,
                                     const std::vector<std::vector<Int>>& extra);

// Direct sum.
PresentedGroup direct_sum(const PresentedGroup& a, const PresentedGroup& b);

}  // namespace jd
