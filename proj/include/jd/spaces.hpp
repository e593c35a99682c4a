#pragma once

#include <map>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "jd/expr.hpp"
#include "jd/f2.hpp"
#include "jd/group.hpp"

namespace jd {

struct ResourceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class Variant {
  Full,            // A_n with struts, bounded strut count
  StrutFree,       // A_n^Y
  Connected,       // A_n^c
  ConnectedLoops,  // A_{n,k}^c
  OneLoopSym,      // A_{n,1}^{c,s}: submodule generated by symmetric wheels
  OneLoopPeriodic, // A_{2n,1}^{c,period}: generated by O(w w)
  OneLoopSymPeriodic
};

struct SpaceFlavor {
  int genus = 1;
  int i_deg = 0;
  Variant variant = Variant::Connected;
  int loops = -1;      // ConnectedLoops only
  int strut_bound = 2; // Full only

  std::string key() const;
};

// Canonical classes generating the flavor, deterministically ordered.
// Self-loop classes are omitted.  Throws ResourceError beyond the documented
// bounds (i_deg <= 6 at genus 1, <= 4 at genus 2, <= 3 beyond).
std::vector<std::string> enumerate_generators(const SpaceFlavor& f);

class SpacePresentation {
 public:
  SpaceFlavor flavor;
  std::vector<std::string> gens;  // class keys; for multiset flavors, the
                                  // sorted component keys joined by '\n'
  std::map<std::string, int> index;
  PresentedGroup group;

  // Coefficient vector of an expression; throws std::invalid_argument naming
  // the first term outside the flavor.
  std::vector<Int> vec(const DiagramExpr& e) const;
  GroupElement reduce_expr(const DiagramExpr& e) const;
  bool is_zero(const DiagramExpr& e) const { return group.is_zero(vec(e)); }
  bool is_zero_mod2(const DiagramExpr& e) const { return group.is_zero_mod2(vec(e)); }
};

// Cached; stable reference for the process lifetime.
const SpacePresentation& presentation(const SpaceFlavor& f);

// Splits a class into its connected component classes with the sign relating
// the product of component representatives to the class representative.
struct ComponentSplit {
  std::vector<std::string> keys;  // sorted
  int sign;
};
ComponentSplit split_class(const std::string& key);

// Mod-2 normal forms of strut-free expressions of bounded i-degree, via the
// symmetric-algebra decomposition over the connected pieces.  Scales to
// spaces whose integral multiset presentation would be too large.
class SymF2 {
 public:
  SymF2(int genus, int max_ideg);

  // Canonical normal form: multiset of connected basis ids -> parity.
  std::map<std::vector<int>, int> normal_form(const DiagramExpr& e) const;
  bool is_zero(const DiagramExpr& e) const { return normal_form(e).empty(); }
  bool equal_mod2(const DiagramExpr& a, const DiagramExpr& b) const;
  int genus() const { return genus_; }

 private:
  struct Level {
    std::vector<std::string> gens;
    std::map<std::string, int> index;
    F2Space relations;
    std::vector<std::vector<int>> nf;  // per generator: basis ids (encoded)
  };
  int genus_;
  std::vector<Level> levels_;  // by i-deg, 1-based
};

}  // namespace jd
