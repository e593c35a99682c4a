#pragma once

#include <map>
#include <stdexcept>
#include <string>

#include "jd/canonical.hpp"
#include "jd/diagram.hpp"
#include "jd/ints.hpp"

namespace jd {

struct ParseError : std::runtime_error {
  size_t position;
  ParseError(size_t pos, const std::string& msg)
      : std::runtime_error(msg + " (at position " + std::to_string(pos) + ")"), position(pos) {}
};

// Formal integer combination of canonical diagram classes.  Zero coefficients
// and self-loop (sign 0) classes are never stored.
class DiagramExpr {
 public:
  std::map<std::string, Int> terms;

  DiagramExpr() = default;

  static DiagramExpr from_diagram(const Diagram& d, const Int& coeff = 1);
  static DiagramExpr from_class(const SignedClass& c, const Int& coeff = 1);

  DiagramExpr& add(const std::string& key, const Int& coeff);
  DiagramExpr& operator+=(const DiagramExpr& o);
  DiagramExpr& operator-=(const DiagramExpr& o);
  DiagramExpr& operator*=(const Int& c);
  friend DiagramExpr operator+(DiagramExpr a, const DiagramExpr& b) { return a += b; }
  friend DiagramExpr operator-(DiagramExpr a, const DiagramExpr& b) { return a -= b; }
  friend DiagramExpr operator*(const Int& c, DiagramExpr a) { return a *= c; }
  friend bool operator==(const DiagramExpr& a, const DiagramExpr& b) { return a.terms == b.terms; }

  bool is_zero() const { return terms.empty(); }
  // Coefficients reduced mod 2 (kept in {0,1}); zero terms dropped.
  DiagramExpr mod2() const;
};

// Parses the diagram-expression grammar.  Label indices are checked against
// the genus.  "strut(a,b)" is accepted as a convenience alongside the
// T / O / G forms.
DiagramExpr parse_expr(const std::string& text, int genus);

// Parses a single diagram literal (no sums, no coefficients).
Diagram parse_diagram(const std::string& text, int genus);

// Deterministic rendering: terms sorted by class key; T / O / strut shapes
// are printed in their short form (with a +1-sign word), everything else as a
// G literal of the canonical representative.
std::string render(const DiagramExpr& e);
std::string render_class(const std::string& key);

}  // namespace jd
