#pragma once

#include <optional>
#include <vector>

#include "jd/matrix.hpp"

namespace jd {

// Reduced column Hermite form of a column lattice in Z^rows: basis columns
// with strictly increasing pivot rows, positive pivots, and entries above each
// pivot reduced into [0, pivot).  Reduction against it yields a canonical
// coset representative.
struct Hnf {
  int rows = 0;
  std::vector<std::map<int, Int>> cols;
  std::vector<int> pivot_row;  // per column
};

Hnf hermite_cols(int rows, const std::vector<std::map<int, Int>>& columns);
inline Hnf hermite_cols(const IntMatrix& m) { return hermite_cols(m.rows, m.to_columns()); }

// Canonical representative of x modulo the lattice.
std::vector<Int> hnf_reduce(const Hnf& h, std::vector<Int> x);
bool hnf_contains(const Hnf& h, const std::vector<Int>& x);
// Every column of `sub` lies in the lattice of `h`.
bool hnf_contains_lattice(const Hnf& h, const Hnf& sub);
// Solves h * c = x exactly; empty optional if x is outside the lattice.
std::optional<std::vector<Int>> hnf_solve(const Hnf& h, std::vector<Int> x);

struct SmithOptions {
  bool with_U = false;  // D = U * A * V ; U is rows x rows
  bool with_W = false;  // W = U^{-1}
  bool with_V = false;  // V is cols x cols
};

struct Smith {
  int rows = 0, cols = 0;
  std::vector<Int> diag;  // nonzero invariant factors d1 | d2 | ...
  DenseMat U, W, V;

  int rank() const { return static_cast<int>(diag.size()); }
  // Invariant factors > 1.
  std::vector<Int> torsion() const {
    std::vector<Int> t;
    for (auto& d : diag)
      if (d > 1) t.push_back(d);
    return t;
  }
};

// Minimal-absolute-value pivot, ties broken by (row, col); deterministic.
Smith smith(IntMatrix a, SmithOptions opt = {});

// Basis of {x : A x = 0} as columns.
std::vector<std::vector<Int>> integer_kernel(const IntMatrix& a);

// Basis of {x : for each row i, a_i . x == 0 (mod m_i)}, where m_i == 0 means
// exact equality.  Columns of the result generate the solution lattice.
std::vector<std::vector<Int>> congruence_kernel(const IntMatrix& a, const std::vector<Int>& mod);

}  // namespace jd
