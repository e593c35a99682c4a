#include "jd/smith.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace jd {

namespace {

// Column-lattice Hermite reduction working state: pivot row -> column.
struct HnfBuilder {
  int rows;
  std::map<int, std::map<int, Int>> pivots;  // pivot row -> column

  explicit HnfBuilder(int r) : rows(r) {}

  static void axpy(std::map<int, Int>& dst, const Int& c, const std::map<int, Int>& src) {
    if (c == 0) return;
    for (auto& [r, v] : src) {
      auto [it, inserted] = dst.emplace(r, c * v);
      if (!inserted) {
        it->second += c * v;
        if (it->second == 0) dst.erase(it);
      }
    }
  }

  void insert(std::map<int, Int> col) {
    while (!col.empty()) {
      int r = col.begin()->first;
      Int v = col.begin()->second;
      auto it = pivots.find(r);
      if (it == pivots.end()) {
        if (v < 0)
          for (auto& [rr, vv] : col) vv = -vv;
        pivots.emplace(r, std::move(col));
        return;
      }
      Int p = it->second.at(r);
      if (v % p == 0) {
        axpy(col, -(v / p), it->second);
        continue;
      }
      Int x, y;
      Int g = gcdext(p, v, x, y);
      std::map<int, Int> newp;
      axpy(newp, x, it->second);
      axpy(newp, y, col);
      std::map<int, Int> newc;
      axpy(newc, p / g, col);
      axpy(newc, -(v / g), it->second);
      it->second = std::move(newp);
      col = std::move(newc);
    }
  }

  Hnf finish() {
    // Reduce entries of earlier-pivot columns against later pivots.
    for (auto& [r, col] : pivots) {
      Int p = col.at(r);
      for (auto& [r2, col2] : pivots) {
        if (r2 >= r) break;
        auto it = col2.find(r);
        if (it == col2.end()) continue;
        Int q = fdiv(it->second, p);
        axpy(col2, -q, col);
      }
    }
    Hnf h;
    h.rows = rows;
    for (auto& [r, col] : pivots) {
      h.pivot_row.push_back(r);
      h.cols.push_back(std::move(col));
    }
    return h;
  }
};

}  // namespace

Hnf hermite_cols(int rows, const std::vector<std::map<int, Int>>& columns) {
  HnfBuilder b(rows);
  for (auto& c : columns) b.insert(c);
  return b.finish();
}

std::vector<Int> hnf_reduce(const Hnf& h, std::vector<Int> x) {
  for (size_t i = 0; i < h.cols.size(); ++i) {
    int r = h.pivot_row[i];
    if (x[r] == 0) continue;
    Int q = fdiv(x[r], h.cols[i].at(r));
    if (q == 0) continue;
    for (auto& [rr, vv] : h.cols[i]) x[rr] -= q * vv;
  }
  return x;
}

bool hnf_contains(const Hnf& h, const std::vector<Int>& x) {
  auto r = hnf_reduce(h, x);
  return std::all_of(r.begin(), r.end(), [](const Int& v) { return v == 0; });
}

bool hnf_contains_lattice(const Hnf& h, const Hnf& sub) {
  for (auto& col : sub.cols) {
    std::vector<Int> x(h.rows, 0);
    for (auto& [r, v] : col) x[r] = v;
    if (!hnf_contains(h, x)) return false;
  }
  return true;
}

std::optional<std::vector<Int>> hnf_solve(const Hnf& h, std::vector<Int> x) {
  std::vector<Int> coeff(h.cols.size(), 0);
  for (size_t i = 0; i < h.cols.size(); ++i) {
    int r = h.pivot_row[i];
    if (x[r] == 0) continue;
    Int p = h.cols[i].at(r);
    if (x[r] % p != 0) return std::nullopt;
    Int q = x[r] / p;
    coeff[i] = q;
    for (auto& [rr, vv] : h.cols[i]) x[rr] -= q * vv;
  }
  for (auto& v : x)
    if (v != 0) return std::nullopt;
  return coeff;
}

namespace {

struct SmithWork {
  IntMatrix a;
  std::vector<std::set<int>> colrows;  // rows with a nonzero entry per column
  SmithOptions opt;
  DenseMat U, W, V;

  SmithWork(IntMatrix m, SmithOptions o) : a(std::move(m)), opt(o) {
    colrows.resize(a.cols);
    for (int r = 0; r < a.rows; ++r)
      for (auto& [c, v] : a.row[r]) colrows[c].insert(r);
    if (opt.with_U) U = dense_identity(a.rows);
    if (opt.with_W) W = dense_identity(a.rows);
    if (opt.with_V) V = dense_identity(a.cols);
  }

  void set_entry(int r, int c, const Int& v) {
    if (v == 0) {
      a.row[r].erase(c);
      colrows[c].erase(r);
    } else {
      a.row[r][c] = v;
      colrows[c].insert(r);
    }
  }

  void row_addmul(int i, int j, const Int& c) {  // row_i += c * row_j
    if (c == 0) return;
    for (auto& [col, v] : a.row[j]) {
      auto it = a.row[i].find(col);
      Int nv = (it == a.row[i].end() ? Int(0) : it->second) + c * v;
      set_entry(i, col, nv);
    }
    if (opt.with_U)
      for (int k = 0; k < a.rows; ++k) U[i][k] += c * U[j][k];
    if (opt.with_W)
      for (int k = 0; k < a.rows; ++k) W[k][j] -= c * W[k][i];
  }

  void row_swap(int i, int j) {
    if (i == j) return;
    std::set<int> touched;
    for (auto& [c, v] : a.row[i]) touched.insert(c);
    for (auto& [c, v] : a.row[j]) touched.insert(c);
    std::swap(a.row[i], a.row[j]);
    for (int c : touched) {
      if (a.row[i].count(c))
        colrows[c].insert(i);
      else
        colrows[c].erase(i);
      if (a.row[j].count(c))
        colrows[c].insert(j);
      else
        colrows[c].erase(j);
    }
    if (opt.with_U) std::swap(U[i], U[j]);
    if (opt.with_W)
      for (int k = 0; k < a.rows; ++k) std::swap(W[k][i], W[k][j]);
  }

  void row_negate(int i) {
    for (auto& [col, v] : a.row[i]) v = -v;
    if (opt.with_U)
      for (int k = 0; k < a.rows; ++k) U[i][k] = -U[i][k];
    if (opt.with_W)
      for (int k = 0; k < a.rows; ++k) W[k][i] = -W[k][i];
  }

  void col_addmul(int i, int j, const Int& c) {  // col_i += c * col_j
    if (c == 0) return;
    std::vector<int> rows(colrows[j].begin(), colrows[j].end());
    for (int r : rows) {
      Int nv = a.get(r, i) + c * a.get(r, j);
      set_entry(r, i, nv);
    }
    if (opt.with_V)
      for (int k = 0; k < a.cols; ++k) V[k][i] += c * V[k][j];
  }

  void col_swap(int i, int j) {
    if (i == j) return;
    std::vector<std::pair<int, Int>> ci, cj;
    for (int r : colrows[i]) ci.push_back({r, a.get(r, i)});
    for (int r : colrows[j]) cj.push_back({r, a.get(r, j)});
    for (auto& [r, v] : ci) set_entry(r, i, 0);
    for (auto& [r, v] : cj) set_entry(r, j, 0);
    for (auto& [r, v] : ci) set_entry(r, j, v);
    for (auto& [r, v] : cj) set_entry(r, i, v);
    if (opt.with_V)
      for (int k = 0; k < a.cols; ++k) std::swap(V[k][i], V[k][j]);
  }

  void col_negate(int i) {
    std::vector<int> rows(colrows[i].begin(), colrows[i].end());
    for (int r : rows) a.row[r][i] = -a.row[r][i];
    if (opt.with_V)
      for (int k = 0; k < a.cols; ++k) V[k][i] = -V[k][i];
  }

  // Smallest |value| among entries with row >= t and col >= t; ties by (row, col).
  bool find_pivot(int t, int& pr, int& pc) {
    bool found = false;
    Int best;
    for (int r = t; r < a.rows; ++r) {
      for (auto& [c, v] : a.row[r]) {
        if (c < t) continue;
        Int av = v < 0 ? Int(-v) : v;
        if (!found || av < best) {
          found = true;
          best = av;
          pr = r;
          pc = c;
          if (best == 1) {
            // still prefer the smallest (row, col) among 1s in this row scan
          }
        }
      }
      if (found && best == 1) break;  // rows scanned in order; earliest row wins
    }
    return found;
  }

  // Clears row t and column t down to the single pivot entry at (t, t).
  void clean_pivot(int t) {
    while (true) {
      int r = -1;
      for (int rr : colrows[t])
        if (rr != t) {
          r = rr;
          break;
        }
      if (r >= 0) {
        Int piv = a.get(t, t), v = a.get(r, t), q;
        mpz_tdiv_q(q.get_mpz_t(), v.get_mpz_t(), piv.get_mpz_t());
        row_addmul(r, t, -q);
        if (a.get(r, t) != 0) row_swap(r, t);
        continue;
      }
      int c = -1;
      for (auto& [cc, vv] : a.row[t])
        if (cc != t) {
          c = cc;
          break;
        }
      if (c >= 0) {
        Int piv = a.get(t, t), v = a.get(t, c), q;
        mpz_tdiv_q(q.get_mpz_t(), v.get_mpz_t(), piv.get_mpz_t());
        col_addmul(c, t, -q);
        if (a.get(t, c) != 0) col_swap(c, t);
        continue;
      }
      break;
    }
  }
};

}  // namespace

Smith smith(IntMatrix m, SmithOptions opt) {
  SmithWork w(std::move(m), opt);
  int n = std::min(w.a.rows, w.a.cols);
  int t = 0;
  for (; t < n; ++t) {
    int pr, pc;
    if (!w.find_pivot(t, pr, pc)) break;
    w.row_swap(pr, t);
    w.col_swap(pc, t);
    w.clean_pivot(t);
  }
  // Divisibility chain d1 | d2 | ...
  bool changed = true;
  while (changed) {
    changed = false;
    for (int i = 0; i + 1 < t; ++i) {
      Int di = w.a.get(i, i), dj = w.a.get(i + 1, i + 1);
      if (dj % di != 0) {
        w.col_addmul(i, i + 1, 1);
        w.clean_pivot(i);
        changed = true;
      }
    }
  }
  for (int i = 0; i < t; ++i)
    if (w.a.get(i, i) < 0) w.row_negate(i);

  Smith out;
  out.rows = w.a.rows;
  out.cols = w.a.cols;
  for (int i = 0; i < t; ++i) {
    Int d = w.a.get(i, i);
    if (d != 0) out.diag.push_back(d);
  }
  out.U = std::move(w.U);
  out.W = std::move(w.W);
  out.V = std::move(w.V);
  return out;
}

std::vector<std::vector<Int>> integer_kernel(const IntMatrix& a) {
  Smith s = smith(a, SmithOptions{.with_V = true});
  std::vector<std::vector<Int>> basis;
  for (int j = s.rank(); j < a.cols; ++j) {
    std::vector<Int> col(a.cols);
    for (int i = 0; i < a.cols; ++i) col[i] = s.V[i][j];
    basis.push_back(std::move(col));
  }
  return basis;
}

std::vector<std::vector<Int>> congruence_kernel(const IntMatrix& a, const std::vector<Int>& mod) {
  if (static_cast<int>(mod.size()) != a.rows)
    throw std::invalid_argument("congruence_kernel: modulus count != rows");
  int extra = 0;
  for (auto& m : mod)
    if (m != 0) ++extra;
  IntMatrix b(a.rows, a.cols + extra);
  b.row = a.row;
  int k = a.cols;
  for (int r = 0; r < a.rows; ++r)
    if (mod[r] != 0) b.set(r, k++, mod[r]);
  auto ker = integer_kernel(b);
  // Project onto the x-part and renormalize.
  std::vector<std::map<int, Int>> cols;
  for (auto& v : ker) {
    std::map<int, Int> c;
    for (int i = 0; i < a.cols; ++i)
      if (v[i] != 0) c.emplace(i, v[i]);
    if (!c.empty()) cols.push_back(std::move(c));
  }
  Hnf h = hermite_cols(a.cols, cols);
  std::vector<std::vector<Int>> basis;
  for (auto& c : h.cols) {
    std::vector<Int> col(a.cols, 0);
    for (auto& [r, v] : c) col[r] = v;
    basis.push_back(std::move(col));
  }
  return basis;
}

}  // namespace jd
