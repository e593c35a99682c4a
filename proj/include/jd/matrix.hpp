#pragma once

#include <map>
#include <vector>

#include "jd/ints.hpp"

namespace jd {

// Sparse integer matrix, row-major; zero entries are never stored.
struct IntMatrix {
  int rows = 0;
  int cols = 0;
  std::vector<std::map<int, Int>> row;

  IntMatrix() = default;
  IntMatrix(int r, int c) : rows(r), cols(c), row(r) {}

  const Int& get(int r, int c) const {
    static const Int zero = 0;
    auto it = row[r].find(c);
    return it == row[r].end() ? zero : it->second;
  }
  void set(int r, int c, const Int& v) {
    if (v == 0)
      row[r].erase(c);
    else
      row[r][c] = v;
  }
  void add(int r, int c, const Int& v) {
    if (v == 0) return;
    auto [it, inserted] = row[r].emplace(c, v);
    if (!inserted) {
      it->second += v;
      if (it->second == 0) row[r].erase(it);
    }
  }
  size_t nonzeros() const {
    size_t n = 0;
    for (auto& r : row) n += r.size();
    return n;
  }

  static IntMatrix from_columns(int rows, const std::vector<std::map<int, Int>>& cols);
  std::vector<std::map<int, Int>> to_columns() const;
  IntMatrix transposed() const;
  static IntMatrix diagonal(const std::vector<Int>& d);

  // y = (*this) * x
  std::vector<Int> apply(const std::vector<Int>& x) const;

  friend bool operator==(const IntMatrix& a, const IntMatrix& b) {
    return a.rows == b.rows && a.cols == b.cols && a.row == b.row;
  }
};

using DenseMat = std::vector<std::vector<Int>>;

DenseMat dense_identity(int n);
std::vector<Int> dense_apply(const DenseMat& m, const std::vector<Int>& x);
DenseMat dense_mul(const DenseMat& a, const DenseMat& b);
DenseMat to_dense(const IntMatrix& m);

}  // namespace jd
