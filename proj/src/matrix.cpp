#include "jd/matrix.hpp"

namespace jd {

IntMatrix IntMatrix::from_columns(int rows, const std::vector<std::map<int, Int>>& cols) {
  IntMatrix m(rows, static_cast<int>(cols.size()));
  for (int c = 0; c < m.cols; ++c)
    for (auto& [r, v] : cols[c]) m.row[r].emplace(c, v);
  return m;
}

std::vector<std::map<int, Int>> IntMatrix::to_columns() const {
  std::vector<std::map<int, Int>> cols(this->cols);
  for (int r = 0; r < rows; ++r)
    for (auto& [c, v] : row[r]) cols[c].emplace(r, v);
  return cols;
}

IntMatrix IntMatrix::transposed() const {
  IntMatrix t(cols, rows);
  for (int r = 0; r < rows; ++r)
    for (auto& [c, v] : row[r]) t.row[c].emplace(r, v);
  return t;
}

IntMatrix IntMatrix::diagonal(const std::vector<Int>& d) {
  IntMatrix m(static_cast<int>(d.size()), static_cast<int>(d.size()));
  for (int i = 0; i < m.rows; ++i) m.set(i, i, d[i]);
  return m;
}

std::vector<Int> IntMatrix::apply(const std::vector<Int>& x) const {
  std::vector<Int> y(rows, 0);
  for (int r = 0; r < rows; ++r)
    for (auto& [c, v] : row[r]) y[r] += v * x[c];
  return y;
}

DenseMat dense_identity(int n) {
  DenseMat m(n, std::vector<Int>(n, 0));
  for (int i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

std::vector<Int> dense_apply(const DenseMat& m, const std::vector<Int>& x) {
  std::vector<Int> y(m.size(), 0);
  for (size_t r = 0; r < m.size(); ++r)
    for (size_t c = 0; c < x.size(); ++c)
      if (m[r][c] != 0 && x[c] != 0) y[r] += m[r][c] * x[c];
  return y;
}

DenseMat dense_mul(const DenseMat& a, const DenseMat& b) {
  size_t n = a.size(), k = b.size(), m = k ? b[0].size() : 0;
  DenseMat out(n, std::vector<Int>(m, 0));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < k; ++j)
      if (a[i][j] != 0)
        for (size_t l = 0; l < m; ++l)
          if (b[j][l] != 0) out[i][l] += a[i][j] * b[j][l];
  return out;
}

DenseMat to_dense(const IntMatrix& m) {
  DenseMat out(m.rows, std::vector<Int>(m.cols, 0));
  for (int r = 0; r < m.rows; ++r)
    for (auto& [c, v] : m.row[r]) out[r][c] = v;
  return out;
}

}  // namespace jd
