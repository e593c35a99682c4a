#pragma once

#include <cstdint>
#include <map>
#include <vector>

namespace jd {

// Dense bit vector over F2.
struct F2Vec {
  int n = 0;
  std::vector<uint64_t> w;

  F2Vec() = default;
  explicit F2Vec(int bits) : n(bits), w((bits + 63) / 64, 0) {}
  bool get(int i) const { return (w[i >> 6] >> (i & 63)) & 1; }
  void flip(int i) { w[i >> 6] ^= 1ULL << (i & 63); }
  void set(int i, bool v) {
    if (get(i) != v) flip(i);
  }
  F2Vec& operator^=(const F2Vec& o) {
    for (size_t i = 0; i < w.size(); ++i) w[i] ^= o.w[i];
    return *this;
  }
  bool is_zero() const {
    for (auto x : w)
      if (x) return false;
    return true;
  }
  int leading() const {  // lowest set bit index, -1 if zero
    for (size_t i = 0; i < w.size(); ++i)
      if (w[i]) return static_cast<int>(i * 64 + __builtin_ctzll(w[i]));
    return -1;
  }
  std::vector<int> support() const {
    std::vector<int> s;
    for (size_t i = 0; i < w.size(); ++i) {
      uint64_t x = w[i];
      while (x) {
        s.push_back(static_cast<int>(i * 64 + __builtin_ctzll(x)));
        x &= x - 1;
      }
    }
    return s;
  }
  friend bool operator==(const F2Vec& a, const F2Vec& b) { return a.n == b.n && a.w == b.w; }
  friend bool operator<(const F2Vec& a, const F2Vec& b) { return a.w < b.w; }
};

// Row space in reduced echelon form; supports incremental insertion,
// membership, and canonical reduction.
struct F2Space {
  int n = 0;
  std::map<int, F2Vec> pivots;  // pivot column -> row (fully reduced)

  F2Space() = default;
  explicit F2Space(int dim) : n(dim) {}

  F2Vec reduce(F2Vec v) const {
    for (auto& [p, row] : pivots) {
      if (p > v.n) break;
      if (v.get(p)) v ^= row;
    }
    return v;
  }

  // Returns true if v was independent (rank grew).
  bool insert(F2Vec v) {
    v = reduce(v);
    int lead = v.leading();
    if (lead < 0) return false;
    for (auto& [p, row] : pivots)
      if (row.get(lead)) row ^= v;
    pivots.emplace(lead, std::move(v));
    return true;
  }

  bool contains(const F2Vec& v) const { return reduce(v).is_zero(); }
  int rank() const { return static_cast<int>(pivots.size()); }
};

}  // namespace jd
