#include "jd/group.hpp"

#include <algorithm>
#include <sstream>

namespace jd {

std::string GroupStructure::to_string() const {
  if (trivial()) return "0";
  std::ostringstream os;
  bool first = true;
  if (rank > 0) {
    os << "Z";
    if (rank > 1) os << " ^ " << rank;
    first = false;
  }
  // group equal invariant factors
  size_t i = 0;
  while (i < invariant_factors.size()) {
    size_t j = i;
    while (j < invariant_factors.size() && invariant_factors[j] == invariant_factors[i]) ++j;
    if (!first) os << " + ";
    first = false;
    os << "Z/" << invariant_factors[i].get_str();
    if (j - i > 1) os << " ^ " << (j - i);
    i = j;
  }
  return os.str();
}

PresentedGroup::PresentedGroup(int gens, IntMatrix relations)
    : gens_(gens), relations_(std::move(relations)) {
  if (relations_.rows != gens_) throw std::invalid_argument("relation matrix rows != gens");
}

const Hnf& PresentedGroup::lattice() const {
  if (!hnf_) hnf_ = hermite_cols(relations_);
  return *hnf_;
}

const Smith& PresentedGroup::smith_diag() const {
  if (!smith_diag_) {
    // Smith of the Hermite basis: same lattice, fewer columns.
    const Hnf& h = lattice();
    smith_diag_ = smith(IntMatrix::from_columns(gens_, h.cols));
  }
  return *smith_diag_;
}

const Smith& PresentedGroup::smith_full() const {
  if (!smith_full_) {
    const Hnf& h = lattice();
    smith_full_ =
        smith(IntMatrix::from_columns(gens_, h.cols), SmithOptions{.with_U = true, .with_W = true});
  }
  return *smith_full_;
}

const F2Space& PresentedGroup::relations_mod2() const {
  if (!mod2_) {
    // The Hermite basis spans the same lattice as the raw relators, so its
    // mod-2 reductions span the same F2 image.
    F2Space s(gens_);
    for (auto& col : lattice().cols) {
      F2Vec v(gens_);
      for (auto& [r, val] : col)
        if (mpz_odd_p(val.get_mpz_t())) v.flip(r);
      s.insert(std::move(v));
    }
    mod2_ = std::move(s);
  }
  return *mod2_;
}

GroupStructure PresentedGroup::structure() const {
  const Smith& s = smith_diag();
  GroupStructure out;
  out.rank = gens_ - s.rank();
  for (auto& d : s.diag)
    if (d > 1) out.invariant_factors.push_back(d);
  if (!out.invariant_factors.empty()) {
    const Smith& f = smith_full();
    for (int i = 0; i < f.rank(); ++i) {
      if (f.diag[i] > 1) {
        std::vector<Int> col(gens_);
        for (int r = 0; r < gens_; ++r) col[r] = f.W[r][i];
        out.torsion_basis.push_back(std::move(col));
      }
    }
  }
  return out;
}

std::vector<Int> PresentedGroup::reduce(std::vector<Int> x) const {
  return hnf_reduce(lattice(), std::move(x));
}

bool PresentedGroup::equal(const std::vector<Int>& x, const std::vector<Int>& y) const {
  std::vector<Int> d(gens_);
  for (int i = 0; i < gens_; ++i) d[i] = x[i] - y[i];
  return is_zero(d);
}

SmithCoords PresentedGroup::coords(const std::vector<Int>& x) const {
  const Smith& s = smith_full();
  SmithCoords out;
  std::vector<Int> y(gens_, 0);
  for (int i = 0; i < gens_; ++i)
    for (int j = 0; j < gens_; ++j)
      if (x[j] != 0 && s.U[i][j] != 0) y[i] += s.U[i][j] * x[j];
  for (int i = 0; i < s.rank(); ++i) {
    if (s.diag[i] > 1) {
      Int r;
      mpz_fdiv_r(r.get_mpz_t(), y[i].get_mpz_t(), s.diag[i].get_mpz_t());
      out.torsion.push_back(r);
    }
  }
  for (int i = s.rank(); i < gens_; ++i) out.free.push_back(y[i]);
  return out;
}

bool PresentedGroup::is_zero_mod2(const std::vector<Int>& x) const {
  F2Vec v(gens_);
  for (int i = 0; i < gens_; ++i)
    if (mpz_odd_p(x[i].get_mpz_t())) v.flip(i);
  return relations_mod2().contains(v);
}

int PresentedGroup::dim_mod2() const { return gens_ - relations_mod2().rank(); }

bool PresentedGroup::is_zero_qz_scaled(const std::vector<Int>& num, const Int& q) const {
  if (q == 1) return true;  // everything integral dies in Q/Z
  // num/q == 0 in G tensor Q/Z  <=>  num in q Z^G + sat(Lattice).
  if (q == 2 && smith_diag().torsion().empty()) {
    // torsion-free: sat = lattice; a pure F2 test
    return is_zero_mod2(num);
  }
  if (!sat_plus_ || sat_plus_q_ != q) {
    const Smith& s = smith_full();
    std::vector<std::map<int, Int>> cols;
    for (int i = 0; i < s.rank(); ++i) {
      std::map<int, Int> c;
      for (int r = 0; r < gens_; ++r)
        if (s.W[r][i] != 0) c.emplace(r, s.W[r][i]);
      cols.push_back(std::move(c));
    }
    for (int r = 0; r < gens_; ++r) cols.push_back({{r, q}});
    sat_plus_ = hermite_cols(gens_, cols);
    sat_plus_q_ = q;
  }
  return hnf_contains(*sat_plus_, num);
}

bool PresentedGroup::is_zero_qz(const std::vector<Rat>& x) const {
  Int q = 1;
  for (auto& r : x) {
    Int den = r.get_den();
    q = q / gcd(q, den) * den;
  }
  std::vector<Int> num(gens_);
  for (int i = 0; i < gens_; ++i) {
    Rat scaled = x[i] * Rat(q);
    num[i] = scaled.get_num();  // integral by construction
  }
  return is_zero_qz_scaled(num, q);
}

GroupElement make_element(const PresentedGroup& g, std::vector<Int> raw) {
  return GroupElement{&g, g.reduce(std::move(raw))};
}

GroupHom::GroupHom(const PresentedGroup* src, const PresentedGroup* tgt, IntMatrix m, bool check)
    : src_(src), tgt_(tgt), m_(std::move(m)) {
  if (m_.rows != tgt_->gens() || m_.cols != src_->gens())
    throw std::invalid_argument("hom matrix shape mismatch");
  if (check) {
    auto cols = src_->relations().to_columns();
    for (size_t j = 0; j < cols.size(); ++j) {
      std::vector<Int> x(src_->gens(), 0);
      for (auto& [r, v] : cols[j]) x[r] = v;
      if (!tgt_->is_zero(m_.apply(x)))
        throw WellDefinednessError(
            static_cast<int>(j),
            "hom not well-defined: source relator " + std::to_string(j) +
                " does not map into the target relation lattice");
    }
  }
}

std::vector<std::vector<Int>> GroupHom::kernel_lattice() const {
  // Constraints in the target's Smith coordinates: torsion rows become
  // congruences, free rows equalities; unit rows drop out.
  const Smith& s = tgt_->smith_full();
  int tg = tgt_->gens();
  std::vector<int> keeprows;
  std::vector<Int> mods;
  for (int i = 0; i < s.rank(); ++i)
    if (s.diag[i] > 1) {
      keeprows.push_back(i);
      mods.push_back(s.diag[i]);
    }
  for (int i = s.rank(); i < tg; ++i) {
    keeprows.push_back(i);
    mods.push_back(0);
  }
  IntMatrix c(static_cast<int>(keeprows.size()), src_->gens());
  for (size_t r = 0; r < keeprows.size(); ++r) {
    int i = keeprows[r];
    // row i of U * M
    for (int k = 0; k < tg; ++k) {
      if (s.U[i][k] == 0) continue;
      for (auto& [j, mv] : m_.row[k]) c.add(static_cast<int>(r), j, s.U[i][k] * mv);
    }
  }
  return congruence_kernel(c, mods);
}

bool GroupHom::is_injective() const {
  auto ker = kernel_lattice();
  const Hnf& lat = src_->lattice();
  for (auto& v : ker)
    if (!hnf_contains(lat, v)) return false;
  return true;
}

GroupStructure GroupHom::cokernel_structure() const {
  // target / (image + target relations)
  IntMatrix all(tgt_->gens(), m_.cols + tgt_->relations().cols);
  for (int r = 0; r < tgt_->gens(); ++r) {
    for (auto& [c, v] : m_.row[r]) all.row[r].emplace(c, v);
    for (auto& [c, v] : tgt_->relations().row[r]) all.row[r].emplace(m_.cols + c, v);
  }
  PresentedGroup q(tgt_->gens(), std::move(all));
  GroupStructure st = q.structure();
  st.torsion_basis.clear();
  return st;
}

bool GroupHom::is_isomorphism() const { return is_injective() && is_surjective(); }

PresentedGroup GroupHom::kernel_group() const {
  auto ker = kernel_lattice();
  // Present on the kernel basis: relators express source relators in it.
  std::vector<std::map<int, Int>> cols;
  for (auto& v : ker) {
    std::map<int, Int> c;
    for (int i = 0; i < src_->gens(); ++i)
      if (v[i] != 0) c.emplace(i, v[i]);
    cols.push_back(std::move(c));
  }
  Hnf kh = hermite_cols(src_->gens(), cols);
  int kg = static_cast<int>(kh.cols.size());
  auto rel_cols = src_->relations().to_columns();
  IntMatrix rel(kg, static_cast<int>(rel_cols.size()));
  for (size_t j = 0; j < rel_cols.size(); ++j) {
    std::vector<Int> x(src_->gens(), 0);
    for (auto& [r, v] : rel_cols[j]) x[r] = v;
    auto sol = hnf_solve(kh, std::move(x));
    if (!sol) throw std::logic_error("source relator not inside kernel lattice");
    for (int i = 0; i < kg; ++i) rel.set(i, static_cast<int>(j), (*sol)[i]);
  }
  return PresentedGroup(kg, std::move(rel));
}

PresentedGroup GroupHom::image_group() const {
  // image = source / kernel: present on source generators with kernel relators.
  auto ker = kernel_lattice();
  IntMatrix rel(src_->gens(), static_cast<int>(ker.size()));
  for (size_t j = 0; j < ker.size(); ++j)
    for (int i = 0; i < src_->gens(); ++i)
      if (ker[j][i] != 0) rel.set(i, static_cast<int>(j), ker[j][i]);
  return PresentedGroup(src_->gens(), std::move(rel));
}

GroupHom hom_from_images(const PresentedGroup& src, const PresentedGroup& tgt,
                         const std::vector<std::vector<Int>>& images) {
  if (static_cast<int>(images.size()) != src.gens())
    throw std::invalid_argument("one image per source generator required");
  IntMatrix m(tgt.gens(), src.gens());
  for (int j = 0; j < src.gens(); ++j)
    for (int i = 0; i < tgt.gens(); ++i)
      if (images[j][i] != 0) m.set(i, j, images[j][i]);
  return GroupHom(&src, &tgt, std::move(m), true);
}

PresentedGroup subgroup_presentation(const PresentedGroup& g,
                                     const std::vector<std::vector<Int>>& elements) {
  // Relations: {c : sum_i c_i elt_i == 0 in g}, via the hom from Z^k.
  PresentedGroup freek(static_cast<int>(elements.size()),
                       IntMatrix(static_cast<int>(elements.size()), 0));
  IntMatrix m(g.gens(), static_cast<int>(elements.size()));
  for (size_t j = 0; j < elements.size(); ++j)
    for (int i = 0; i < g.gens(); ++i)
      if (elements[j][i] != 0) m.set(i, static_cast<int>(j), elements[j][i]);
  GroupHom f(&freek, &g, std::move(m), false);
  auto ker = f.kernel_lattice();
  IntMatrix rel(static_cast<int>(elements.size()), static_cast<int>(ker.size()));
  for (size_t j = 0; j < ker.size(); ++j)
    for (size_t i = 0; i < elements.size(); ++i)
      if (ker[j][i] != 0) rel.set(static_cast<int>(i), static_cast<int>(j), ker[j][i]);
  return PresentedGroup(static_cast<int>(elements.size()), std::move(rel));
}

PresentedGroup quotient_presentation(const PresentedGroup& g,
                                     const std::vector<std::vector<Int>>& extra) {
  IntMatrix rel(g.gens(), g.relations().cols + static_cast<int>(extra.size()));
  for (int r = 0; r < g.gens(); ++r)
    for (auto& [c, v] : g.relations().row[r]) rel.row[r].emplace(c, v);
  for (size_t j = 0; j < extra.size(); ++j)
    for (int i = 0; i < g.gens(); ++i)
      if (extra[j][i] != 0) rel.set(i, g.relations().cols + static_cast<int>(j), extra[j][i]);
  return PresentedGroup(g.gens(), std::move(rel));
}

PresentedGroup direct_sum(const PresentedGroup& a, const PresentedGroup& b) {
  IntMatrix rel(a.gens() + b.gens(), a.relations().cols + b.relations().cols);
  for (int r = 0; r < a.gens(); ++r)
    for (auto& [c, v] : a.relations().row[r]) rel.row[r].emplace(c, v);
  for (int r = 0; r < b.gens(); ++r)
    for (auto& [c, v] : b.relations().row[r])
      rel.row[a.gens() + r].emplace(a.relations().cols + c, v);
  return PresentedGroup(a.gens() + b.gens(), std::move(rel));
}

}  // namespace jd
