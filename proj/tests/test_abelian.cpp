#include <doctest.h>

#include <random>

#include "jd/group.hpp"
#include "jd/matrix.hpp"
#include "jd/smith.hpp"

using namespace jd;

namespace {

IntMatrix from_rows(int rows, int cols, const std::vector<std::vector<long>>& data) {
  IntMatrix m(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c)
      if (data[r][c] != 0) m.set(r, c, data[r][c]);
  return m;
}

}  // namespace

TEST_CASE("smith: simple cases") {
  auto s = smith(from_rows(2, 2, {{2, 0}, {0, 0}}));
  CHECK(s.diag == std::vector<Int>{2});

  s = smith(from_rows(1, 3, {{2, 4, 6}}));
  CHECK(s.diag == std::vector<Int>{2});

  s = smith(IntMatrix(3, 4));
  CHECK(s.diag.empty());

  // divisibility chain
  s = smith(from_rows(2, 2, {{2, 0}, {0, 3}}));
  CHECK(s.diag == std::vector<Int>{1, 6});

  s = smith(from_rows(3, 3, {{4, 0, 0}, {0, 6, 0}, {0, 0, 10}}));
  REQUIRE(s.diag.size() == 3);
  CHECK(s.diag[0] == 2);
  CHECK(s.diag[1] % s.diag[0] == 0);
  CHECK(s.diag[2] % s.diag[1] == 0);
  CHECK(s.diag[0] * s.diag[1] * s.diag[2] == 240);
}

TEST_CASE("smith: U*A*V = D with unimodular transforms on random matrices") {
  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 25; ++trial) {
    int r = 1 + static_cast<int>(rng() % 5), c = 1 + static_cast<int>(rng() % 5);
    IntMatrix a(r, c);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j) {
        long v = static_cast<long>(rng() % 11) - 5;
        if (v) a.set(i, j, v);
      }
    Smith s = smith(a, SmithOptions{.with_U = true, .with_W = true, .with_V = true});
    // D = U A V
    DenseMat ua = dense_mul(s.U, to_dense(a));
    DenseMat d = dense_mul(ua, s.V);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < c; ++j) {
        Int expect = (i == j && i < s.rank()) ? s.diag[i] : Int(0);
        CHECK(d[i][j] == expect);
      }
    // W = U^{-1}
    DenseMat uw = dense_mul(s.U, s.W);
    for (int i = 0; i < r; ++i)
      for (int j = 0; j < r; ++j) CHECK(uw[i][j] == (i == j ? 1 : 0));
    // divisibility chain
    for (size_t i = 0; i + 1 < s.diag.size(); ++i) CHECK(s.diag[i + 1] % s.diag[i] == 0);
  }
}

TEST_CASE("smith: structure invariant under shuffles") {
  std::mt19937_64 rng(99);
  IntMatrix base = from_rows(4, 5, {{2, 4, 0, 0, 6},
                                    {0, 0, 3, 9, 3},
                                    {2, 4, 3, 9, 9},
                                    {0, 8, 0, 4, 4}});
  auto ref = smith(base).diag;
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<int> rp{0, 1, 2, 3}, cp{0, 1, 2, 3, 4};
    std::shuffle(rp.begin(), rp.end(), rng);
    std::shuffle(cp.begin(), cp.end(), rng);
    IntMatrix m(4, 5);
    for (int r = 0; r < 4; ++r)
      for (auto& [c, v] : base.row[r]) m.set(rp[r], cp[c], v);
    CHECK(smith(m).diag == ref);
  }
}

TEST_CASE("hermite reduction gives canonical coset representatives") {
  // lattice spanned by (2,0),(0,3)
  auto h = hermite_cols(2, {{{0, Int(2)}}, {{1, Int(3)}}});
  auto r1 = hnf_reduce(h, {Int(5), Int(7)});
  auto r2 = hnf_reduce(h, {Int(-1), Int(1)});
  CHECK(r1 == r2);
  CHECK(hnf_contains(h, {Int(4), Int(-6)}));
  CHECK_FALSE(hnf_contains(h, {Int(1), Int(0)}));
}

TEST_CASE("integer kernel") {
  auto ker = integer_kernel(from_rows(1, 3, {{1, 2, 3}}));
  CHECK(ker.size() == 2);
  for (auto& v : ker) CHECK(v[0] + 2 * v[1] + 3 * v[2] == 0);
}

TEST_CASE("presented groups") {
  // generators 2, relation 2*g1 -> Z + Z/2
  PresentedGroup g(2, from_rows(2, 1, {{2}, {0}}));
  auto st = g.structure();
  CHECK(st.rank == 1);
  CHECK(st.invariant_factors == std::vector<Int>{2});
  REQUIRE(st.torsion_basis.size() == 1);
  // torsion basis element has order exactly 2
  auto t = st.torsion_basis[0];
  CHECK_FALSE(g.is_zero(t));
  std::vector<Int> t2 = {2 * t[0], 2 * t[1]};
  CHECK(g.is_zero(t2));

  CHECK(g.dim_mod2() == 2);

  // reduce is a retraction
  std::vector<Int> x = {Int(7), Int(5)};
  CHECK(g.reduce(g.reduce(x)) == g.reduce(x));
}

TEST_CASE("coefficient change to Q/Z") {
  // Z + Z/2 with generators (free, torsion)
  PresentedGroup g(2, from_rows(2, 1, {{0}, {2}}));
  // (1/2)*(2,0) = 0
  CHECK(g.is_zero_qz({Rat(1), Rat(0)}));
  // (1/2)*(1,0) != 0
  CHECK_FALSE(g.is_zero_qz({Rat(1, 2), Rat(0)}));
  // (1/2)*(0,1): torsion dies
  CHECK(g.is_zero_qz({Rat(0), Rat(1, 2)}));
}

TEST_CASE("homs: identity, doubling, certificates") {
  PresentedGroup z(1, IntMatrix(1, 0));
  GroupHom id = hom_from_images(z, z, {{Int(1)}});
  CHECK(id.is_isomorphism());

  GroupHom dbl = hom_from_images(z, z, {{Int(2)}});
  CHECK(dbl.is_injective());
  auto coker = dbl.cokernel_structure();
  CHECK(coker.rank == 0);
  CHECK(coker.invariant_factors == std::vector<Int>{2});

  // ill-defined map reports the offending relator: Z/2 -> Z, 1 -> 1
  PresentedGroup z2(1, from_rows(1, 1, {{2}}));
  CHECK_THROWS_AS(hom_from_images(z2, z, {{Int(1)}}), WellDefinednessError);

  // rank(source) = rank(kernel) + rank(image)
  PresentedGroup z3(3, IntMatrix(3, 0));
  PresentedGroup z1(1, IntMatrix(1, 0));
  GroupHom f(&z3, &z1, from_rows(1, 3, {{1, 2, 3}}), true);
  CHECK(f.kernel_group().structure().rank + f.image_group().structure().rank == 3);
}

TEST_CASE("subgroup and quotient presentations") {
  // G = Z^2; subgroup generated by (2,0) and (0,2) is Z^2
  PresentedGroup g(2, IntMatrix(2, 0));
  auto sub = subgroup_presentation(g, {{Int(2), Int(0)}, {Int(0), Int(2)}});
  CHECK(sub.structure().rank == 2);
  // quotient by those elements is (Z/2)^2
  auto q = quotient_presentation(g, {{Int(2), Int(0)}, {Int(0), Int(2)}});
  auto st = q.structure();
  CHECK(st.rank == 0);
  CHECK(st.invariant_factors == std::vector<Int>{2, 2});
}
