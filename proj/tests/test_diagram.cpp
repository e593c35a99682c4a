#include <doctest.h>

#include <algorithm>
#include <random>

#include "jd/canonical.hpp"
#include "jd/diagram.hpp"
#include "jd/expr.hpp"

using namespace jd;

namespace {

Label L(int i, char s) { return Label{i, s == '+' ? +1 : -1}; }

// Random relabeling of vertices plus random cyclic rotations (sign-neutral)
// to probe isomorphism invariance.
Diagram shuffled(const Diagram& d, std::mt19937_64& rng, int* parity_flips = nullptr) {
  Diagram out;
  int t = d.trivalent, m = d.leg_count();
  std::vector<int> vperm(t), lperm(m);
  for (int i = 0; i < t; ++i) vperm[i] = i;
  for (int i = 0; i < m; ++i) lperm[i] = i;
  std::shuffle(vperm.begin(), vperm.end(), rng);
  std::shuffle(lperm.begin(), lperm.end(), rng);
  out.trivalent = t;
  out.legs.resize(m);
  for (int i = 0; i < m; ++i) out.legs[lperm[i]] = d.legs[i];
  std::vector<int> eperm(d.edges.size());
  for (size_t i = 0; i < eperm.size(); ++i) eperm[i] = static_cast<int>(i);
  std::shuffle(eperm.begin(), eperm.end(), rng);
  out.edges.resize(d.edges.size());
  auto mapv = [&](int v) { return d.is_leg(v) ? t + lperm[v - t] : vperm[v]; };
  for (size_t e = 0; e < d.edges.size(); ++e)
    out.edges[eperm[e]] = {mapv(d.edges[e].first), mapv(d.edges[e].second)};
  out.cyc.resize(t);
  int flips = 0;
  for (int v = 0; v < t; ++v) {
    std::array<Occ, 3> occ;
    for (int i = 0; i < 3; ++i) occ[i] = Occ{eperm[d.cyc[v][i].edge], d.cyc[v][i].end};
    int rot = static_cast<int>(rng() % 3);
    std::array<Occ, 3> rotated;
    for (int i = 0; i < 3; ++i) rotated[i] = occ[(i + rot) % 3];
    if (rng() % 2) {  // reversal: flips the AS sign
      std::swap(rotated[1], rotated[2]);
      ++flips;
    }
    out.cyc[vperm[v]] = rotated;
  }
  if (parity_flips) *parity_flips = flips;
  return out;
}

}  // namespace

TEST_CASE("builders validate") {
  CHECK_NOTHROW(validate(build_T({L(1, '+'), L(2, '+'), L(3, '-')})));
  CHECK_NOTHROW(validate(build_T({L(1, '+'), L(2, '+'), L(3, '-'), L(1, '-'), L(2, '-')})));
  CHECK_NOTHROW(validate(build_O({L(1, '+')})));
  CHECK_NOTHROW(validate(build_O({L(1, '+'), L(1, '-')})));
  CHECK_NOTHROW(validate(build_strut(L(1, '+'), L(1, '+'))));
  CHECK_THROWS(build_T({L(1, '+'), L(2, '+')}));
}

TEST_CASE("metrics") {
  auto t = build_T({L(1, '+'), L(2, '+'), L(3, '-')});
  auto m = metrics(t);
  CHECK(m.i_deg == 1);
  CHECK(m.connected);
  CHECK(m.loop_deg_per_component[0] == 0);

  auto o = build_O({L(1, '+'), L(2, '-')});
  m = metrics(o);
  CHECK(m.i_deg == 2);
  CHECK(m.loop_deg_per_component[0] == 1);

  auto s = build_strut(L(1, '+'), L(1, '+'));
  m = metrics(s);
  CHECK_FALSE(m.strut_free);
  CHECK_FALSE(m.top_substantial);
  CHECK(metrics(build_strut(L(1, '+'), L(1, '-'))).top_substantial);

  auto u = disjoint_union(t, o);
  m = metrics(u);
  CHECK(m.i_deg == 3);
  CHECK(m.component_count == 2);
  CHECK(split_components(u).size() == 2);
}

TEST_CASE("canonicalize: self-loop is sign 0") {
  CHECK(canonicalize(build_O({L(1, '+')})).sign == 0);
}

TEST_CASE("canonicalize: AS flip negates") {
  auto d = build_T({L(1, '+'), L(2, '+'), L(3, '-')});
  auto c = canonicalize(d);
  CHECK(c.sign != 0);
  CHECK_FALSE(c.odd_automorphism);
  Diagram flipped = d;
  std::swap(flipped.cyc[0][0], flipped.cyc[0][1]);
  auto cf = canonicalize(flipped);
  CHECK(cf.key == c.key);
  CHECK(cf.sign == -c.sign);
}

TEST_CASE("canonicalize: iso invariance with signs") {
  std::mt19937_64 rng(12345);
  std::vector<Diagram> samples = {
      build_T({L(1, '+'), L(2, '+'), L(3, '-')}),
      build_T({L(1, '+'), L(1, '+'), L(2, '-'), L(2, '+'), L(1, '-')}),
      build_O({L(1, '+'), L(1, '-')}),
      build_O({L(1, '+'), L(2, '+'), L(1, '-'), L(2, '-')}),
      disjoint_union(build_T({L(1, '+'), L(2, '+'), L(3, '-')}), build_O({L(2, '+'), L(2, '-')})),
      disjoint_union(build_strut(L(1, '+'), L(2, '-')), build_strut(L(1, '+'), L(3, '-'))),
  };
  for (auto& d : samples) {
    auto c = canonicalize(d);
    for (int trial = 0; trial < 30; ++trial) {
      int flips = 0;
      Diagram s = shuffled(d, rng, &flips);
      validate(s);
      auto cs = canonicalize(s);
      CHECK(cs.key == c.key);
      if (c.sign != 0 && !c.odd_automorphism) {
        int expect = flips % 2 == 0 ? c.sign : -c.sign;
        CHECK(cs.sign == expect);
      }
    }
  }
}

TEST_CASE("canonicalize: decode round-trip is idempotent") {
  std::vector<Diagram> samples = {
      build_T({L(1, '+'), L(2, '+'), L(3, '-')}),
      build_T({L(2, '-'), L(1, '+'), L(2, '+'), L(1, '-')}),
      build_O({L(1, '+'), L(2, '+'), L(2, '-')}),
      build_strut(L(1, '+'), L(2, '-')),
      disjoint_union(build_T({L(1, '+'), L(2, '+'), L(3, '-')}), build_O({L(2, '+'), L(2, '-')})),
  };
  for (auto& d : samples) {
    auto c = canonicalize(d);
    Diagram rep = decode_class(c.key);
    validate(rep);
    auto c2 = canonicalize(rep);
    CHECK(c2.key == c.key);
    CHECK(c2.sign == +1);
  }
}

TEST_CASE("odd automorphism examples") {
  // T(a,b,a): swapping the two a-legs reverses the cyclic order parity.
  CHECK(canonicalize(build_T({L(1, '+'), L(2, '+'), L(1, '+')})).odd_automorphism);
  // O(a,a) has only even automorphisms (the space A^c_{2,1} is torsion-free).
  CHECK_FALSE(canonicalize(build_O({L(1, '+'), L(1, '+')})).odd_automorphism);
  CHECK_FALSE(canonicalize(build_T({L(1, '+'), L(2, '+'), L(3, '-')})).odd_automorphism);
}

TEST_CASE("wheel reversal sign is (-1)^n") {
  for (int n = 2; n <= 5; ++n) {
    std::vector<Label> w, rw;
    for (int i = 0; i < n; ++i) w.push_back(Label{1, i % 2 ? +1 : -1});
    // use distinct-ish labels to avoid extra symmetry at odd n
    w.clear();
    w.push_back(L(1, '+'));
    w.push_back(L(1, '-'));
    w.push_back(L(2, '+'));
    if (n >= 4) w.push_back(L(2, '-'));
    if (n >= 5) w.push_back(L(3, '+'));
    w.resize(n, L(3, '-'));
    rw = w;
    std::reverse(rw.begin(), rw.end());
    auto a = canonicalize(build_O(w));
    auto b = canonicalize(build_O(rw));
    CHECK(a.key == b.key);
    if (!a.odd_automorphism) {
      CHECK(a.sign * b.sign == (n % 2 == 0 ? +1 : -1));
    }
  }
}

TEST_CASE("expr parse and render") {
  auto e = parse_expr("T(1+,2+,3-) + 2*O(1+,1-)", 3);
  CHECK(e.terms.size() == 2);
  CHECK(render(parse_expr(render(e), 3)) == render(e));

  auto lit = parse_expr(
      "G{t=2; legs=[1+,2-]; edges=[(v1,v2),(v1,v2),(v1,l1),(v2,l2)]; "
      "cyc={v1:[e1,e2,e3], v2:[e2,e1,e4]}}",
      2);
  CHECK(lit.terms.size() == 1);
  auto o = parse_expr("O(1+,2-)", 2);
  CHECK(lit.terms.begin()->first == o.terms.begin()->first);

  CHECK_THROWS_AS(parse_expr("T(1+,2+)", 2), ParseError);
  CHECK_THROWS_AS(parse_expr("T(1+,2+,5-)", 2), ParseError);
  CHECK_THROWS_AS(parse_expr("T(1+,2+,3~)", 3), ParseError);

  // AS cancellation at expression level
  auto sum = parse_expr("T(1+,2+,3-) + T(2+,1+,3-)", 3);
  CHECK(sum.is_zero());

  // render picks a +1-sign representative
  auto t = parse_expr("T(3-,1+,2+)", 3);
  auto back = parse_expr(render(t), 3);
  CHECK(back == t);
}

TEST_CASE("empty diagram round trip") {
  Diagram d;
  auto c = canonicalize(d);
  CHECK(c.key == kEmptyClass);
  CHECK(c.sign == 1);
}
