#include "jd/operators.hpp"

#include <algorithm>
#include <stdexcept>

#include "jd/canonical.hpp"

namespace jd {

namespace {

std::vector<std::vector<Occ>> incidence(const Diagram& d) {
  std::vector<std::vector<Occ>> inc(d.vertex_count());
  for (int e = 0; e < static_cast<int>(d.edges.size()); ++e) {
    inc[d.edges[e].first].push_back(Occ{e, 0});
    inc[d.edges[e].second].push_back(Occ{e, 1});
  }
  return inc;
}

int endpoint(const Diagram& d, const Occ& o) {
  return o.end == 0 ? d.edges[o.edge].first : d.edges[o.edge].second;
}

void set_endpoint(Diagram& d, const Occ& o, int v) {
  if (o.end == 0)
    d.edges[o.edge].first = v;
  else
    d.edges[o.edge].second = v;
}

// Adds a trivalent vertex; leg vertex ids in edges shift up by one.
int add_trivalent(Diagram& d) {
  int v = d.trivalent;
  for (auto& [a, b] : d.edges) {
    if (a >= v) ++a;
    if (b >= v) ++b;
  }
  ++d.trivalent;
  d.cyc.push_back({});
  return v;
}

int add_leg(Diagram& d, Label l) {
  d.legs.push_back(l);
  return d.vertex_count() - 1;
}

// The unique edge occurrence at a leg.
Occ leg_occ(const Diagram& d, int leg) {
  int lv = d.leg_vertex(leg);
  for (int e = 0; e < static_cast<int>(d.edges.size()); ++e) {
    if (d.edges[e].first == lv) return Occ{e, 0};
    if (d.edges[e].second == lv) return Occ{e, 1};
  }
  throw std::invalid_argument("leg without incident edge");
}

// Rotates cyc[v] so that the occurrence `first` leads.
std::array<Occ, 3> rotated_cyc(const Diagram& d, int v, const Occ& first) {
  const auto& c = d.cyc[v];
  for (int i = 0; i < 3; ++i)
    if (c[i] == first) return {c[i], c[(i + 1) % 3], c[(i + 2) % 3]};
  throw std::logic_error("occurrence not in cyclic order");
}

// Removes legs (no incident edges may remain); larger indices first.
void remove_legs(Diagram& d, std::vector<int> legs) {
  std::sort(legs.rbegin(), legs.rend());
  for (int j : legs) {
    int lv = d.trivalent + j;
    for (auto& [a, b] : d.edges) {
      if (a == lv || b == lv) throw std::logic_error("removing a leg that still has an edge");
      if (a > lv) --a;
      if (b > lv) --b;
    }
    d.legs.erase(d.legs.begin() + j);
  }
}

// Deletes edges by id (none may appear in any cyclic order), remapping ids.
void remove_edges(Diagram& d, std::vector<int> edges) {
  std::sort(edges.begin(), edges.end());
  std::vector<int> remap(d.edges.size());
  int shift = 0;
  size_t k = 0;
  for (int e = 0; e < static_cast<int>(d.edges.size()); ++e) {
    if (k < edges.size() && edges[k] == e) {
      remap[e] = -1;
      ++shift;
      ++k;
    } else {
      remap[e] = e - shift;
    }
  }
  for (int e = static_cast<int>(edges.size()) - 1; e >= 0; --e)
    d.edges.erase(d.edges.begin() + edges[e]);
  for (auto& c : d.cyc)
    for (auto& o : c) {
      if (remap[o.edge] < 0) throw std::logic_error("deleted edge still referenced");
      o.edge = remap[o.edge];
    }
}

struct Subdivision {
  int z;            // the new midpoint vertex
  int e_first;      // edge id toward the original first endpoint
  int e_second;     // edge id toward the original second endpoint
};

// Splits edge e at a new trivalent vertex; cyc[z] is left with slots
// (toward-first, toward-second, <third set by caller>).
Subdivision subdivide_edge(Diagram& d, int e) {
  auto [x, y] = d.edges[e];
  int z = add_trivalent(d);
  // add_trivalent may have shifted leg ids inside this very edge
  x = d.edges[e].first;
  y = d.edges[e].second;
  d.edges[e] = {x, z};
  d.edges.push_back({z, y});
  int e2 = static_cast<int>(d.edges.size()) - 1;
  // fix the occurrence at y if trivalent
  if (!d.is_leg(y)) {
    for (auto& o : d.cyc[y])
      if (o.edge == e && o.end == 1) o = Occ{e2, 1};
  }
  d.cyc[z] = {Occ{e, 1}, Occ{e2, 0}, Occ{-1, 0}};
  return {z, e, e2};
}

}  // namespace

std::pair<Diagram, Diagram> delta_v_terms(const Diagram& d, int leg) {
  Occ f = leg_occ(d, leg);
  int w = endpoint(d, Occ{f.edge, 1 - f.end});
  if (d.is_leg(w)) throw std::invalid_argument("delta_v on a strut leg");
  Label l = d.legs[leg];
  Occ fw{f.edge, 1 - f.end};
  auto [fo, p, q] = rotated_cyc(d, w, fw);

  // doubled term: w splits into (w, w2) joined by a new edge m; both carry an
  // l-colored leg
  Diagram d1 = d;
  int w2 = add_trivalent(d1);
  set_endpoint(d1, q, w2);
  int lv2 = add_leg(d1, l);
  d1.edges.push_back({w2, lv2});
  int f2 = static_cast<int>(d1.edges.size()) - 1;
  d1.edges.push_back({w, w2});
  int m = static_cast<int>(d1.edges.size()) - 1;
  d1.cyc[w] = {fw, p, Occ{m, 0}};
  d1.cyc[w2] = {Occ{m, 1}, q, Occ{f2, 0}};

  // branched term: the leg edge now ends at a new vertex carrying l and l*
  Diagram d2 = d;
  int z = add_trivalent(d2);
  set_endpoint(d2, Occ{f.edge, f.end}, z);
  int lvstar = add_leg(d2, star(l));
  d2.edges.push_back({z, d2.leg_vertex(leg)});
  int g1 = static_cast<int>(d2.edges.size()) - 1;
  d2.edges.push_back({z, lvstar});
  int g2 = static_cast<int>(d2.edges.size()) - 1;
  d2.cyc[z] = {Occ{f.edge, f.end}, Occ{g2, 0}, Occ{g1, 0}};
  return {std::move(d1), std::move(d2)};
}

Diagram delta_vw_term(const Diagram& d, int v, int w) {
  if (v == w) throw std::invalid_argument("delta_vw needs two distinct legs");
  if (!(d.legs[v] == d.legs[w])) throw std::invalid_argument("delta_vw needs equal labels");
  Diagram out = d;
  Occ fv = leg_occ(out, v), fw = leg_occ(out, w);
  if (out.is_leg(endpoint(out, Occ{fv.edge, 1 - fv.end})) ||
      out.is_leg(endpoint(out, Occ{fw.edge, 1 - fw.end})))
    throw std::invalid_argument("delta_vw on a strut leg");
  int z = add_trivalent(out);
  set_endpoint(out, fv, z);
  set_endpoint(out, fw, z);
  int nl = add_leg(out, d.legs[v]);
  out.edges.push_back({z, nl});
  int g = static_cast<int>(out.edges.size()) - 1;
  out.cyc[z] = {fv, fw, Occ{g, 0}};
  // legs v and w are now orphaned
  remove_legs(out, {v, w});
  return out;
}

IhxPair ihx_at(const Diagram& d, int edge) {
  auto [u, v] = d.edges[edge];
  if (u == v || d.is_leg(u) || d.is_leg(v))
    throw std::invalid_argument("IHX needs an internal edge between distinct vertices");
  auto [eu, a, b] = rotated_cyc(d, u, Occ{edge, 0});
  auto [ev, c, cc] = rotated_cyc(d, v, Occ{edge, 1});
  const Occ& dd = cc;

  Diagram h = d;
  set_endpoint(h, a, v);
  set_endpoint(h, c, u);
  h.cyc[u] = {eu, b, c};
  h.cyc[v] = {ev, dd, a};

  Diagram x = d;
  set_endpoint(x, b, v);
  set_endpoint(x, c, u);
  x.cyc[u] = {eu, a, c};
  x.cyc[v] = {ev, dd, b};
  return {std::move(h), std::move(x)};
}

Diagram double_at_leg(const Diagram& d, int leg) {
  Occ f = leg_occ(d, leg);
  int w = endpoint(d, Occ{f.edge, 1 - f.end});
  if (d.is_leg(w)) {
    // strut: doubling the other end gives the single-vertex tree
    Label other = d.legs[w - d.trivalent];
    return build_T({other, d.legs[leg], other});
  }
  int t = d.trivalent;
  Diagram out;
  out.trivalent = 2 * t + 1;
  int z = 2 * t;
  // legs of the two copies (skipping `leg`), then the new l(v) leg
  std::vector<int> legmap0(d.leg_count(), -1), legmap1(d.leg_count(), -1);
  for (int j = 0; j < d.leg_count(); ++j) {
    if (j == leg) continue;
    legmap0[j] = static_cast<int>(out.legs.size());
    out.legs.push_back(d.legs[j]);
  }
  for (int j = 0; j < d.leg_count(); ++j) {
    if (j == leg) continue;
    legmap1[j] = static_cast<int>(out.legs.size());
    out.legs.push_back(d.legs[j]);
  }
  int newleg = static_cast<int>(out.legs.size());
  out.legs.push_back(d.legs[leg]);

  auto mapv = [&](int copy, int x) {
    if (d.is_leg(x)) {
      int j = x - t;
      return out.trivalent + (copy == 0 ? legmap0[j] : legmap1[j]);
    }
    return copy == 0 ? x : x + t;
  };
  std::vector<int> emap0(d.edges.size(), -1), emap1(d.edges.size(), -1);
  for (int copy = 0; copy < 2; ++copy) {
    for (int e = 0; e < static_cast<int>(d.edges.size()); ++e) {
      if (e == f.edge) continue;
      (copy == 0 ? emap0 : emap1)[e] = static_cast<int>(out.edges.size());
      out.edges.push_back({mapv(copy, d.edges[e].first), mapv(copy, d.edges[e].second)});
    }
  }
  out.edges.push_back({z, w});
  int e1 = static_cast<int>(out.edges.size()) - 1;
  out.edges.push_back({z, w + t});
  int e2 = static_cast<int>(out.edges.size()) - 1;
  out.edges.push_back({z, out.trivalent + newleg});
  int gl = static_cast<int>(out.edges.size()) - 1;
  out.cyc.assign(out.trivalent, {});
  Occ fw{f.edge, 1 - f.end};
  for (int copy = 0; copy < 2; ++copy) {
    auto& emap = copy == 0 ? emap0 : emap1;
    for (int x = 0; x < t; ++x) {
      std::array<Occ, 3> cc;
      for (int i = 0; i < 3; ++i) {
        Occ o = d.cyc[x][i];
        if (x == w && o == fw) {
          cc[i] = Occ{copy == 0 ? e1 : e2, 1};
        } else {
          cc[i] = Occ{emap[o.edge], o.end};
        }
      }
      out.cyc[copy == 0 ? x : x + t] = cc;
    }
  }
  out.cyc[z] = {Occ{gl, 0}, Occ{e1, 0}, Occ{e2, 0}};
  return out;
}

Diagram edge_join_at_edge(const Diagram& j1, int v, const Diagram& j2, int edge) {
  Diagram a = j1;
  Occ fv = leg_occ(a, v);
  Subdivision s1 = subdivide_edge(a, fv.edge);
  Diagram b = j2;
  Subdivision s2 = subdivide_edge(b, edge);
  Diagram u = disjoint_union(a, b);
  // vertex and edge offsets of the b part inside u
  int voff = a.trivalent;
  int eoff = static_cast<int>(a.edges.size());
  int z1 = s1.z, z2 = s2.z + voff;
  u.edges.push_back({z1, z2});
  int mid = static_cast<int>(u.edges.size()) - 1;
  u.cyc[z1][2] = Occ{mid, 0};
  u.cyc[z2] = {Occ{s2.e_first + eoff, 1}, Occ{s2.e_second + eoff, 0}, Occ{mid, 1}};
  return u;
}

Diagram edge_join(const Diagram& j1, int v, const Diagram& j2, int w) {
  return edge_join_at_edge(j1, v, j2, leg_occ(j2, w).edge);
}

// ---- delta ------------------------------------------------------------------

namespace {

void require_strut_free(const Diagram& d) {
  if (!metrics(d).strut_free)
    throw std::invalid_argument("operator requires a strut-free diagram");
}

}  // namespace

DiagramExpr delta_prime(const Diagram& d) {
  require_strut_free(d);
  DiagramExpr out;
  for (int j = 0; j < d.leg_count(); ++j) {
    auto [t1, t2] = delta_v_terms(d, j);
    out += DiagramExpr::from_diagram(t1);
    out += DiagramExpr::from_diagram(t2);
  }
  return out;
}

DiagramExpr delta_double_prime(const Diagram& d) {
  require_strut_free(d);
  DiagramExpr out;
  for (int vq = 0; vq < d.leg_count(); ++vq)
    for (int w = vq + 1; w < d.leg_count(); ++w)
      if (d.legs[vq] == d.legs[w]) out += DiagramExpr::from_diagram(delta_vw_term(d, vq, w));
  return out;
}

DiagramExpr delta_diagram(const Diagram& d) {
  DiagramExpr out = delta_prime(d);
  out += delta_double_prime(d);
  return out;
}

DiagramExpr delta_at_color(const Diagram& d, Label a) {
  require_strut_free(d);
  DiagramExpr out;
  for (int j = 0; j < d.leg_count(); ++j) {
    if (!(d.legs[j] == a)) continue;
    auto [t1, t2] = delta_v_terms(d, j);
    out += DiagramExpr::from_diagram(t1);
    out += DiagramExpr::from_diagram(t2);
  }
  for (int vq = 0; vq < d.leg_count(); ++vq)
    for (int w = vq + 1; w < d.leg_count(); ++w)
      if (d.legs[vq] == a && d.legs[w] == a)
        out += DiagramExpr::from_diagram(delta_vw_term(d, vq, w));
  return out;
}

namespace {

DiagramExpr lift(const DiagramExpr& e, DiagramExpr (*op)(const Diagram&)) {
  DiagramExpr out;
  for (auto& [k, c] : e.terms) {
    DiagramExpr t = op(decode_class(k));
    t *= c;
    out += t;
  }
  return out;
}

}  // namespace

DiagramExpr delta_prime(const DiagramExpr& e) { return lift(e, delta_prime); }
DiagramExpr delta_double_prime(const DiagramExpr& e) { return lift(e, delta_double_prime); }
DiagramExpr delta(const DiagramExpr& e) { return lift(e, delta_diagram); }
DiagramExpr delta_at_color(const DiagramExpr& e, Label a) {
  DiagramExpr out;
  for (auto& [k, c] : e.terms) {
    DiagramExpr t = delta_at_color(decode_class(k), a);
    t *= c;
    out += t;
  }
  return out;
}

DiagramExpr y_op(const Diagram& d) {
  require_strut_free(d);
  DiagramExpr out;
  for (auto& comp : split_components(d))
    if (comp.trivalent == 1) out += DiagramExpr::from_diagram(disjoint_union(d, comp));
  return out;
}

DiagramExpr y_op(const DiagramExpr& e) { return lift(e, y_op); }

DiagramExpr Delta_op(const Diagram& d) {
  auto m = metrics(d);
  if (!m.connected) throw std::invalid_argument("Delta needs a connected diagram");
  DiagramExpr out;
  for (int j = 0; j < d.leg_count(); ++j)
    out += DiagramExpr::from_diagram(double_at_leg(d, j));
  return out;
}

DiagramExpr Delta_op(const DiagramExpr& e) { return lift(e, Delta_op); }

// ---- gluing products ----------------------------------------------------------

namespace {

// Glues leg pairs (index in a, index in b); generic over strut chains.
Diagram glue(const Diagram& a, const Diagram& b, const std::vector<std::pair<int, int>>& pairs) {
  Diagram u = disjoint_union(a, b);
  std::vector<int> dead_edges;
  std::vector<int> dead_legs;
  for (auto& [pa, pb] : pairs) {
    int p = pa;
    int q = static_cast<int>(a.legs.size()) + pb;
    Occ fp = leg_occ(u, p), fq = leg_occ(u, q);
    if (fp.edge == fq.edge) throw std::logic_error("gluing would close a circle");
    int y = endpoint(u, Occ{fq.edge, 1 - fq.end});
    // the a-side edge absorbs the b-side one
    set_endpoint(u, fp, y);
    if (!u.is_leg(y)) {
      for (auto& o : u.cyc[y])
        if (o.edge == fq.edge && o.end == 1 - fq.end) o = fp;
    }
    // detach the dead edge so later leg_occ lookups skip it
    u.edges[fq.edge] = {u.leg_vertex(p), u.leg_vertex(p)};
    dead_edges.push_back(fq.edge);
    dead_legs.push_back(p);
    dead_legs.push_back(q);
  }
  // park dead edges on a dead leg, then drop them before removing legs
  remove_edges(u, dead_edges);
  remove_legs(u, dead_legs);
  return u;
}

void partial_injections(const std::vector<int>& from, const std::vector<int>& to, size_t i,
                        std::vector<bool>& used, std::vector<std::pair<int, int>>& cur,
                        const std::function<void(const std::vector<std::pair<int, int>>&)>& emit) {
  if (i == from.size()) {
    emit(cur);
    return;
  }
  partial_injections(from, to, i + 1, used, cur, emit);  // from[i] unmatched
  for (size_t j = 0; j < to.size(); ++j) {
    if (used[j]) continue;
    used[j] = true;
    cur.push_back({from[i], to[j]});
    partial_injections(from, to, i + 1, used, cur, emit);
    cur.pop_back();
    used[j] = false;
  }
}

void full_injections(const std::vector<int>& from, const std::vector<int>& to, size_t i,
                     std::vector<bool>& used, std::vector<std::pair<int, int>>& cur,
                     const std::function<void(const std::vector<std::pair<int, int>>&)>& emit) {
  if (i == from.size()) {
    emit(cur);
    return;
  }
  for (size_t j = 0; j < to.size(); ++j) {
    if (used[j]) continue;
    used[j] = true;
    cur.push_back({from[i], to[j]});
    full_injections(from, to, i + 1, used, cur, emit);
    cur.pop_back();
    used[j] = false;
  }
}

// All matchings color by color; plus = a's i+ legs, minus = b's i- legs.
void color_matchings(const Diagram& a, const Diagram& b, bool complete,
                     const std::function<void(const std::vector<std::pair<int, int>>&)>& emit) {
  int g = 0;
  for (auto& l : a.legs) g = std::max(g, l.index);
  for (auto& l : b.legs) g = std::max(g, l.index);
  std::vector<std::vector<std::pair<int, int>>> percolor;  // collected matchings per color
  std::vector<std::vector<std::vector<std::pair<int, int>>>> options;
  for (int i = 1; i <= g; ++i) {
    std::vector<int> plus, minus;
    for (int j = 0; j < a.leg_count(); ++j)
      if (a.legs[j].index == i && a.legs[j].sign > 0) plus.push_back(j);
    for (int j = 0; j < b.leg_count(); ++j)
      if (b.legs[j].index == i && b.legs[j].sign < 0) minus.push_back(j);
    std::vector<std::vector<std::pair<int, int>>> opts;
    std::vector<bool> used(minus.size(), false);
    std::vector<std::pair<int, int>> cur;
    auto collect = [&](const std::vector<std::pair<int, int>>& m) { opts.push_back(m); };
    if (complete) {
      if (plus.size() != minus.size()) return;  // no complete matching: empty sum
      full_injections(plus, minus, 0, used, cur, collect);
    } else {
      partial_injections(plus, minus, 0, used, cur, collect);
    }
    options.push_back(std::move(opts));
  }
  // cartesian product over colors
  std::vector<std::pair<int, int>> combined;
  std::function<void(size_t)> rec = [&](size_t i) {
    if (i == options.size()) {
      emit(combined);
      return;
    }
    for (auto& opt : options[i]) {
      size_t mark = combined.size();
      combined.insert(combined.end(), opt.begin(), opt.end());
      rec(i + 1);
      combined.resize(mark);
    }
  };
  rec(0);
}

}  // namespace

DiagramExpr star(const Diagram& a, const Diagram& b) {
  require_strut_free(a);
  require_strut_free(b);
  DiagramExpr out;
  color_matchings(a, b, false, [&](const std::vector<std::pair<int, int>>& m) {
    out += DiagramExpr::from_diagram(glue(a, b, m));
  });
  return out;
}

DiagramExpr star(const DiagramExpr& a, const DiagramExpr& b) {
  DiagramExpr out;
  for (auto& [ka, ca] : a.terms)
    for (auto& [kb, cb] : b.terms) {
      DiagramExpr t = star(decode_class(ka), decode_class(kb));
      t *= ca * cb;
      out += t;
    }
  return out;
}

DiagramExpr star_i(const Diagram& a, const Diagram& b, int color_index) {
  DiagramExpr out;
  for (auto& term : star_i_terms(a, b, color_index))
    out += DiagramExpr::from_diagram(term.glued);
  return out;
}

std::vector<StarTerm> star_i_terms(const Diagram& a, const Diagram& b, int color_index) {
  require_strut_free(a);
  require_strut_free(b);
  std::vector<int> plus, minus;
  for (int j = 0; j < a.leg_count(); ++j)
    if (a.legs[j].index == color_index && a.legs[j].sign > 0) plus.push_back(j);
  for (int j = 0; j < b.leg_count(); ++j)
    if (b.legs[j].index == color_index && b.legs[j].sign < 0) minus.push_back(j);
  std::vector<StarTerm> out;
  std::vector<bool> used(minus.size(), false);
  std::vector<std::pair<int, int>> cur;
  partial_injections(plus, minus, 0, used, cur, [&](const std::vector<std::pair<int, int>>& m) {
    StarTerm term;
    term.glued = glue(a, b, m);
    // surviving legs: track by original indices, skipping matched ones
    std::vector<bool> amatched(a.legs.size(), false), bmatched(b.legs.size(), false);
    for (auto& [p, q] : m) {
      amatched[p] = true;
      bmatched[q] = true;
    }
    // in the glued diagram, legs keep their relative order (a's then b's)
    int pos = 0;
    for (int j = 0; j < a.leg_count(); ++j) {
      if (amatched[j]) continue;
      if (a.legs[j].index == color_index && a.legs[j].sign > 0) term.left_legs.push_back(pos);
      ++pos;
    }
    for (int j = 0; j < b.leg_count(); ++j) {
      if (bmatched[j]) continue;
      if (b.legs[j].index == color_index && b.legs[j].sign < 0) term.right_legs.push_back(pos);
      ++pos;
    }
    out.push_back(std::move(term));
  });
  return out;
}

DiagramExpr compose(const Diagram& a, const Diagram& b) {
  if (!metrics(a).top_substantial)
    throw std::invalid_argument("compose requires a top-substantial left factor");
  DiagramExpr out;
  color_matchings(a, b, true, [&](const std::vector<std::pair<int, int>>& m) {
    out += DiagramExpr::from_diagram(glue(a, b, m));
  });
  return out;
}

DiagramExpr compose(const DiagramExpr& a, const DiagramExpr& b) {
  DiagramExpr out;
  for (auto& [ka, ca] : a.terms)
    for (auto& [kb, cb] : b.terms) {
      DiagramExpr t = compose(decode_class(ka), decode_class(kb));
      t *= ca * cb;
      out += t;
    }
  return out;
}

DiagramExpr rev(const DiagramExpr& e) {
  DiagramExpr out;
  for (auto& [k, c] : e.terms)
    out += DiagramExpr::from_diagram(rev_diagram(decode_class(k)), c);
  return out;
}

}  // namespace jd
