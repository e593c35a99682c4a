#include "jd/diagram.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>
#include <string>

namespace jd {

namespace {

// (edge, end) pairs incident to each vertex.
std::vector<std::vector<Occ>> incidence(const Diagram& d) {
  std::vector<std::vector<Occ>> inc(d.vertex_count());
  for (int e = 0; e < static_cast<int>(d.edges.size()); ++e) {
    auto [u, v] = d.edges[e];
    if (u < 0 || u >= d.vertex_count() || v < 0 || v >= d.vertex_count())
      throw std::invalid_argument("edge " + std::to_string(e) + " endpoint out of range");
    inc[u].push_back(Occ{e, 0});
    inc[v].push_back(Occ{e, 1});
  }
  return inc;
}

struct UnionFind {
  std::vector<int> p;
  explicit UnionFind(int n) : p(n) { std::iota(p.begin(), p.end(), 0); }
  int find(int x) { return p[x] == x ? x : p[x] = find(p[x]); }
  void unite(int a, int b) { p[find(a)] = find(b); }
};

}  // namespace

void validate(const Diagram& d) {
  if (static_cast<int>(d.cyc.size()) != d.trivalent)
    throw std::invalid_argument("cyclic-order table size differs from trivalent count");
  auto inc = incidence(d);
  for (int v = 0; v < d.trivalent; ++v) {
    if (inc[v].size() != 3)
      throw std::invalid_argument("trivalent vertex v" + std::to_string(v + 1) + " has " +
                                  std::to_string(inc[v].size()) + " incident edge ends, expected 3");
    // cyc[v] must be a permutation of the incident occurrences.
    std::vector<Occ> a(inc[v]), b(d.cyc[v].begin(), d.cyc[v].end());
    auto key = [](const Occ& o) { return o.edge * 2 + o.end; };
    std::sort(a.begin(), a.end(), [&](auto x, auto y) { return key(x) < key(y); });
    std::sort(b.begin(), b.end(), [&](auto x, auto y) { return key(x) < key(y); });
    for (int i = 0; i < 3; ++i)
      if (!(a[i] == b[i]))
        throw std::invalid_argument("cyclic order at v" + std::to_string(v + 1) +
                                    " is not a permutation of its incident edge ends");
  }
  for (int j = 0; j < d.leg_count(); ++j) {
    if (inc[d.leg_vertex(j)].size() != 1)
      throw std::invalid_argument("leg l" + std::to_string(j + 1) + " has " +
                                  std::to_string(inc[d.leg_vertex(j)].size()) +
                                  " incident edge ends, expected 1");
  }
}

std::vector<int> components(const Diagram& d) {
  UnionFind uf(d.vertex_count());
  for (auto& [u, v] : d.edges) uf.unite(u, v);
  std::vector<int> comp(d.vertex_count(), -1);
  int next = 0;
  for (int v = 0; v < d.vertex_count(); ++v) {
    int r = uf.find(v);
    if (comp[r] < 0) comp[r] = next++;
    comp[v] = comp[r];
  }
  return comp;
}

DiagramMetrics metrics(const Diagram& d) {
  DiagramMetrics m;
  m.i_deg = d.trivalent;
  if (d.empty()) {
    m.component_count = 0;
    return m;
  }
  auto comp = components(d);
  int nc = *std::max_element(comp.begin(), comp.end()) + 1;
  m.component_count = nc;
  m.connected = nc == 1;
  std::vector<int> verts(nc, 0), edges(nc, 0), legs(nc, 0), triv(nc, 0);
  for (int v = 0; v < d.vertex_count(); ++v) {
    ++verts[comp[v]];
    if (d.is_leg(v))
      ++legs[comp[v]];
    else
      ++triv[comp[v]];
  }
  for (auto& [u, v] : d.edges) ++edges[comp[u]];
  m.loop_deg_per_component.resize(nc);
  for (int c = 0; c < nc; ++c) {
    m.loop_deg_per_component[c] = edges[c] - verts[c] + 1;
    if (triv[c] == 0) m.strut_free = false;
  }
  m.leg_labels = d.legs;
  std::sort(m.leg_labels.begin(), m.leg_labels.end());
  // A strut with both ends + violates top-substantiality.
  for (auto& [u, v] : d.edges)
    if (d.is_leg(u) && d.is_leg(v) && d.legs[u - d.trivalent].sign > 0 &&
        d.legs[v - d.trivalent].sign > 0)
      m.top_substantial = false;
  return m;
}

std::vector<Diagram> split_components(const Diagram& d) {
  if (d.empty()) return {};
  auto comp = components(d);
  int nc = *std::max_element(comp.begin(), comp.end()) + 1;
  std::vector<Diagram> out(nc);
  // Vertex and edge renumbering per component, preserving relative order.
  // vmap holds the index within the part's trivalent (resp. leg) list.
  std::vector<int> vmap(d.vertex_count(), -1), emap(d.edges.size(), -1);
  for (int v = 0; v < d.trivalent; ++v) vmap[v] = out[comp[v]].trivalent++;
  for (int j = 0; j < d.leg_count(); ++j) {
    int v = d.leg_vertex(j);
    vmap[v] = static_cast<int>(out[comp[v]].legs.size());
    out[comp[v]].legs.push_back(d.legs[j]);
  }
  for (int e = 0; e < static_cast<int>(d.edges.size()); ++e) {
    int c = comp[d.edges[e].first];
    auto fix = [&](int v) { return d.is_leg(v) ? out[c].trivalent + vmap[v] : vmap[v]; };
    emap[e] = static_cast<int>(out[c].edges.size());
    out[c].edges.push_back({fix(d.edges[e].first), fix(d.edges[e].second)});
  }
  for (int v = 0; v < d.trivalent; ++v) {
    int c = comp[v];
    auto& part = out[c];
    part.cyc.resize(part.trivalent);
    std::array<Occ, 3> occ;
    for (int i = 0; i < 3; ++i) occ[i] = Occ{emap[d.cyc[v][i].edge], d.cyc[v][i].end};
    part.cyc[vmap[v]] = occ;
  }
  return out;
}

Diagram disjoint_union(const Diagram& a, const Diagram& b) {
  Diagram d;
  d.trivalent = a.trivalent + b.trivalent;
  d.legs = a.legs;
  d.legs.insert(d.legs.end(), b.legs.begin(), b.legs.end());
  auto mapA = [&](int v) { return a.is_leg(v) ? d.trivalent + (v - a.trivalent) : v; };
  auto mapB = [&](int v) {
    return b.is_leg(v) ? d.trivalent + a.leg_count() + (v - b.trivalent) : a.trivalent + v;
  };
  for (auto& [u, v] : a.edges) d.edges.push_back({mapA(u), mapA(v)});
  int eoff = static_cast<int>(a.edges.size());
  for (auto& [u, v] : b.edges) d.edges.push_back({mapB(u), mapB(v)});
  d.cyc = a.cyc;
  for (auto occ3 : b.cyc) {
    for (auto& o : occ3) o.edge += eoff;
    d.cyc.push_back(occ3);
  }
  return d;
}

Diagram build_T(const std::vector<Label>& labels) {
  int n = static_cast<int>(labels.size());
  if (n < 3) throw std::invalid_argument("T requires >= 3 labels");
  Diagram d;
  int t = n - 2;
  d.trivalent = t;
  d.legs = labels;
  auto leg_edge = [&](int j, int v) {
    d.edges.push_back({v, d.leg_vertex(j)});
    return Occ{static_cast<int>(d.edges.size()) - 1, 0};
  };
  if (t == 1) {
    Occ a = leg_edge(0, 0), b = leg_edge(1, 0), c = leg_edge(2, 0);
    d.cyc.push_back({a, b, c});
    return d;
  }
  // Spine edges between consecutive internal vertices.
  std::vector<int> spine(t - 1);
  std::vector<std::array<Occ, 3>> cyc(t);
  Occ a1 = leg_edge(0, 0), a2 = leg_edge(1, 0);
  for (int i = 0; i + 1 < t; ++i) {
    d.edges.push_back({i, i + 1});
    spine[i] = static_cast<int>(d.edges.size()) - 1;
  }
  cyc[0] = {a1, a2, Occ{spine[0], 0}};
  for (int i = 1; i + 1 < t; ++i) {
    Occ up = leg_edge(i + 1, i);
    cyc[i] = {Occ{spine[i - 1], 1}, up, Occ{spine[i], 0}};
  }
  Occ up = leg_edge(n - 2, t - 1), end = leg_edge(n - 1, t - 1);
  cyc[t - 1] = {Occ{spine[t - 2], 1}, up, end};
  d.cyc = cyc;
  return d;
}

Diagram build_O(const std::vector<Label>& labels) {
  int n = static_cast<int>(labels.size());
  if (n < 1) throw std::invalid_argument("O requires >= 1 label");
  Diagram d;
  d.trivalent = n;
  d.legs = labels;
  if (n == 1) {
    d.edges.push_back({0, 0});                  // self-loop
    d.edges.push_back({0, d.leg_vertex(0)});    // leg
    d.cyc.push_back({Occ{0, 1}, Occ{1, 0}, Occ{0, 0}});
    return d;
  }
  // Cycle edges e_i = (v_i, v_{i+1}); leg edges after them.
  for (int i = 0; i < n; ++i) d.edges.push_back({i, (i + 1) % n});
  for (int i = 0; i < n; ++i) d.edges.push_back({i, d.leg_vertex(i)});
  for (int i = 0; i < n; ++i) {
    int prev = (i + n - 1) % n;
    d.cyc.push_back({Occ{prev, 1}, Occ{n + i, 0}, Occ{i, 0}});
  }
  return d;
}

Diagram build_strut(Label a, Label b) {
  Diagram d;
  d.legs = {a, b};
  d.edges.push_back({0, 1});
  return d;
}

Diagram rev_diagram(const Diagram& d) {
  Diagram r = d;
  for (auto& l : r.legs) l = star(l);
  return r;
}

}  // namespace jd
