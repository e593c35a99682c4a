#include "jd/canonical.hpp"

#include <algorithm>
#include <cstdint>
#include <limits>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace jd {

namespace {

uint64_t mix(uint64_t h, uint64_t v) {
  h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

// Iterated neighborhood refinement on the trivalent vertices.  Legs enter via
// their label codes.  Iso-invariant by construction.
std::vector<uint64_t> refine(const Diagram& d) {
  int t = d.trivalent;
  std::vector<std::vector<int>> nb(t);  // trivalent neighbors (with multiplicity)
  std::vector<uint64_t> base(t, 17);
  for (int e = 0; e < static_cast<int>(d.edges.size()); ++e) {
    auto [u, v] = d.edges[e];
    auto touch = [&](int x, int y) {
      if (d.is_leg(x)) return;
      if (d.is_leg(y))
        base[x] = mix(base[x], 1000 + d.legs[y - d.trivalent].code());
      else
        nb[x].push_back(y);
    };
    touch(u, v);
    touch(v, u);
  }
  std::vector<uint64_t> inv(t);
  for (int v = 0; v < t; ++v) {
    // base must not depend on accumulation order of leg labels
    uint64_t b = 17;
    std::vector<int> legcodes;
    for (int e = 0; e < static_cast<int>(d.edges.size()); ++e) {
      auto [x, y] = d.edges[e];
      if (x == v && d.is_leg(y)) legcodes.push_back(d.legs[y - d.trivalent].code());
      if (y == v && d.is_leg(x)) legcodes.push_back(d.legs[x - d.trivalent].code());
    }
    std::sort(legcodes.begin(), legcodes.end());
    for (int c : legcodes) b = mix(b, 1000 + c);
    b = mix(b, legcodes.size());
    inv[v] = b;
  }
  for (int round = 0; round < 3; ++round) {
    std::vector<uint64_t> next(t);
    for (int v = 0; v < t; ++v) {
      std::vector<uint64_t> ns;
      for (int w : nb[v]) ns.push_back(inv[w]);
      std::sort(ns.begin(), ns.end());
      uint64_t h = mix(inv[v], 0x51ed);
      for (auto x : ns) h = mix(h, x);
      next[v] = h;
    }
    inv = next;
  }
  return inv;
}

struct Leaf {
  std::vector<int> cert;
  int sign = +1;
};

// Builds the certificate and sign for a complete ordering of the trivalent
// vertices.  pos[v] = canonical position of trivalent vertex v.
Leaf build_leaf(const Diagram& d, const std::vector<int>& pos) {
  int t = d.trivalent, m = d.leg_count();
  // Canonical leg order: legs on trivalent vertices sorted by (attached
  // position, label), then strut legs sorted by the strut's label pair.
  std::vector<int> attach(m, -1);
  for (auto& [u, v] : d.edges) {
    if (d.is_leg(u) && !d.is_leg(v)) attach[u - t] = pos[v];
    if (d.is_leg(v) && !d.is_leg(u)) attach[v - t] = pos[u];
  }
  std::vector<std::array<int, 3>> legsort;  // (attachpos, labelcode, j), attached legs only
  for (int j = 0; j < m; ++j)
    if (attach[j] >= 0) legsort.push_back({attach[j], d.legs[j].code(), j});
  std::sort(legsort.begin(), legsort.end());
  std::vector<std::array<int, 4>> struts;  // (locode, hicode, jlo, jhi)
  for (auto& [u, v] : d.edges) {
    if (d.is_leg(u) && d.is_leg(v)) {
      int ju = u - t, jv = v - t;
      if (d.legs[ju].code() > d.legs[jv].code()) std::swap(ju, jv);
      struts.push_back({d.legs[ju].code(), d.legs[jv].code(), ju, jv});
    }
  }
  std::sort(struts.begin(), struts.end());
  std::vector<int> legpos(m);
  {
    int r = 0;
    for (auto& ls : legsort) legpos[ls[2]] = t + r++;
    for (auto& st : struts) {
      legpos[st[2]] = t + r++;
      legpos[st[3]] = t + r++;
    }
  }

  auto vpos = [&](int v) { return d.is_leg(v) ? legpos[v - t] : pos[v]; };

  // Canonical edge ids: sort by endpoint position pair.
  int ne = static_cast<int>(d.edges.size());
  std::vector<std::array<int, 3>> edgesort;  // (a, b, e)
  for (int e = 0; e < ne; ++e) {
    int a = vpos(d.edges[e].first), b = vpos(d.edges[e].second);
    if (a > b) std::swap(a, b);
    edgesort.push_back({a, b, e});
  }
  std::sort(edgesort.begin(), edgesort.end());
  std::vector<int> cid(ne);
  for (int r = 0; r < ne; ++r) cid[edgesort[r][2]] = r;

  Leaf leaf;
  auto& cert = leaf.cert;
  cert.push_back(t);
  cert.push_back(m);
  for (auto& ls : legsort) {
    cert.push_back(ls[0]);
    cert.push_back(ls[1]);
  }
  for (auto& st : struts) {
    cert.push_back(-1);
    cert.push_back(st[0]);
    cert.push_back(-1);
    cert.push_back(st[1]);
  }
  for (auto& es : edgesort) {
    cert.push_back(es[0]);
    cert.push_back(es[1]);
  }

  // Sign: parity of each cyclic order against the sorted occurrence keys.
  int sign = +1;
  for (int v = 0; v < t; ++v) {
    std::array<long long, 3> keys;
    for (int i = 0; i < 3; ++i) {
      Occ o = d.cyc[v][i];
      auto [x, y] = d.edges[o.edge];
      int pself = o.end == 0 ? vpos(x) : vpos(y);
      int pother = o.end == 0 ? vpos(y) : vpos(x);
      int side;
      if (pself < pother)
        side = 0;
      else if (pself > pother)
        side = 1;
      else
        side = o.end;  // self-loop; sign is 0 anyway
      keys[i] = static_cast<long long>(cid[o.edge]) * 2 + side;
    }
    // Parity of the 3-permutation taking sorted order to (keys[0],keys[1],keys[2]).
    int inversions = 0;
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j)
        if (keys[i] > keys[j]) ++inversions;
    if (inversions % 2 == 1) sign = -sign;
  }
  leaf.sign = sign;
  return leaf;
}

struct Search {
  const Diagram& d;
  std::vector<uint64_t> inv;
  std::vector<std::vector<int>> nb;  // trivalent adjacency (with multiplicity)
  std::vector<int> pos;
  std::vector<int> order;
  Leaf best;
  bool have_best = false;
  bool odd_auto = false;

  explicit Search(const Diagram& diag) : d(diag), inv(refine(diag)), pos(diag.trivalent, -1) {
    nb.resize(d.trivalent);
    for (auto& [u, v] : d.edges)
      if (!d.is_leg(u) && !d.is_leg(v)) {
        nb[u].push_back(v);
        nb[v].push_back(u);
      }
  }

  void dfs(int depth) {
    int t = d.trivalent;
    if (depth == t) {
      Leaf leaf = build_leaf(d, pos);
      if (!have_best || leaf.cert < best.cert) {
        best = leaf;
        have_best = true;
        odd_auto = false;
      } else if (leaf.cert == best.cert && leaf.sign != best.sign) {
        odd_auto = true;
      }
      return;
    }
    // Candidates: unassigned vertices minimizing (placed-neighbor positions,
    // refinement invariant); vertices adjacent to placed ones come first.
    using Key = std::pair<std::vector<int>, uint64_t>;
    Key bestkey;
    std::vector<int> cands;
    for (int v = 0; v < t; ++v) {
      if (pos[v] >= 0) continue;
      std::vector<int> np;
      for (int w : nb[v])
        if (pos[w] >= 0) np.push_back(pos[w]);
      std::sort(np.begin(), np.end());
      if (np.empty()) np.push_back(std::numeric_limits<int>::max());
      Key k{np, inv[v]};
      if (cands.empty() || k < bestkey) {
        bestkey = k;
        cands = {v};
      } else if (k == bestkey) {
        cands.push_back(v);
      }
    }
    for (int v : cands) {
      pos[v] = depth;
      dfs(depth + 1);
      pos[v] = -1;
    }
  }
};

std::string serialize(const std::vector<int>& cert) {
  int t = cert[0], m = cert[1];
  std::ostringstream os;
  os << t << "|";
  for (int j = 0; j < m; ++j) {
    if (j) os << ",";
    os << cert[2 + 2 * j] << ":" << cert[3 + 2 * j];
  }
  os << "|";
  size_t eoff = 2 + 2 * static_cast<size_t>(m);
  bool first = true;
  for (size_t i = eoff; i + 1 < cert.size(); i += 2) {
    if (!first) os << ",";
    first = false;
    os << cert[i] << "-" << cert[i + 1];
  }
  return os.str();
}

}  // namespace

SignedClass canonicalize(const Diagram& d) {
  if (d.empty()) return SignedClass{kEmptyClass, +1, false};
  Search s(d);
  s.dfs(0);
  SignedClass out;
  out.key = serialize(s.best.cert);
  out.sign = s.best.sign;
  out.odd_automorphism = s.odd_auto;
  // Two legs with the same label at the same vertex swap by an odd
  // transposition of the cyclic order there.
  {
    Diagram rep;  // detect via the certificate itself: equal (attach, label) pairs
    int m = s.best.cert[1];
    for (int j = 0; j + 1 < m; ++j) {
      if (s.best.cert[2 + 2 * j] == s.best.cert[4 + 2 * j] &&
          s.best.cert[3 + 2 * j] == s.best.cert[5 + 2 * j] && s.best.cert[2 + 2 * j] >= 0) {
        out.odd_automorphism = true;
      }
    }
    (void)rep;
  }
  if (d.has_self_loop()) {
    out.sign = 0;
  } else if (out.odd_automorphism) {
    out.sign = +1;
  }
  return out;
}

Diagram decode_class(const std::string& key) {
  Diagram d;
  std::istringstream is(key);
  std::string part;
  std::getline(is, part, '|');
  d.trivalent = std::stoi(part);
  std::getline(is, part, '|');
  if (!part.empty()) {
    std::istringstream ls(part);
    std::string item;
    while (std::getline(ls, item, ',')) {
      auto colon = item.find(':');
      d.legs.push_back(label_from_code(std::stoi(item.substr(colon + 1))));
    }
  }
  std::getline(is, part, '|');
  if (!part.empty()) {
    std::istringstream es(part);
    std::string item;
    while (std::getline(es, item, ',')) {
      auto dash = item.find('-');
      d.edges.push_back({std::stoi(item.substr(0, dash)), std::stoi(item.substr(dash + 1))});
    }
  }
  // Cyclic orders of the representative: occurrences sorted by (edge id, side).
  d.cyc.resize(d.trivalent);
  std::vector<std::vector<std::pair<long long, Occ>>> occ(d.trivalent);
  for (int e = 0; e < static_cast<int>(d.edges.size()); ++e) {
    auto [u, v] = d.edges[e];
    auto add = [&](int self, int other, int end) {
      if (self >= d.trivalent) return;
      int side;
      if (self < other)
        side = 0;
      else if (self > other)
        side = 1;
      else
        side = end;
      occ[self].push_back({static_cast<long long>(e) * 2 + side, Occ{e, end}});
    };
    add(u, v, 0);
    add(v, u, 1);
  }
  for (int v = 0; v < d.trivalent; ++v) {
    if (occ[v].size() != 3) throw std::invalid_argument("bad class key: vertex degree != 3");
    std::sort(occ[v].begin(), occ[v].end(),
              [](auto& a, auto& b) { return a.first < b.first; });
    for (int i = 0; i < 3; ++i) d.cyc[v][i] = occ[v][i].second;
  }
  return d;
}

}  // namespace jd
