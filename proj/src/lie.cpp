#include "jd/lie.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <stdexcept>

namespace jd {

TensorPoly& TensorPoly::add(const std::string& w, const Int& c) {
  if (c == 0) return *this;
  auto [it, inserted] = terms.emplace(w, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms.erase(it);
  }
  return *this;
}

TensorPoly& TensorPoly::operator+=(const TensorPoly& o) {
  for (auto& [w, c] : o.terms) add(w, c);
  return *this;
}

TensorPoly& TensorPoly::operator-=(const TensorPoly& o) {
  for (auto& [w, c] : o.terms) add(w, -c);
  return *this;
}

TensorPoly tensor_word(const std::string& w, const Int& c) {
  TensorPoly p;
  p.add(w, c);
  return p;
}

TensorPoly tensor_mul(const TensorPoly& a, const TensorPoly& b) {
  TensorPoly p;
  for (auto& [u, cu] : a.terms)
    for (auto& [v, cv] : b.terms) p.add(u + v, cu * cv);
  return p;
}

TensorPoly tensor_bracket(const TensorPoly& a, const TensorPoly& b) {
  TensorPoly p = tensor_mul(a, b);
  p -= tensor_mul(b, a);
  return p;
}

namespace {

long mobius(long n) {
  long m = 1;
  for (long p = 2; p * p <= n; ++p) {
    if (n % p == 0) {
      n /= p;
      if (n % p == 0) return 0;
      m = -m;
    }
  }
  if (n > 1) m = -m;
  return m;
}

}  // namespace

Int witt_dim(int g, int n) {
  Int sum = 0;
  for (long d = 1; d <= n; ++d) {
    if (n % d != 0) continue;
    Int q;
    mpz_ui_pow_ui(q.get_mpz_t(), static_cast<unsigned long>(2 * g),
                  static_cast<unsigned long>(n / d));
    sum += mobius(d) * q;
  }
  return sum / n;
}

std::vector<std::string> lyndon_words(int g, int n) {
  // Duval's algorithm, restricted to length exactly n.
  int k = 2 * g;
  std::vector<std::string> out;
  std::string w = {char(0)};
  while (true) {
    if (static_cast<int>(w.size()) == n) out.push_back(w);
    // extend periodically to length n
    std::string x = w;
    while (static_cast<int>(x.size()) < n) x.push_back(x[x.size() % w.size()]);
    // backtrack
    while (!x.empty() && x.back() == char(k - 1)) x.pop_back();
    if (x.empty()) break;
    x.back() = static_cast<char>(x.back() + 1);
    w = x;
  }
  std::sort(out.begin(), out.end());
  return out;
}

namespace {

// Longest proper Lyndon suffix start (standard factorization w = uv).
size_t standard_split(const std::string& w) {
  // v is the least proper suffix of w.
  size_t best = 1;
  for (size_t i = 1; i < w.size(); ++i)
    if (w.compare(i, std::string::npos, w, best, std::string::npos) < 0) best = i;
  return best;
}

}  // namespace

TensorPoly lyndon_expansion(const std::string& word) {
  if (word.size() == 1) return tensor_word(word);
  size_t s = standard_split(word);
  return tensor_bracket(lyndon_expansion(word.substr(0, s)), lyndon_expansion(word.substr(s)));
}

TreePtr lyndon_tree(const std::string& word) {
  if (word.size() == 1) return leaf(static_cast<int>(word[0]));
  size_t s = standard_split(word);
  return node(lyndon_tree(word.substr(0, s)), lyndon_tree(word.substr(s)));
}

FreeLie free_lie(int g, int n) {
  FreeLie l;
  l.g = g;
  l.n = n;
  l.words = lyndon_words(g, n);
  for (size_t i = 0; i < l.words.size(); ++i) {
    l.index.emplace(l.words[i], static_cast<int>(i));
    l.expansion.push_back(lyndon_expansion(l.words[i]));
  }
  if (Int(static_cast<long>(l.words.size())) != witt_dim(g, n))
    throw std::logic_error("Lyndon basis size disagrees with the Witt formula");
  return l;
}

std::vector<Int> lie_coords(const FreeLie& l, TensorPoly p) {
  std::vector<Int> coords(l.dim(), 0);
  while (!p.is_zero()) {
    const auto& [w, c] = *p.terms.begin();
    auto it = l.index.find(w);
    if (it == l.index.end())
      throw std::invalid_argument("tensor polynomial is not a Lie element: leading word not Lyndon");
    Int coeff = c;
    coords[it->second] = coeff;
    TensorPoly sub = l.expansion[it->second];
    for (auto& [u, cu] : sub.terms) p.add(u, -coeff * cu);
  }
  return coords;
}

std::vector<Int> lie_bracket(const FreeLie& lp, const FreeLie& lq, const FreeLie& lout,
                             const std::vector<Int>& x, const std::vector<Int>& y) {
  TensorPoly px, py;
  for (int i = 0; i < lp.dim(); ++i)
    if (x[i] != 0)
      for (auto& [w, c] : lp.expansion[i].terms) px.add(w, x[i] * c);
  for (int i = 0; i < lq.dim(); ++i)
    if (y[i] != 0)
      for (auto& [w, c] : lq.expansion[i].terms) py.add(w, y[i] * c);
  return lie_coords(lout, tensor_bracket(px, py));
}

// ---- trees -----------------------------------------------------------------

int Tree::leaves() const {
  if (is_leaf()) return 1;
  return l->leaves() + r->leaves();
}

TreePtr leaf(int code) {
  auto t = std::make_shared<Tree>();
  t->leaf = code;
  return t;
}

TreePtr node(TreePtr a, TreePtr b) {
  auto t = std::make_shared<Tree>();
  t->l = std::move(a);
  t->r = std::move(b);
  return t;
}

TreeClass canonical_tree(const TreePtr& t) {
  if (t->is_leaf()) return {"L" + std::to_string(t->leaf), +1, false};
  TreeClass a = canonical_tree(t->l), b = canonical_tree(t->r);
  TreeClass out;
  out.odd = a.odd || b.odd || a.key == b.key;
  if (a.key <= b.key) {
    out.key = "(" + a.key + b.key + ")";
    out.sign = a.sign * b.sign;
  } else {
    out.key = "(" + b.key + a.key + ")";
    out.sign = -a.sign * b.sign;
  }
  return out;
}

namespace {

TreePtr decode_tree_at(const std::string& k, size_t& i) {
  if (k[i] == 'L') {
    size_t j = i + 1;
    while (j < k.size() && std::isdigit(static_cast<unsigned char>(k[j]))) ++j;
    int code = std::stoi(k.substr(i + 1, j - i - 1));
    i = j;
    return leaf(code);
  }
  if (k[i] != '(') throw std::invalid_argument("bad tree key");
  ++i;
  TreePtr a = decode_tree_at(k, i);
  TreePtr b = decode_tree_at(k, i);
  if (k[i] != ')') throw std::invalid_argument("bad tree key");
  ++i;
  return node(a, b);
}

}  // namespace

TreePtr decode_tree(const std::string& key) {
  size_t i = 0;
  TreePtr t = decode_tree_at(key, i);
  if (i != key.size()) throw std::invalid_argument("bad tree key");
  return t;
}

TensorPoly tree_tensor(const TreePtr& t) {
  if (t->is_leaf()) return tensor_word(std::string(1, static_cast<char>(t->leaf)));
  return tensor_bracket(tree_tensor(t->l), tree_tensor(t->r));
}

namespace {

void enumerate_trees(int g, int n, std::vector<std::vector<std::string>>& memo) {
  if (static_cast<int>(memo.size()) > n && !memo[n].empty()) return;
  if (static_cast<int>(memo.size()) <= n) memo.resize(n + 1);
  if (n == 1) {
    for (int c = 0; c < 2 * g; ++c) memo[1].push_back("L" + std::to_string(c));
    return;
  }
  std::set<std::string> keys;
  for (int k = 1; k < n; ++k) {
    enumerate_trees(g, k, memo);
    enumerate_trees(g, n - k, memo);
    for (auto& ka : memo[k])
      for (auto& kb : memo[n - k])
        if (ka <= kb) keys.insert("(" + ka + kb + ")");
  }
  memo[n].assign(keys.begin(), keys.end());
}

// Jacobi relators: for every internal edge of the tree, the local rewriting
// [[A,B],C] = [[A,C],B] + [A,[B,C]] (and its mirror for an internal right
// child) lifted through the surrounding context.
void jacobi_relators(const QuasiLie& ql, const TreePtr& t,
                     std::vector<std::vector<Int>>& out) {
  struct Walker {
    const QuasiLie& ql;
    std::vector<std::vector<Int>>& out;
    const TreePtr& root;

    // rebuild root with `repl` substituted at the node identified by path
    TreePtr rebuild(const TreePtr& cur, const std::vector<int>& path, size_t i,
                    const TreePtr& repl) {
      if (i == path.size()) return repl;
      if (path[i] == 0) return node(rebuild(cur->l, path, i + 1, repl), cur->r);
      return node(cur->l, rebuild(cur->r, path, i + 1, repl));
    }

    void visit(const TreePtr& cur, std::vector<int>& path) {
      if (cur->is_leaf()) return;
      const TreePtr& A0 = cur->l;
      const TreePtr& B0 = cur->r;
      if (!A0->is_leaf()) {
        // [[A,B],C] - [[A,C],B] - [A,[B,C]]  with cur = [[A,B],C]
        const TreePtr &A = A0->l, &B = A0->r, &C = B0;
        auto r1 = rebuild(root, path, 0, node(node(A, C), B));
        auto r2 = rebuild(root, path, 0, node(A, node(B, C)));
        std::vector<Int> v = ql.vec(rebuild(root, path, 0, cur));
        auto v1 = ql.vec(r1), v2 = ql.vec(r2);
        for (size_t i = 0; i < v.size(); ++i) v[i] -= v1[i] + v2[i];
        bool nz = false;
        for (auto& x : v)
          if (x != 0) nz = true;
        if (nz) out.push_back(std::move(v));
      }
      if (!B0->is_leaf()) {
        // [X,[C,D]] - [[X,C],D] - [C,[X,D]]  with cur = [X,[C,D]]
        const TreePtr &X = A0, &C = B0->l, &D = B0->r;
        auto r1 = rebuild(root, path, 0, node(node(X, C), D));
        auto r2 = rebuild(root, path, 0, node(C, node(X, D)));
        std::vector<Int> v = ql.vec(rebuild(root, path, 0, cur));
        auto v1 = ql.vec(r1), v2 = ql.vec(r2);
        for (size_t i = 0; i < v.size(); ++i) v[i] -= v1[i] + v2[i];
        bool nz = false;
        for (auto& x : v)
          if (x != 0) nz = true;
        if (nz) out.push_back(std::move(v));
      }
      path.push_back(0);
      visit(cur->l, path);
      path.back() = 1;
      visit(cur->r, path);
      path.pop_back();
    }
  };
  Walker w{ql, out, t};
  std::vector<int> path;
  w.visit(t, path);
}

}  // namespace

std::vector<Int> QuasiLie::vec(const TreePtr& t, const Int& coeff) const {
  TreeClass c = canonical_tree(t);
  std::vector<Int> v(gens.size(), 0);
  auto it = index.find(c.key);
  if (it == index.end()) throw std::logic_error("tree outside the generator set");
  v[it->second] = c.sign > 0 ? coeff : -coeff;
  return v;
}

QuasiLie quasi_lie(int g, int n) {
  QuasiLie ql;
  ql.g = g;
  ql.n = n;
  std::vector<std::vector<std::string>> memo;
  enumerate_trees(g, n, memo);
  ql.gens = memo[n];
  for (size_t i = 0; i < ql.gens.size(); ++i) ql.index.emplace(ql.gens[i], static_cast<int>(i));
  // placeholder group so that vec() works while we build relators
  ql.group = PresentedGroup(static_cast<int>(ql.gens.size()),
                            IntMatrix(static_cast<int>(ql.gens.size()), 0));
  std::vector<std::vector<Int>> relators;
  for (auto& key : ql.gens) {
    TreePtr t = decode_tree(key);
    TreeClass c = canonical_tree(t);
    if (c.odd) {
      std::vector<Int> v(ql.gens.size(), 0);
      v[ql.index.at(key)] = 2;
      relators.push_back(std::move(v));
    }
    jacobi_relators(ql, t, relators);
  }
  IntMatrix rel(static_cast<int>(ql.gens.size()), static_cast<int>(relators.size()));
  for (size_t j = 0; j < relators.size(); ++j)
    for (size_t i = 0; i < relators[j].size(); ++i)
      if (relators[j][i] != 0) rel.set(static_cast<int>(i), static_cast<int>(j), relators[j][i]);
  ql.group = PresentedGroup(static_cast<int>(ql.gens.size()), std::move(rel));
  return ql;
}

GroupHom gamma_hom(const QuasiLie& lp, const FreeLie& l, const PresentedGroup& free_target) {
  IntMatrix m(l.dim(), static_cast<int>(lp.gens.size()));
  for (size_t j = 0; j < lp.gens.size(); ++j) {
    auto coords = lie_coords(l, tree_tensor(decode_tree(lp.gens[j])));
    for (int i = 0; i < l.dim(); ++i)
      if (coords[i] != 0) m.set(i, static_cast<int>(j), coords[i]);
  }
  return GroupHom(&lp.group, &free_target, std::move(m), true);
}

std::vector<std::vector<Int>> theta_images(const FreeLie& lk, const QuasiLie& l2k) {
  std::vector<std::vector<Int>> images;
  for (auto& w : lk.words) {
    TreePtr t = lyndon_tree(w);
    images.push_back(l2k.vec(node(t, t)));
  }
  return images;
}

// ---- diagram conversions ----------------------------------------------------

namespace {

struct DiagramReader {
  const Diagram& d;
  std::vector<std::vector<Occ>> inc;

  explicit DiagramReader(const Diagram& diag) : d(diag), inc(diag.vertex_count()) {
    for (int e = 0; e < static_cast<int>(d.edges.size()); ++e) {
      inc[d.edges[e].first].push_back(Occ{e, 0});
      inc[d.edges[e].second].push_back(Occ{e, 1});
    }
  }

  int other_end(const Occ& o) const {
    auto [u, v] = d.edges[o.edge];
    return o.end == 0 ? v : u;
  }
  int self_end(const Occ& o) const {
    auto [u, v] = d.edges[o.edge];
    return o.end == 0 ? u : v;
  }

  // subtree hanging at `vertex` entered via edge `in_edge`
  TreePtr subtree(int vertex, int in_edge) const {
    if (d.is_leg(vertex)) return leaf(d.legs[vertex - d.trivalent]);
    // rotate the cyclic order so the incoming edge occurrence is first
    const auto& cyc = d.cyc[vertex];
    int at = -1;
    for (int i = 0; i < 3; ++i)
      if (cyc[i].edge == in_edge && self_end(cyc[i]) == vertex) at = i;
    if (at < 0) throw std::logic_error("incoming edge not found in cyclic order");
    Occ x = cyc[(at + 1) % 3], y = cyc[(at + 2) % 3];
    return node(subtree(other_end(x), x.edge), subtree(other_end(y), y.edge));
  }
};

// Recursive builder: appends the subtree below `t`, whose root attaches to
// edge slot `parent_edge` at the parent.  Returns nothing; fills d.
struct TreeBuilder {
  Diagram& d;

  // Creates the subtree for t and returns (edge id, end) of its upward edge,
  // leaving the other endpoint of that edge unset (-1) for the caller.
  int build(const TreePtr& t) {
    if (t->is_leaf()) {
      d.legs.push_back(label_from_code(t->leaf));
      d.edges.push_back({-1, 0});  // second endpoint fixed by caller via leg id later
      int e = static_cast<int>(d.edges.size()) - 1;
      pending_leg.push_back({e, static_cast<int>(d.legs.size()) - 1});
      return e;
    }
    int v = d.trivalent++;
    d.cyc.push_back({});
    d.edges.push_back({-1, v});  // upward edge, parent endpoint set by caller
    int up = static_cast<int>(d.edges.size()) - 1;
    int el = build(t->l);
    int er = build(t->r);
    attach(el, v);
    attach(er, v);
    d.cyc[v] = {Occ{up, 1}, Occ{el, 0}, Occ{er, 0}};
    return up;
  }

  void attach(int edge, int vertex) { d.edges[edge].first = vertex; }

  void finish_legs() {
    // leg vertex ids shift after trivalent count is final
    for (auto& [e, legidx] : pending_leg) d.edges[e].second = d.trivalent + legidx;
  }

  std::vector<std::pair<int, int>> pending_leg;
};

}  // namespace

TreePtr diagram_to_tree(const Diagram& d, int leg_index) {
  DiagramReader r(d);
  int lv = d.leg_vertex(leg_index);
  if (r.inc[lv].size() != 1) throw std::invalid_argument("leg has not exactly one edge");
  Occ o = r.inc[lv][0];
  return r.subtree(r.other_end(o), o.edge);
}

Diagram tree_pair_diagram(const TreePtr& a, Label x, const TreePtr& b) {
  Diagram d;
  TreeBuilder tb{d};
  int v = d.trivalent++;
  d.cyc.push_back({});
  d.legs.push_back(x);
  d.edges.push_back({v, -1});
  tb.pending_leg.push_back({0, 0});
  int ea = tb.build(a);
  int eb = tb.build(b);
  tb.attach(ea, v);
  tb.attach(eb, v);
  d.cyc[v] = {Occ{ea, 0}, Occ{0, 0}, Occ{eb, 0}};
  tb.finish_legs();
  return d;
}

Diagram tree_join_diagram(const TreePtr& a, const TreePtr& b) {
  if (a->is_leaf() && b->is_leaf()) {
    return build_strut(label_from_code(a->leaf), label_from_code(b->leaf));
  }
  Diagram d;
  TreeBuilder tb{d};
  if (a->is_leaf() || b->is_leaf()) {
    // single root vertex from the internal side; the leaf side becomes a leg
    const TreePtr& internal = a->is_leaf() ? b : a;
    const TreePtr& lf = a->is_leaf() ? a : b;
    int v = d.trivalent++;
    d.cyc.push_back({});
    d.legs.push_back(label_from_code(lf->leaf));
    d.edges.push_back({v, -1});
    tb.pending_leg.push_back({0, 0});
    int el = tb.build(internal->l);
    int er = tb.build(internal->r);
    tb.attach(el, v);
    tb.attach(er, v);
    d.cyc[v] = {Occ{0, 0}, Occ{el, 0}, Occ{er, 0}};
    tb.finish_legs();
    return d;
  }
  int va = d.trivalent++;
  d.cyc.push_back({});
  int vb = d.trivalent++;
  d.cyc.push_back({});
  d.edges.push_back({va, vb});
  int mid = 0;
  int al = tb.build(a->l);
  int ar = tb.build(a->r);
  tb.attach(al, va);
  tb.attach(ar, va);
  int bl = tb.build(b->l);
  int br = tb.build(b->r);
  tb.attach(bl, vb);
  tb.attach(br, vb);
  d.cyc[va] = {Occ{mid, 0}, Occ{al, 0}, Occ{ar, 0}};
  d.cyc[vb] = {Occ{mid, 1}, Occ{bl, 0}, Occ{br, 0}};
  tb.finish_legs();
  return d;
}

std::vector<Int> eta_prime_vector(const Diagram& d, const QuasiLie& target) {
  auto m = metrics(d);
  if (!m.connected || m.loop_deg_per_component.empty() || m.loop_deg_per_component[0] != 0 ||
      d.trivalent < 1)
    throw std::invalid_argument("eta' needs a connected tree diagram with at least one vertex");
  int slots = static_cast<int>(target.gens.size());
  std::vector<Int> out(static_cast<size_t>(2 * target.g) * slots, 0);
  for (int j = 0; j < d.leg_count(); ++j) {
    TreePtr t = diagram_to_tree(d, j);
    TreeClass c = canonical_tree(t);
    int slot = d.legs[j].code();
    out[static_cast<size_t>(slot) * slots + target.index.at(c.key)] += c.sign;
  }
  return out;
}

DiagramExpr sq_expr(Label x, const std::string& lyndon_word) {
  TreePtr t = lyndon_tree(lyndon_word);
  return DiagramExpr::from_diagram(tree_pair_diagram(t, x, t));
}

DiagramExpr xi_expr(const std::vector<Label>& word) {
  // word = (a_0, ..., a_k), k >= 1
  if (word.size() < 2) throw std::invalid_argument("xi needs a word of length >= 2");
  std::vector<Label> wheel(word.begin(), word.end());
  for (size_t i = word.size() - 2; i >= 1; --i) wheel.push_back(word[i]);
  return DiagramExpr::from_diagram(build_O(wheel));
}

DiagramExpr nu_numerator(const TreePtr& t) {
  return DiagramExpr::from_diagram(tree_join_diagram(t, t));
}

DiagramExpr j_wedge3(Label a, Label b, Label c) {
  DiagramExpr e;
  e += DiagramExpr::from_diagram(build_T({a, b, c, b, a}));
  e += DiagramExpr::from_diagram(build_T({b, c, a, c, b}));
  e += DiagramExpr::from_diagram(build_T({c, a, b, a, c}));
  return e;
}

DiagramExpr j_wedge2(Label a, Label b) {
  DiagramExpr e;
  e += DiagramExpr::from_diagram(build_O({a, b, b}));
  e += DiagramExpr::from_diagram(build_O({b, a, a}));
  return e;
}

}  // namespace jd
