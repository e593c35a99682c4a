#include "jd/words.hpp"

#include <algorithm>
#include <functional>
#include <set>
#include <sstream>
#include <stdexcept>

#include "jd/canonical.hpp"
#include "jd/operators.hpp"

namespace jd {

Int totient(long n) {
  long result = n, x = n;
  for (long p = 2; p * p <= x; ++p) {
    if (x % p == 0) {
      while (x % p == 0) x /= p;
      result -= result / p;
    }
  }
  if (x > 1) result -= result / x;
  return result;
}

Int necklace_count(int alphabet, int n) {
  Int sum = 0;
  for (long d = 1; d <= n; ++d) {
    if (n % d != 0) continue;
    Int q;
    mpz_ui_pow_ui(q.get_mpz_t(), alphabet, static_cast<unsigned long>(n / d));
    sum += totient(d) * q;
  }
  return sum / n;
}

Int bracelet_count(int alphabet, int n) {
  Int q = alphabet;
  Int refl;
  if (n % 2 == 0) {
    Int a, b;
    mpz_ui_pow_ui(a.get_mpz_t(), alphabet, n / 2);
    mpz_ui_pow_ui(b.get_mpz_t(), alphabet, n / 2 + 1);
    refl = (a + b) / 2;
  } else {
    mpz_ui_pow_ui(refl.get_mpz_t(), alphabet, (n + 1) / 2);
  }
  return (necklace_count(alphabet, n) + refl) / 2;
}

namespace {

template <typename F>
void all_words(int alphabet, int n, F&& f) {
  std::vector<int> w(n, 0);
  while (true) {
    f(w);
    int i = n - 1;
    while (i >= 0 && w[i] == alphabet - 1) w[i--] = 0;
    if (i < 0) break;
    ++w[i];
  }
}

}  // namespace

Int necklace_count_brute(int alphabet, int n) {
  std::set<std::vector<int>> reps;
  all_words(alphabet, n, [&](const std::vector<int>& w) {
    std::vector<int> best = w;
    std::vector<int> r = w;
    for (int k = 1; k < n; ++k) {
      std::rotate(r.begin(), r.begin() + 1, r.end());
      best = std::min(best, r);
    }
    reps.insert(best);
  });
  return static_cast<long>(reps.size());
}

Int bracelet_count_brute(int alphabet, int n) {
  std::set<std::vector<int>> reps;
  all_words(alphabet, n, [&](const std::vector<int>& w) {
    std::vector<int> best = w;
    for (int refl = 0; refl < 2; ++refl) {
      std::vector<int> r = w;
      if (refl) std::reverse(r.begin(), r.end());
      for (int k = 0; k < n; ++k) {
        std::rotate(r.begin(), r.begin() + 1, r.end());
        best = std::min(best, r);
      }
    }
    reps.insert(best);
  });
  return static_cast<long>(reps.size());
}

Int one_loop_rank(int g, int n) {
  if (n < 2) throw std::invalid_argument("one_loop_rank needs n >= 2");
  Int nk = necklace_count(2 * g, n);
  if (n % 2 == 0) {
    Int p;
    mpz_ui_pow_ui(p.get_mpz_t(), 2 * g, n / 2);
    Int num = 2 * nk + (2 * g + 1) * p;
    if (num % 4 != 0) throw std::logic_error("one-loop rank formula not integral");
    return num / 4;
  }
  Int p;
  mpz_ui_pow_ui(p.get_mpz_t(), 2 * g, (n + 1) / 2);
  Int num = nk - p;
  if (num % 2 != 0) throw std::logic_error("one-loop rank formula not integral");
  return num / 2;
}

bool word_symmetric(const std::vector<Label>& w) {
  int n = static_cast<int>(w.size());
  for (int k = 1; k <= n; ++k) {
    bool ok = true;
    for (int i = 0; i < n && ok; ++i)
      if (!(w[((n - i) % n + n) % n] == w[(k + i) % n])) ok = false;
    if (ok) return true;
  }
  return false;
}

bool word_periodic(const std::vector<Label>& w) {
  int n = static_cast<int>(w.size());
  if (n % 2 != 0) return false;
  for (int i = 0; i < n / 2; ++i)
    if (!(w[i] == w[i + n / 2])) return false;
  return true;
}

int WordSpace::word_index(const std::vector<Label>& w) const {
  int idx = 0;
  for (auto& l : w) idx = idx * (2 * g) + l.code();
  return idx;
}

WordSpace dihedral_coinvariants(int g, int n) {
  WordSpace ws;
  ws.g = g;
  ws.n = n;
  all_words(2 * g, n, [&](const std::vector<int>& w) {
    std::vector<Label> word;
    for (int c : w) word.push_back(label_from_code(c));
    ws.words.push_back(std::move(word));
  });
  int count = static_cast<int>(ws.words.size());
  IntMatrix rel(count, 2 * count);
  for (int i = 0; i < count; ++i) {
    std::vector<Label> rot = ws.words[i];
    std::rotate(rot.rbegin(), rot.rbegin() + 1, rot.rend());  // x: a_n a_1 ... a_{n-1}
    rel.add(i, 2 * i, 1);
    rel.add(ws.word_index(rot), 2 * i, -1);
    std::vector<Label> rev = ws.words[i];
    std::reverse(rev.begin(), rev.end());
    rel.add(i, 2 * i + 1, 1);
    rel.add(ws.word_index(rev), 2 * i + 1, n % 2 == 0 ? -1 : +1);  // minus (-1)^n
  }
  ws.group = PresentedGroup(count, std::move(rel));
  return ws;
}

GroupHom phi_hom(const WordSpace& ws, const SpacePresentation& one_loop) {
  IntMatrix m(static_cast<int>(one_loop.gens.size()), static_cast<int>(ws.words.size()));
  for (size_t j = 0; j < ws.words.size(); ++j) {
    auto v = one_loop.vec(DiagramExpr::from_diagram(build_O(ws.words[j])));
    for (size_t i = 0; i < v.size(); ++i)
      if (v[i] != 0) m.set(static_cast<int>(i), static_cast<int>(j), v[i]);
  }
  return GroupHom(&ws.group, &one_loop.group, std::move(m), true);
}

namespace {

// Degree-pruned cycle detection: returns per-vertex flag "on the unique cycle".
std::vector<bool> cycle_vertices(const Diagram& d) {
  std::vector<int> deg(d.vertex_count(), 0);
  std::vector<std::vector<std::pair<int, int>>> adj(d.vertex_count());  // (other, edge)
  for (int e = 0; e < static_cast<int>(d.edges.size()); ++e) {
    auto [u, v] = d.edges[e];
    adj[u].push_back({v, e});
    adj[v].push_back({u, e});
    ++deg[u];
    ++deg[v];
  }
  std::vector<bool> dead(d.vertex_count(), false);
  std::vector<int> queue;
  for (int v = 0; v < d.vertex_count(); ++v)
    if (deg[v] <= 1) queue.push_back(v);
  while (!queue.empty()) {
    int v = queue.back();
    queue.pop_back();
    if (dead[v]) continue;
    dead[v] = true;
    for (auto& [w, e] : adj[v]) {
      if (dead[w]) continue;
      if (--deg[w] <= 1) queue.push_back(w);
    }
  }
  std::vector<bool> on(d.vertex_count(), false);
  for (int v = 0; v < d.vertex_count(); ++v) on[v] = !dead[v];
  return on;
}

bool is_pure_wheel(const Diagram& d, const std::vector<bool>& on_cycle) {
  for (int v = 0; v < d.trivalent; ++v)
    if (!on_cycle[v]) return false;
  return true;
}

}  // namespace

std::vector<Label> wheel_word(const std::string& key) {
  std::string r = render_class(key);
  if (r.rfind("O(", 0) != 0) throw std::invalid_argument("class is not a pure wheel");
  std::vector<Label> word;
  std::istringstream is(r.substr(2, r.size() - 3));
  std::string item;
  while (std::getline(is, item, ','))
    word.push_back(parse_label(item));
  return word;
}

DiagramExpr wheel_reduce(const DiagramExpr& e) {
  DiagramExpr out;
  DiagramExpr work = e;
  int guard = 0;
  while (!work.is_zero()) {
    if (++guard > 1000000) throw std::logic_error("wheel reduction did not terminate");
    auto it = work.terms.begin();
    std::string key = it->first;
    Int coeff = it->second;
    work.terms.erase(it);
    Diagram d = decode_class(key);
    auto m = metrics(d);
    if (!m.connected || m.loop_deg_per_component.empty() || m.loop_deg_per_component[0] != 1)
      throw std::invalid_argument("wheel_reduce needs connected 1-loop diagrams");
    auto on = cycle_vertices(d);
    if (is_pure_wheel(d, on)) {
      out.add(key, coeff);
      continue;
    }
    // find an edge from a cycle vertex to an off-cycle trivalent vertex
    int edge = -1;
    for (int ei = 0; ei < static_cast<int>(d.edges.size()); ++ei) {
      auto [u, v] = d.edges[ei];
      if (d.is_leg(u) || d.is_leg(v) || u == v) continue;
      if (on[u] != on[v]) {
        // orient (cycle vertex, branch root)
        edge = ei;
        break;
      }
    }
    if (edge < 0) throw std::logic_error("no branch edge found in a non-wheel 1-loop diagram");
    IhxPair hx = ihx_at(d, edge);
    DiagramExpr step = DiagramExpr::from_diagram(hx.h, coeff);
    step += DiagramExpr::from_diagram(hx.x, -coeff);
    work += step;
  }
  return out;
}

}  // namespace jd
