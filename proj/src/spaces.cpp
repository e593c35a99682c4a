#include "jd/spaces.hpp"

#include <algorithm>
#include <functional>
#include <mutex>
#include <set>
#include <sstream>

#include "jd/cache.hpp"
#include "jd/canonical.hpp"
#include "jd/operators.hpp"

namespace jd {

std::string SpaceFlavor::key() const {
  std::ostringstream os;
  os << "g" << genus << ".n" << i_deg << ".";
  switch (variant) {
    case Variant::Full: os << "full.s" << strut_bound; break;
    case Variant::StrutFree: os << "Y"; break;
    case Variant::Connected: os << "c"; break;
    case Variant::ConnectedLoops: os << "c.k" << loops; break;
    case Variant::OneLoopSym: os << "c1s"; break;
    case Variant::OneLoopPeriodic: os << "c1period"; break;
    case Variant::OneLoopSymPeriodic: os << "c1speriod"; break;
  }
  return os.str();
}

namespace {

void check_bounds(int genus, int n) {
  int cap = genus <= 1 ? 6 : (genus == 2 ? 4 : 3);
  if (n > cap)
    throw ResourceError("i-deg " + std::to_string(n) + " exceeds the documented bound " +
                        std::to_string(cap) + " at genus " + std::to_string(genus));
}

// All connected classes of the given i-degree (keys, sorted), any loop count;
// loops >= 0 restricts the loop degree.
std::vector<std::string> connected_classes(int genus, int n, int loops) {
  check_bounds(genus, n);
  std::set<std::string> out;
  if (n == 0) {
    // struts
    if (loops > 0) return {};
    for (int a = 0; a < 2 * genus; ++a)
      for (int b = a; b < 2 * genus; ++b)
        out.insert(canonicalize(build_strut(label_from_code(a), label_from_code(b))).key);
    return {out.begin(), out.end()};
  }
  // legs m with 3n + m even and loop count k = (n - m)/2 + 1 in [0 .. ]:
  // m = n + 2 - 2k
  for (int k = 0; k <= (n + 2) / 2; ++k) {
    if (loops >= 0 && k != loops) continue;
    int m = n + 2 - 2 * k;
    if (m < 0) continue;
    int eint = (3 * n - m) / 2;
    if (2 * eint != 3 * n - m || eint < (n > 1 ? n - 1 : 0)) continue;
    // enumerate internal multigraphs: multisets of vertex pairs (i < j)
    std::vector<std::pair<int, int>> pairs;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j) pairs.push_back({i, j});
    std::vector<int> deg(n, 0);
    std::vector<std::pair<int, int>> chosen;
    std::set<std::string> skeletons;  // canonical keys with uniform legs

    std::function<void(size_t, int)> rec = [&](size_t pi, int remaining) {
      if (remaining == 0) {
        // connectivity of the internal graph
        if (n > 1) {
          std::vector<int> comp(n, -1);
          std::vector<std::vector<int>> adj(n);
          for (auto& [i, j] : chosen) {
            adj[i].push_back(j);
            adj[j].push_back(i);
          }
          std::vector<int> stack{0};
          comp[0] = 0;
          int seen = 1;
          while (!stack.empty()) {
            int x = stack.back();
            stack.pop_back();
            for (int y : adj[x])
              if (comp[y] < 0) {
                comp[y] = 0;
                ++seen;
                stack.push_back(y);
              }
          }
          if (seen != n) return;
        }
        // build skeleton diagram with uniform legs 1+ and dedupe
        Diagram d;
        d.trivalent = n;
        for (auto& [i, j] : chosen) d.edges.push_back({i, j});
        std::vector<std::vector<int>> legidx(n);
        for (int v = 0; v < n; ++v)
          for (int l = deg[v]; l < 3; ++l) {
            legidx[v].push_back(d.leg_count());
            d.legs.push_back(Label{1, +1});
            d.edges.push_back({v, d.trivalent + d.leg_count() - 1});
          }
        // cyclic orders: incident occurrences in edge order
        d.cyc.assign(n, {});
        std::vector<std::vector<Occ>> inc(n);
        for (int e = 0; e < static_cast<int>(d.edges.size()); ++e) {
          auto [x, y] = d.edges[e];
          if (!d.is_leg(x)) inc[x].push_back(Occ{e, 0});
          if (!d.is_leg(y)) inc[y].push_back(Occ{e, 1});
        }
        for (int v = 0; v < n; ++v)
          for (int i = 0; i < 3; ++i) d.cyc[v][i] = inc[v][i];
        std::string skey = canonicalize(d).key;
        if (!skeletons.insert(skey).second) return;

        // color the legs: multiset of labels per vertex
        std::vector<std::vector<std::vector<int>>> choices(n);  // per vertex: label multisets
        for (int v = 0; v < n; ++v) {
          int cnt = static_cast<int>(legidx[v].size());
          std::vector<int> cur;
          std::function<void(int, int)> gen = [&](int start, int left) {
            if (left == 0) {
              choices[v].push_back(cur);
              return;
            }
            for (int c = start; c < 2 * genus; ++c) {
              cur.push_back(c);
              gen(c, left - 1);
              cur.pop_back();
            }
          };
          gen(0, cnt);
        }
        std::function<void(int)> color = [&](int v) {
          if (v == n) {
            auto c = canonicalize(d);
            if (c.sign != 0) out.insert(c.key);
            return;
          }
          for (auto& ms : choices[v]) {
            for (size_t i = 0; i < ms.size(); ++i) d.legs[legidx[v][i]] = label_from_code(ms[i]);
            color(v + 1);
          }
        };
        color(0);
        return;
      }
      if (pi >= pairs.size()) return;
      // multiplicity of pairs[pi]
      auto [i, j] = pairs[pi];
      int maxmult = std::min({3 - deg[i], 3 - deg[j], remaining});
      for (int mult = maxmult; mult >= 0; --mult) {
        deg[i] += mult;
        deg[j] += mult;
        for (int q = 0; q < mult; ++q) chosen.push_back(pairs[pi]);
        rec(pi + 1, remaining - mult);
        for (int q = 0; q < mult; ++q) chosen.pop_back();
        deg[i] -= mult;
        deg[j] -= mult;
      }
    };
    rec(0, eint);
  }
  return {out.begin(), out.end()};
}

int class_i_deg(const std::string& key) {
  // leading integer of the key
  return std::stoi(key.substr(0, key.find('|')));
}

// Multisets of connected classes with the given total degree.
void multisets(const std::vector<std::vector<std::string>>& pool_by_deg, int total, int min_deg,
               size_t min_idx, std::vector<std::string>& cur,
               const std::function<void(const std::vector<std::string>&)>& emit) {
  if (total == 0) {
    emit(cur);
    return;
  }
  for (int d = min_deg; d <= total; ++d) {
    if (d >= static_cast<int>(pool_by_deg.size())) break;
    size_t start = d == min_deg ? min_idx : 0;
    for (size_t i = start; i < pool_by_deg[d].size(); ++i) {
      cur.push_back(pool_by_deg[d][i]);
      multisets(pool_by_deg, total - d, d, i, cur, emit);
      cur.pop_back();
    }
  }
}

std::string multiset_key(std::vector<std::string> keys) {
  std::sort(keys.begin(), keys.end());
  std::string out;
  for (auto& k : keys) {
    out += k;
    out += '\n';
  }
  return out;
}

}  // namespace

ComponentSplit split_class(const std::string& key) {
  ComponentSplit out;
  out.sign = 1;
  if (key == kEmptyClass) return out;
  Diagram d = decode_class(key);
  for (auto& comp : split_components(d)) {
    auto c = canonicalize(comp);
    if (c.sign == 0) {
      out.sign = 0;
      out.keys.clear();
      return out;
    }
    out.sign *= c.sign;
    out.keys.push_back(c.key);
  }
  std::sort(out.keys.begin(), out.keys.end());
  return out;
}

std::vector<std::string> enumerate_generators(const SpaceFlavor& f) {
  switch (f.variant) {
    case Variant::Connected:
      return connected_classes(f.genus, f.i_deg, -1);
    case Variant::ConnectedLoops:
      return connected_classes(f.genus, f.i_deg, f.loops);
    case Variant::OneLoopSym:
    case Variant::OneLoopPeriodic:
    case Variant::OneLoopSymPeriodic: {
      // wheel classes by word shape; the submodule presentation uses these as
      // subgroup generators inside A^c_{n,1}
      auto wheels = connected_classes(f.genus, f.i_deg, 1);
      std::vector<std::string> out;
      for (auto& k : wheels) {
        Diagram d = decode_class(k);
        if (d.leg_count() != f.i_deg) continue;  // branched 1-loop classes excluded
        // recover the cyclic word along the wheel; rely on render()'s wheel
        // recognition: O-shapes only
        std::string r = render_class(k);
        if (r.rfind("O(", 0) != 0) continue;
        // parse the labels
        std::vector<Label> word;
        std::string inner = r.substr(2, r.size() - 3);
        std::istringstream is(inner);
        std::string item;
        while (std::getline(is, item, ',')) word.push_back(parse_label(item));
        int n = static_cast<int>(word.size());
        auto is_symmetric = [&]() {
          for (int kk = 1; kk <= n; ++kk) {
            bool ok = true;
            for (int i = 0; i < n; ++i)
              if (!(word[((n - i) % n + n) % n] == word[(kk + i) % n])) ok = false;
            if (ok) return true;
          }
          return false;
        };
        auto is_periodic = [&]() {
          if (n % 2 != 0) return false;
          for (int i = 0; i < n / 2; ++i)
            if (!(word[i] == word[i + n / 2])) return false;
          return true;
        };
        bool want = true;
        if (f.variant == Variant::OneLoopSym) want = is_symmetric();
        if (f.variant == Variant::OneLoopPeriodic) want = is_periodic();
        if (f.variant == Variant::OneLoopSymPeriodic) want = is_symmetric() && is_periodic();
        if (want) out.push_back(k);
      }
      return out;
    }
    case Variant::StrutFree:
    case Variant::Full: {
      std::vector<std::vector<std::string>> pool(f.i_deg + 1);
      int mindeg = f.variant == Variant::Full ? 0 : 1;
      for (int d = mindeg; d <= f.i_deg; ++d)
        if (d > 0) pool[d] = connected_classes(f.genus, d, -1);
      std::vector<std::string> out;
      std::vector<std::string> cur;
      if (f.variant == Variant::StrutFree) {
        if (f.i_deg == 0) return {std::string()};  // the empty multiset
        multisets(pool, f.i_deg, 1, 0, cur,
                  [&](const std::vector<std::string>& m) { out.push_back(multiset_key(m)); });
      } else {
        // Full: strut components up to the bound on top of a strut-free part
        auto struts = connected_classes(f.genus, 0, -1);
        std::vector<std::vector<std::string>> strutsets{{}};
        for (int cnt = 1; cnt <= f.strut_bound; ++cnt) {
          std::vector<int> idx(cnt, 0);
          std::function<void(int, int)> gen = [&](int pos, int start) {
            if (pos == cnt) {
              std::vector<std::string> s;
              for (int i = 0; i < cnt; ++i) s.push_back(struts[idx[i]]);
              strutsets.push_back(s);
              return;
            }
            for (int i = start; i < static_cast<int>(struts.size()); ++i) {
              idx[pos] = i;
              gen(pos + 1, i);
            }
          };
          gen(0, 0);
        }
        auto emit_with_struts = [&](const std::vector<std::string>& m) {
          for (auto& ss : strutsets) {
            std::vector<std::string> full = m;
            full.insert(full.end(), ss.begin(), ss.end());
            out.push_back(multiset_key(full));
          }
        };
        if (f.i_deg == 0) {
          emit_with_struts({});
        } else {
          multisets(pool, f.i_deg, 1, 0, cur, emit_with_struts);
        }
      }
      std::sort(out.begin(), out.end());
      out.erase(std::unique(out.begin(), out.end()), out.end());
      return out;
    }
  }
  throw std::logic_error("unknown variant");
}

namespace {

// IHX and residual-AS relators of the connected classes, as coefficient maps.
std::vector<std::map<int, Int>> connected_relators(const std::vector<std::string>& gens,
                                                   const std::map<std::string, int>& index) {
  std::vector<std::map<int, Int>> out;
  std::set<std::map<int, Int>> seen;
  auto add_expr = [&](const DiagramExpr& e) {
    std::map<int, Int> col;
    for (auto& [k, c] : e.terms) {
      auto it = index.find(k);
      if (it == index.end()) throw std::logic_error("relator leaves the generator set");
      if (c != 0) col[it->second] = c;
    }
    if (!col.empty() && seen.insert(col).second) out.push_back(col);
  };
  for (auto& key : gens) {
    Diagram d = decode_class(key);
    auto c = canonicalize(d);
    if (c.odd_automorphism) {
      DiagramExpr two = DiagramExpr::from_diagram(d, 2);
      add_expr(two);
    }
    for (int e = 0; e < static_cast<int>(d.edges.size()); ++e) {
      auto [u, v] = d.edges[e];
      if (u == v || d.is_leg(u) || d.is_leg(v)) continue;
      IhxPair hx = ihx_at(d, e);
      DiagramExpr rel = DiagramExpr::from_diagram(d);
      rel -= DiagramExpr::from_diagram(hx.h);
      rel += DiagramExpr::from_diagram(hx.x);
      add_expr(rel);
    }
  }
  return out;
}

SpacePresentation build_connected(const SpaceFlavor& f, int loops) {
  SpacePresentation sp;
  sp.flavor = f;
  sp.gens = connected_classes(f.genus, f.i_deg, loops);
  for (size_t i = 0; i < sp.gens.size(); ++i) sp.index.emplace(sp.gens[i], static_cast<int>(i));
  auto rel = connected_relators(sp.gens, sp.index);
  IntMatrix m(static_cast<int>(sp.gens.size()), static_cast<int>(rel.size()));
  for (size_t j = 0; j < rel.size(); ++j)
    for (auto& [i, v] : rel[j]) m.set(i, static_cast<int>(j), v);
  sp.group = PresentedGroup(static_cast<int>(sp.gens.size()), std::move(m));
  return sp;
}

SpacePresentation build_multiset(const SpaceFlavor& f) {
  SpacePresentation sp;
  sp.flavor = f;
  sp.gens = enumerate_generators(f);
  for (size_t i = 0; i < sp.gens.size(); ++i) sp.index.emplace(sp.gens[i], static_cast<int>(i));
  if (sp.gens.size() > 200000) throw ResourceError("multiset generator set too large");

  // component pool and its connected relators per degree
  int mindeg = f.variant == Variant::Full ? 0 : 1;
  std::vector<std::vector<std::string>> pool(f.i_deg + 1);
  std::vector<std::map<std::string, int>> poolindex(f.i_deg + 1);
  std::vector<std::vector<std::map<int, Int>>> poolrel(f.i_deg + 1);
  for (int d = std::max(1, mindeg); d <= f.i_deg; ++d) {
    pool[d] = connected_classes(f.genus, d, -1);
    for (size_t i = 0; i < pool[d].size(); ++i) poolindex[d].emplace(pool[d][i], static_cast<int>(i));
    poolrel[d] = connected_relators(pool[d], poolindex[d]);
  }

  std::vector<std::map<int, Int>> relators;
  std::set<std::map<int, Int>> seen;
  // lift each connected relator of degree d against every complementary
  // multiset of degree i_deg - d
  for (int d = 1; d <= f.i_deg; ++d) {
    if (poolrel[d].empty()) continue;
    SpaceFlavor restf = f;
    restf.i_deg = f.i_deg - d;
    std::vector<std::string> complements = enumerate_generators(restf);
    for (auto& r : poolrel[d]) {
      for (auto& comp : complements) {
        std::map<int, Int> col;
        for (auto& [ci, cv] : r) {
          std::vector<std::string> parts;
          std::istringstream is(comp + pool[d][ci] + "\n");
          std::string line;
          while (std::getline(is, line))
            if (!line.empty()) parts.push_back(line);
          std::string k = multiset_key(parts);
          auto it = sp.index.find(k);
          if (it == sp.index.end()) throw std::logic_error("lifted relator leaves generators");
          auto [cit, inserted] = col.emplace(it->second, cv);
          if (!inserted) {
            cit->second += cv;
            if (cit->second == 0) col.erase(cit);
          }
        }
        if (!col.empty() && seen.insert(col).second) relators.push_back(col);
      }
    }
  }
  IntMatrix m(static_cast<int>(sp.gens.size()), static_cast<int>(relators.size()));
  for (size_t j = 0; j < relators.size(); ++j)
    for (auto& [i, v] : relators[j]) m.set(i, static_cast<int>(j), v);
  sp.group = PresentedGroup(static_cast<int>(sp.gens.size()), std::move(m));
  return sp;
}

SpacePresentation build_submodule(const SpaceFlavor& f) {
  // subgroup of A^c_{n,1} generated by the listed wheel classes
  SpaceFlavor ambient{f.genus, f.i_deg, Variant::ConnectedLoops, 1, 2};
  const SpacePresentation& amb = presentation(ambient);
  SpacePresentation sp;
  sp.flavor = f;
  sp.gens = enumerate_generators(f);
  for (size_t i = 0; i < sp.gens.size(); ++i) sp.index.emplace(sp.gens[i], static_cast<int>(i));
  std::vector<std::vector<Int>> elements;
  for (auto& k : sp.gens) {
    std::vector<Int> v(amb.gens.size(), 0);
    v[amb.index.at(k)] = 1;
    elements.push_back(std::move(v));
  }
  sp.group = subgroup_presentation(amb.group, elements);
  return sp;
}

}  // namespace

const SpacePresentation& presentation(const SpaceFlavor& f) {
  static std::map<std::string, std::unique_ptr<SpacePresentation>> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(f.key());
  if (it != cache.end()) return *it->second;

  std::unique_ptr<SpacePresentation> sp;
  if (auto cached = cache_load_presentation(f)) {
    sp = std::make_unique<SpacePresentation>(std::move(*cached));
  } else {
    switch (f.variant) {
      case Variant::Connected:
        sp = std::make_unique<SpacePresentation>(build_connected(f, -1));
        break;
      case Variant::ConnectedLoops:
        sp = std::make_unique<SpacePresentation>(build_connected(f, f.loops));
        break;
      case Variant::StrutFree:
      case Variant::Full:
        sp = std::make_unique<SpacePresentation>(build_multiset(f));
        break;
      default:
        sp = std::make_unique<SpacePresentation>(build_submodule(f));
        break;
    }
    cache_store_presentation(*sp);
  }
  auto [pos, ok] = cache.emplace(f.key(), std::move(sp));
  return *pos->second;
}

std::vector<Int> SpacePresentation::vec(const DiagramExpr& e) const {
  std::vector<Int> out(gens.size(), 0);
  bool multiset = flavor.variant == Variant::Full || flavor.variant == Variant::StrutFree;
  for (auto& [k, c] : e.terms) {
    std::string lookup = k;
    Int coeff = c;
    if (multiset) {
      ComponentSplit split = split_class(k);
      if (split.sign == 0) continue;
      coeff *= split.sign;
      lookup = multiset_key(split.keys);
    }
    auto it = index.find(lookup);
    if (it == index.end()) {
      // diagnose the constraint that failed
      Diagram d = decode_class(k);
      auto m = metrics(d);
      std::string why;
      if (m.i_deg != flavor.i_deg)
        why = "i-deg " + std::to_string(m.i_deg) + " != " + std::to_string(flavor.i_deg);
      else if ((flavor.variant == Variant::Connected ||
                flavor.variant == Variant::ConnectedLoops) &&
               !m.connected)
        why = "term is not connected";
      else if (flavor.variant == Variant::ConnectedLoops &&
               (m.loop_deg_per_component.empty() || m.loop_deg_per_component[0] != flavor.loops))
        why = "loop degree differs from " + std::to_string(flavor.loops);
      else if (!m.strut_free && flavor.variant == Variant::StrutFree)
        why = "term contains a strut";
      else
        why = "term outside the flavor's generator set";
      throw std::invalid_argument("reduce: term " + render_class(k) + ": " + why);
    }
    out[it->second] += coeff;
  }
  return out;
}

GroupElement SpacePresentation::reduce_expr(const DiagramExpr& e) const {
  return make_element(group, vec(e));
}

// ---- SymF2 -------------------------------------------------------------------

SymF2::SymF2(int genus, int max_ideg) : genus_(genus) {
  levels_.resize(max_ideg + 1);
  int base = 0;
  for (int d = 1; d <= max_ideg; ++d) {
    Level& lv = levels_[d];
    lv.gens = connected_classes(genus, d, -1);
    for (size_t i = 0; i < lv.gens.size(); ++i) lv.index.emplace(lv.gens[i], static_cast<int>(i));
    lv.relations = F2Space(static_cast<int>(lv.gens.size()));
    for (auto& r : connected_relators(lv.gens, lv.index)) {
      F2Vec v(static_cast<int>(lv.gens.size()));
      for (auto& [i, c] : r)
        if (mpz_odd_p(c.get_mpz_t())) v.flip(i);
      lv.relations.insert(std::move(v));
    }
    // dense basis ids for non-pivot columns, globally unique across levels
    std::vector<int> colid(lv.gens.size(), -1);
    for (size_t i = 0; i < lv.gens.size(); ++i)
      if (!lv.relations.pivots.count(static_cast<int>(i))) colid[i] = base++;
    lv.nf.resize(lv.gens.size());
    for (size_t i = 0; i < lv.gens.size(); ++i) {
      F2Vec e(static_cast<int>(lv.gens.size()));
      e.flip(static_cast<int>(i));
      F2Vec r = lv.relations.reduce(e);
      for (int s : r.support()) lv.nf[i].push_back(colid[s]);
    }
  }
}

std::map<std::vector<int>, int> SymF2::normal_form(const DiagramExpr& e) const {
  std::map<std::vector<int>, int> acc;
  for (auto& [k, c] : e.terms) {
    if (!mpz_odd_p(c.get_mpz_t())) continue;
    ComponentSplit split = split_class(k);
    if (split.sign == 0) continue;
    // expand the product of component normal forms
    std::vector<const std::vector<int>*> factors;
    bool dead = false;
    for (auto& ck : split.keys) {
      int d = class_i_deg(ck);
      if (d == 0) throw std::invalid_argument("SymF2 is for strut-free expressions");
      if (d >= static_cast<int>(levels_.size()))
        throw std::invalid_argument("SymF2 built with too small a degree bound");
      const Level& lv = levels_[d];
      auto it = lv.index.find(ck);
      if (it == lv.index.end()) throw std::logic_error("component not in the generator pool");
      const auto& nf = lv.nf[it->second];
      if (nf.empty()) {
        dead = true;
        break;
      }
      factors.push_back(&nf);
    }
    if (dead) continue;
    std::vector<int> choice;
    std::function<void(size_t)> rec = [&](size_t i) {
      if (i == factors.size()) {
        std::vector<int> keyv = choice;
        std::sort(keyv.begin(), keyv.end());
        auto [it2, inserted] = acc.emplace(keyv, 1);
        if (!inserted) {
          it2->second ^= 1;
          if (it2->second == 0) acc.erase(it2);
        }
        return;
      }
      for (int b : *factors[i]) {
        choice.push_back(b);
        rec(i + 1);
        choice.pop_back();
      }
    };
    rec(0);
  }
  return acc;
}

bool SymF2::equal_mod2(const DiagramExpr& a, const DiagramExpr& b) const {
  DiagramExpr d = a;
  d -= b;
  return is_zero(d);
}

}  // namespace jd
