#include "jd/expr.hpp"

#include <algorithm>
#include <cctype>
#include <sstream>
#include <vector>

namespace jd {

DiagramExpr DiagramExpr::from_diagram(const Diagram& d, const Int& coeff) {
  return from_class(canonicalize(d), coeff);
}

DiagramExpr DiagramExpr::from_class(const SignedClass& c, const Int& coeff) {
  DiagramExpr e;
  if (c.sign == 0) return e;
  e.add(c.key, c.sign > 0 ? coeff : -coeff);
  return e;
}

DiagramExpr& DiagramExpr::add(const std::string& key, const Int& coeff) {
  if (coeff == 0) return *this;
  auto it = terms.find(key);
  if (it == terms.end()) {
    terms.emplace(key, coeff);
  } else {
    it->second += coeff;
    if (it->second == 0) terms.erase(it);
  }
  return *this;
}

DiagramExpr& DiagramExpr::operator+=(const DiagramExpr& o) {
  for (auto& [k, c] : o.terms) add(k, c);
  return *this;
}

DiagramExpr& DiagramExpr::operator-=(const DiagramExpr& o) {
  for (auto& [k, c] : o.terms) add(k, -c);
  return *this;
}

DiagramExpr& DiagramExpr::operator*=(const Int& c) {
  if (c == 0) {
    terms.clear();
    return *this;
  }
  for (auto& [k, v] : terms) v *= c;
  return *this;
}

DiagramExpr DiagramExpr::mod2() const {
  DiagramExpr e;
  for (auto& [k, c] : terms)
    if (mpz_odd_p(c.get_mpz_t())) e.terms.emplace(k, 1);
  return e;
}

namespace {

class Parser {
 public:
  Parser(const std::string& text, int genus) : s_(text), g_(genus) {}

  DiagramExpr expr() {
    DiagramExpr e;
    skip();
    int sign = +1;
    if (peek() == '-') {
      sign = -1;
      ++i_;
    }
    e += sterm(sign);
    skip();
    while (i_ < s_.size() && (peek() == '+' || peek() == '-')) {
      char op = s_[i_++];
      e += sterm(op == '+' ? +1 : -1);
      skip();
    }
    if (i_ != s_.size()) fail("unexpected trailing input");
    return e;
  }

  Diagram single_diagram() {
    skip();
    Diagram d = diagram();
    skip();
    if (i_ != s_.size()) fail("unexpected trailing input");
    return d;
  }

 private:
  const std::string& s_;
  int g_;
  size_t i_ = 0;

  [[noreturn]] void fail(const std::string& msg) { throw ParseError(i_, msg); }
  void skip() {
    while (i_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[i_]))) ++i_;
  }
  char peek() {
    skip();
    return i_ < s_.size() ? s_[i_] : '\0';
  }
  void expect(char c) {
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++i_;
  }
  bool try_word(const std::string& w) {
    skip();
    if (s_.compare(i_, w.size(), w) == 0) {
      i_ += w.size();
      return true;
    }
    return false;
  }
  long integer() {
    skip();
    size_t start = i_;
    if (i_ < s_.size() && (s_[i_] == '-' || s_[i_] == '+')) ++i_;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    if (i_ == start || (i_ == start + 1 && !std::isdigit(static_cast<unsigned char>(s_[start]))))
      fail("expected an integer");
    return std::stol(s_.substr(start, i_ - start));
  }
  Label label() {
    skip();
    size_t start = i_;
    while (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) ++i_;
    if (i_ == start) fail("expected a label");
    if (i_ >= s_.size() || (s_[i_] != '+' && s_[i_] != '-')) fail("label needs '+' or '-'");
    ++i_;
    Label l = parse_label(s_.substr(start, i_ - start));
    if (l.index > g_) fail("label index " + std::to_string(l.index) + " exceeds genus " +
                           std::to_string(g_));
    return l;
  }
  std::vector<Label> label_list(char close) {
    std::vector<Label> ls;
    if (peek() != close) {
      ls.push_back(label());
      while (peek() == ',') {
        ++i_;
        ls.push_back(label());
      }
    }
    return ls;
  }

  DiagramExpr sterm(int sign) {
    Int coeff = sign;
    skip();
    if (i_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[i_]))) {
      // Could be a coefficient or the start of nothing: the grammar only
      // allows INT "*" here.
      coeff *= Int(integer());
      expect('*');
    }
    Diagram d = diagram();
    validate(d);
    return DiagramExpr::from_diagram(d, coeff);
  }

  Diagram diagram() {
    if (try_word("T(")) {
      auto ls = label_list(')');
      expect(')');
      if (ls.size() < 3) fail("T requires >= 3 labels");
      return build_T(ls);
    }
    if (try_word("O(")) {
      auto ls = label_list(')');
      expect(')');
      if (ls.empty()) fail("O requires >= 1 label");
      return build_O(ls);
    }
    if (try_word("strut(")) {
      auto ls = label_list(')');
      expect(')');
      if (ls.size() != 2) fail("strut requires exactly 2 labels");
      return build_strut(ls[0], ls[1]);
    }
    if (try_word("G{")) return generic();
    fail("expected a diagram (T, O, strut or G literal)");
  }

  Diagram generic() {
    Diagram d;
    if (!try_word("t=")) fail("expected 't='");
    long t = integer();
    if (t < 0) fail("t must be >= 0");
    d.trivalent = static_cast<int>(t);
    expect(';');
    if (!try_word("legs=[")) fail("expected 'legs=['");
    d.legs = label_list(']');
    expect(']');
    expect(';');
    if (!try_word("edges=[")) fail("expected 'edges=['");
    if (peek() != ']') {
      d.edges.push_back(vertex_pair(d));
      while (peek() == ',') {
        ++i_;
        d.edges.push_back(vertex_pair(d));
      }
    }
    expect(']');
    expect(';');
    if (!try_word("cyc={")) fail("expected 'cyc={'");
    d.cyc.resize(d.trivalent);
    std::vector<bool> seen(d.trivalent, false);
    if (peek() != '}') {
      cyc_entry(d, seen);
      while (peek() == ',') {
        ++i_;
        cyc_entry(d, seen);
      }
    }
    expect('}');
    expect('}');
    for (int v = 0; v < d.trivalent; ++v)
      if (!seen[v]) fail("missing cyclic order for v" + std::to_string(v + 1));
    return d;
  }

  int vertex_name(const Diagram& d) {
    skip();
    if (i_ >= s_.size() || (s_[i_] != 'v' && s_[i_] != 'l')) fail("expected v<k> or l<k>");
    char kind = s_[i_++];
    long k = integer();
    if (kind == 'v') {
      if (k < 1 || k > d.trivalent) fail("vertex v" + std::to_string(k) + " out of range");
      return static_cast<int>(k - 1);
    }
    if (k < 1 || k > d.leg_count()) fail("leg l" + std::to_string(k) + " out of range");
    return d.trivalent + static_cast<int>(k - 1);
  }

  std::pair<int, int> vertex_pair(Diagram& d) {
    expect('(');
    int a = vertex_name(d);
    expect(',');
    int b = vertex_name(d);
    expect(')');
    return {a, b};
  }

  void cyc_entry(Diagram& d, std::vector<bool>& seen) {
    skip();
    if (peek() != 'v') fail("expected v<k>:[...]");
    ++i_;
    long k = integer();
    if (k < 1 || k > d.trivalent) fail("vertex v" + std::to_string(k) + " out of range");
    int v = static_cast<int>(k - 1);
    if (seen[v]) fail("duplicate cyclic order for v" + std::to_string(k));
    seen[v] = true;
    expect(':');
    expect('[');
    std::array<Occ, 3> occ;
    std::vector<int> used_end_count(d.edges.size(), 0);
    for (int slot = 0; slot < 3; ++slot) {
      if (slot) expect(',');
      skip();
      if (peek() != 'e') fail("expected e<k>");
      ++i_;
      long en = integer();
      if (en < 1 || en > static_cast<long>(d.edges.size()))
        fail("edge e" + std::to_string(en) + " out of range");
      int e = static_cast<int>(en - 1);
      auto [x, y] = d.edges[e];
      int end;
      if (x == v && y == v) {
        end = used_end_count[e];  // self-loop: ends in order of appearance
        if (end > 1) fail("edge e" + std::to_string(en) + " listed more than twice");
      } else if (x == v) {
        end = 0;
      } else if (y == v) {
        end = 1;
      } else {
        fail("edge e" + std::to_string(en) + " is not incident to v" + std::to_string(k));
      }
      ++used_end_count[e];
      occ[slot] = Occ{e, end};
    }
    expect(']');
    d.cyc[v] = occ;
  }
};

// --- rendering ---------------------------------------------------------

std::string g_literal(const Diagram& d) {
  std::ostringstream os;
  os << "G{t=" << d.trivalent << ";legs=[";
  for (int j = 0; j < d.leg_count(); ++j) {
    if (j) os << ",";
    os << to_string(d.legs[j]);
  }
  os << "];edges=[";
  for (size_t e = 0; e < d.edges.size(); ++e) {
    if (e) os << ",";
    auto name = [&](int v) {
      return d.is_leg(v) ? "l" + std::to_string(v - d.trivalent + 1) : "v" + std::to_string(v + 1);
    };
    os << "(" << name(d.edges[e].first) << "," << name(d.edges[e].second) << ")";
  }
  os << "];cyc={";
  for (int v = 0; v < d.trivalent; ++v) {
    if (v) os << ",";
    os << "v" << v + 1 << ":[";
    for (int i = 0; i < 3; ++i) {
      if (i) os << ",";
      os << "e" << d.cyc[v][i].edge + 1;
    }
    os << "]";
  }
  os << "}}";
  return os.str();
}

// Tries to express the class as T(...) / O(...) / strut(...) with sign +1,
// picking the lexicographically least label word.
std::string short_form(const std::string& key) {
  Diagram rep = decode_class(key);
  auto m = metrics(rep);
  if (!m.connected || rep.has_self_loop()) return {};
  int t = rep.trivalent, legs = rep.leg_count();
  std::vector<std::vector<Label>> candidates;
  if (t == 0 && legs == 2) {
    std::vector<Label> w = {rep.legs[0], rep.legs[1]};
    std::sort(w.begin(), w.end());
    return "strut(" + to_string(w[0]) + "," + to_string(w[1]) + ")";
  }
  if (m.loop_deg_per_component[0] == 0 && t >= 1 && legs == t + 2) {
    // Caterpillar test: internal skeleton must be a path; read off leg words.
    std::vector<std::vector<int>> adj(t);
    for (auto& [u, v] : rep.edges)
      if (!rep.is_leg(u) && !rep.is_leg(v)) {
        adj[u].push_back(v);
        adj[v].push_back(u);
      }
    bool path = true;
    int ends = 0;
    for (int v = 0; v < t; ++v) {
      if (adj[v].size() > 2) path = false;
      if (adj[v].size() <= 1) ++ends;
    }
    if (path && (t == 1 || ends == 2)) {
      // Enumerate T words via permutations for t == 1, else via the 8 symmetric
      // readings of the caterpillar.
      std::vector<std::vector<Label>> words;
      if (t == 1) {
        std::vector<Label> w = rep.legs;
        std::sort(w.begin(), w.end());
        do {
          words.push_back(w);
        } while (std::next_permutation(w.begin(), w.end()));
      } else {
        // order the path
        std::vector<int> order;
        int start = -1;
        for (int v = 0; v < t && start < 0; ++v)
          if (adj[v].size() == 1) start = v;
        std::vector<bool> vis(t, false);
        int cur = start;
        while (cur >= 0) {
          order.push_back(cur);
          vis[cur] = true;
          int nxt = -1;
          for (int w : adj[cur])
            if (!vis[w]) nxt = w;
          cur = nxt;
        }
        std::vector<std::vector<Label>> at(t);
        for (auto& [u, v] : rep.edges) {
          if (rep.is_leg(v) && !rep.is_leg(u)) at[u].push_back(rep.legs[v - t]);
          if (rep.is_leg(u) && !rep.is_leg(v)) at[v].push_back(rep.legs[u - t]);
        }
        for (int dir = 0; dir < 2; ++dir) {
          std::vector<int> ord = order;
          if (dir) std::reverse(ord.begin(), ord.end());
          if (at[ord[0]].size() != 2 || at[ord[t - 1]].size() != 2) continue;
          for (int sw0 = 0; sw0 < 2; ++sw0)
            for (int sw1 = 0; sw1 < 2; ++sw1) {
              std::vector<Label> w;
              w.push_back(at[ord[0]][sw0]);
              w.push_back(at[ord[0]][1 - sw0]);
              bool ok = true;
              for (int i = 1; i + 1 < t; ++i) {
                if (at[ord[i]].size() != 1) {
                  ok = false;
                  break;
                }
                w.push_back(at[ord[i]][0]);
              }
              if (!ok) continue;
              w.push_back(at[ord[t - 1]][sw1]);
              w.push_back(at[ord[t - 1]][1 - sw1]);
              words.push_back(w);
            }
        }
      }
      std::vector<Label> best;
      for (auto& w : words) {
        auto c = canonicalize(build_T(w));
        if (c.key == key && c.sign > 0 && (best.empty() || w < best)) best = w;
      }
      if (!best.empty()) {
        std::string out = "T(";
        for (size_t i = 0; i < best.size(); ++i)
          out += (i ? "," : "") + to_string(best[i]);
        return out + ")";
      }
    }
  }
  if (m.loop_deg_per_component[0] == 1 && legs == t && t >= 2) {
    // Pure wheel test: every trivalent vertex carries one leg and two cycle edges.
    std::vector<std::vector<int>> adj(t);
    bool wheel = true;
    for (auto& [u, v] : rep.edges)
      if (!rep.is_leg(u) && !rep.is_leg(v)) {
        adj[u].push_back(v);
        adj[v].push_back(u);
      }
    std::vector<Label> at(t, Label{});
    std::vector<int> atn(t, 0);
    for (auto& [u, v] : rep.edges) {
      if (rep.is_leg(v) && !rep.is_leg(u)) {
        at[u] = rep.legs[v - t];
        ++atn[u];
      }
      if (rep.is_leg(u) && !rep.is_leg(v)) {
        at[v] = rep.legs[u - t];
        ++atn[v];
      }
    }
    for (int v = 0; v < t; ++v)
      if (adj[v].size() != 2 || atn[v] != 1) wheel = false;
    if (wheel) {
      // walk the cycle
      std::vector<int> order{0};
      std::vector<bool> vis(t, false);
      vis[0] = true;
      int cur = 0;
      while (static_cast<int>(order.size()) < t) {
        int nxt = -1;
        for (int w : adj[cur])
          if (!vis[w]) nxt = w;
        if (nxt < 0) break;
        order.push_back(nxt);
        vis[nxt] = true;
        cur = nxt;
      }
      if (static_cast<int>(order.size()) == t) {
        std::vector<Label> best;
        for (int dir = 0; dir < 2; ++dir) {
          std::vector<int> ord = order;
          if (dir) std::reverse(ord.begin(), ord.end());
          for (int r = 0; r < t; ++r) {
            std::vector<Label> w;
            for (int i = 0; i < t; ++i) w.push_back(at[ord[(r + i) % t]]);
            auto c = canonicalize(build_O(w));
            if (c.key == key && c.sign > 0 && (best.empty() || w < best)) best = w;
          }
        }
        if (!best.empty()) {
          std::string out = "O(";
          for (size_t i = 0; i < best.size(); ++i)
            out += (i ? "," : "") + to_string(best[i]);
          return out + ")";
        }
      }
    }
  }
  return {};
}

}  // namespace

DiagramExpr parse_expr(const std::string& text, int genus) {
  return Parser(text, genus).expr();
}

Diagram parse_diagram(const std::string& text, int genus) {
  Diagram d = Parser(text, genus).single_diagram();
  validate(d);
  return d;
}

std::string render_class(const std::string& key) {
  std::string s = short_form(key);
  if (!s.empty()) return s;
  return g_literal(decode_class(key));
}

std::string render(const DiagramExpr& e) {
  if (e.is_zero()) return "0";
  std::ostringstream os;
  bool first = true;
  for (auto& [k, c] : e.terms) {
    Int a = c < 0 ? Int(-c) : c;
    if (first) {
      if (c < 0) os << "- ";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    if (a != 1) os << a.get_str() << "*";
    os << render_class(k);
  }
  return os.str();
}

}  // namespace jd
