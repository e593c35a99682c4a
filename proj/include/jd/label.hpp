#pragma once

#include <compare>
#include <stdexcept>
#include <string>

namespace jd {

// A leg color j^+ or j^- with 1 <= j <= g.  The involution * swaps the sign.
struct Label {
  int index = 1;
  int sign = +1;  // +1 or -1

  // Total order 1+ < 1- < 2+ < 2- < ...
  int code() const { return (index - 1) * 2 + (sign < 0 ? 1 : 0); }
  friend auto operator<=>(const Label& a, const Label& b) { return a.code() <=> b.code(); }
  friend bool operator==(const Label& a, const Label& b) { return a.code() == b.code(); }
};

inline Label star(Label l) { return Label{l.index, -l.sign}; }

inline Label label_from_code(int code) { return Label{code / 2 + 1, code % 2 == 0 ? +1 : -1}; }

inline std::string to_string(const Label& l) {
  return std::to_string(l.index) + (l.sign > 0 ? "+" : "-");
}

// Parses "12+" / "3-".  Throws std::invalid_argument on malformed input.
inline Label parse_label(const std::string& s) {
  if (s.size() < 2) throw std::invalid_argument("bad label '" + s + "'");
  char c = s.back();
  if (c != '+' && c != '-') throw std::invalid_argument("bad label sign in '" + s + "'");
  int idx = 0;
  for (size_t i = 0; i + 1 < s.size(); ++i) {
    if (s[i] < '0' || s[i] > '9') throw std::invalid_argument("bad label index in '" + s + "'");
    idx = idx * 10 + (s[i] - '0');
  }
  if (idx < 1) throw std::invalid_argument("label index must be >= 1 in '" + s + "'");
  return Label{idx, c == '+' ? +1 : -1};
}

}  // namespace jd
