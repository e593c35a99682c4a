#pragma once

#include <string>

#include "jd/diagram.hpp"

namespace jd {

// Canonical isomorphism class with AS sign.  Two diagrams related by a
// color-preserving isomorphism get the same key; their signs differ by the
// parity of cyclic-order reversals relating them.  sign == 0 iff the diagram
// has a self-loop.  odd_automorphism marks classes with a color-preserving
// automorphism of odd total parity; such classes satisfy 2x = 0 after
// reduction and are normalized to sign +1.
struct SignedClass {
  std::string key;
  int sign = +1;
  bool odd_automorphism = false;
};

SignedClass canonicalize(const Diagram& d);

// Rebuilds the canonical representative (canonicalize(decode_class(k)) yields
// sign +1 and the same key).
Diagram decode_class(const std::string& key);

// Key of the empty diagram.
inline const std::string kEmptyClass = "0||";

}  // namespace jd
