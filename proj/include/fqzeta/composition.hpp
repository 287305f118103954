#pragma once

#include <numeric>
#include <string>
#include <vector>

#include "fqzeta/common.hpp"

namespace fqz {

// Tuple (s_1, ..., s_r) of positive integers: depth r, weight sum s_i.
struct Composition {
  std::vector<int> parts;

  Composition() = default;
  Composition(std::initializer_list<int> p) : parts(p) { validate(); }
  explicit Composition(std::vector<int> p) : parts(std::move(p)) { validate(); }

  int depth() const { return static_cast<int>(parts.size()); }
  i64 weight() const { return std::accumulate(parts.begin(), parts.end(), i64{0}); }

  void validate() const {
    if (parts.empty()) throw error("composition must be nonempty");
    for (int s : parts)
      if (s < 1) throw error("composition parts must be positive");
  }

  std::string str() const {
    std::string out = "(";
    for (size_t i = 0; i < parts.size(); ++i) {
      if (i) out += ",";
      out += std::to_string(parts[i]);
    }
    return out + ")";
  }

  friend bool operator==(const Composition& a, const Composition& b) { return a.parts == b.parts; }
  friend bool operator<(const Composition& a, const Composition& b) { return a.parts < b.parts; }
};

// All compositions of the given weight with depth <= max_depth,
// lexicographically ordered.
std::vector<Composition> compositions_of_weight(i64 weight, int max_depth);

}  // namespace fqz
