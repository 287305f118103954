#pragma once

#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>

namespace fqz {

using i64 = long long;

// Sentinel error degree for exact values (no truncation error at all).
inline constexpr i64 kExact = std::numeric_limits<i64>::min();

// Degree of the zero polynomial.
inline constexpr i64 kNegInfDeg = std::numeric_limits<i64>::min();

struct error : std::runtime_error {
  explicit error(const std::string& what) : std::runtime_error(what) {}
};

struct parse_error : error {
  parse_error(const std::string& what, std::size_t offset)
      : error(what + " at offset " + std::to_string(offset)), offset(offset) {}
  std::size_t offset;
};

// Three-valued comparison result for precision-tracked values.
enum class Ternary { yes, no, unknown };

inline i64 checked_add(i64 a, i64 b) {
  i64 r;
  if (__builtin_add_overflow(a, b, &r)) throw error("exponent overflow in addition");
  return r;
}

inline i64 checked_mul(i64 a, i64 b) {
  i64 r;
  if (__builtin_mul_overflow(a, b, &r)) throw error("exponent overflow in multiplication");
  return r;
}

// q^n as i64, throwing on overflow.
inline i64 checked_pow(i64 q, int n) {
  i64 r = 1;
  for (int i = 0; i < n; ++i) r = checked_mul(r, q);
  return r;
}

}  // namespace fqz
