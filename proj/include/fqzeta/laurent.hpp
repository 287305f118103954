#pragma once

#include <map>
#include <optional>

#include "fqzeta/poly.hpp"

namespace fqz {

// Truncated element of k_inf = F_q((1/theta)).
//
// Represents v = sum over the window + eps with deg eps < err_deg
// (|eps| < q^err_deg).  err_deg == kExact means no error term at all.
// The window never stores coefficients below err_deg, and degree queries
// answer only when the top window entry sits strictly above err_deg.
//
// Error propagation is conservative ultrametric bookkeeping:
//   add: err = max(err_a, err_b)
//   mul: err = max(err_a + hi_b, err_b + hi_a, err_a + err_b)
//   inv: err = max(requested, err_a - 2 deg a)
class LaurentNumber {
 public:
  LaurentNumber() = default;
  explicit LaurentNumber(FieldPtr cfg) : cfg_(std::move(cfg)) {}

  static LaurentNumber exact_zero(FieldPtr cfg) { return LaurentNumber(std::move(cfg)); }
  static LaurentNumber zero_to(FieldPtr cfg, i64 err);
  static LaurentNumber monomial(FieldPtr cfg, Fq c, i64 exp);
  static LaurentNumber constant(FieldPtr cfg, Fq c) { return monomial(std::move(cfg), c, 0); }
  static LaurentNumber from_poly(const Poly& p);
  static LaurentNumber from_sparse(const SparsePoly& p);
  // num/den expanded at 1/theta down to precision prec (err_deg <= prec).
  static LaurentNumber from_rational(const RationalFunction& r, i64 prec);

  const FieldPtr& field() const { return cfg_; }
  bool is_exact() const { return err_ == kExact; }
  i64 err_deg() const { return err_; }
  const std::map<i64, Fq>& window() const { return w_; }
  bool zero_within_precision() const { return w_.empty(); }
  bool is_exact_zero() const { return w_.empty() && is_exact(); }

  // Degree of the represented value; nullopt when indeterminate
  // (top coefficient not strictly above err_deg, or zero within precision).
  std::optional<i64> deg() const;
  std::optional<Fq> leading() const;
  // Coefficient at exponent e; nullopt when e < err_deg (not determined).
  std::optional<Fq> coeff(i64 e) const;

  LaurentNumber operator+(const LaurentNumber& o) const;
  LaurentNumber operator-(const LaurentNumber& o) const;
  LaurentNumber operator-() const;
  LaurentNumber operator*(const LaurentNumber& o) const;
  LaurentNumber times(Fq c) const;
  // Multiply by c * theta^n.
  LaurentNumber shifted(Fq c, i64 n) const;
  LaurentNumber pow(i64 n, i64 prec = kExact) const;  // n >= 0

  // Geometric-series inverse truncated at prec.  Throws
  // error("indeterminate leading term") for zero-within-precision input.
  LaurentNumber inv(i64 prec) const;

  // a -> a^(q^n) for n >= 0: window exponents and err_deg multiply by q^n,
  // coefficients are fixed (x^q = x on F_q).
  LaurentNumber frobenius_power(int n) const;

  // Raise err_deg to at least err and drop window entries below it.
  LaurentNumber truncated(i64 err) const;

  // Three-valued equality at the joint precision.
  static Ternary equal(const LaurentNumber& a, const LaurentNumber& b);

  friend bool operator==(const LaurentNumber& a, const LaurentNumber& b) {
    return a.err_ == b.err_ && a.w_ == b.w_;
  }

 private:
  void set_err_and_clip(i64 err);
  FieldPtr cfg_;
  std::map<i64, Fq> w_;
  i64 err_ = kExact;
};

}  // namespace fqz
