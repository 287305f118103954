#pragma once

#include <vector>

#include "fqzeta/laurent.hpp"

namespace fqz {

// Truncated polynomial / power series in t with LaurentNumber
// coefficients.  Coefficients are reliable for all t-exponents up to
// t_trunc, each to its own err_deg.
class TSeries {
 public:
  TSeries() = default;
  TSeries(FieldPtr cfg, int t_trunc);
  TSeries(FieldPtr cfg, std::vector<LaurentNumber> coeffs);

  static TSeries constant(FieldPtr cfg, LaurentNumber c, int t_trunc);
  static TSeries one(FieldPtr cfg, int t_trunc);

  const FieldPtr& field() const { return cfg_; }
  int t_trunc() const { return static_cast<int>(c_.size()) - 1; }
  const LaurentNumber& coeff(int m) const;
  void set_coeff(int m, LaurentNumber c);
  const std::vector<LaurentNumber>& coeffs() const { return c_; }

  TSeries operator+(const TSeries& o) const;  // truncation = min of the two
  TSeries operator-(const TSeries& o) const;
  TSeries operator-() const;
  TSeries operator*(const TSeries& o) const;
  TSeries times(const LaurentNumber& s) const;
  TSeries pow(i64 n) const;
  TSeries truncated_coeffs(i64 err) const;  // truncate every coefficient
  TSeries with_t_trunc(int t) const;        // shrink the t-truncation

  // n-fold twisting: coefficients a_i -> a_i^(q^n).  n >= 0 always works;
  // n = -1 requires every coefficient exact with exponents divisible by q
  // and throws error("not a q-th power") otherwise.
  TSeries twist(int n) const;

  // Evaluate at t = theta^(q^N).  The caller supplies the error degree
  // covering the omitted tail m > t_trunc (kExact when the series is an
  // exact polynomial in t).
  LaurentNumber eval_theta_power(int N, i64 tail_err) const;

  // True iff every coefficient is zero within its precision.
  bool zero_within_precision() const;

 private:
  FieldPtr cfg_;
  std::vector<LaurentNumber> c_;  // index = t-exponent, size = t_trunc+1
};

// Polynomial in t with exact Poly (theta) coefficients; entries of the
// difference matrices live here.
class TPoly {
 public:
  TPoly() = default;
  explicit TPoly(FieldPtr cfg) : cfg_(std::move(cfg)) {}
  TPoly(FieldPtr cfg, std::vector<Poly> coeffs);

  static TPoly zero(FieldPtr cfg) { return TPoly(std::move(cfg)); }
  static TPoly one(FieldPtr cfg);
  static TPoly constant(Poly c);
  // t - c
  static TPoly t_minus(Poly c);

  const FieldPtr& field() const { return cfg_; }
  bool is_zero() const { return c_.empty(); }
  bool is_one() const;
  int deg_t() const { return static_cast<int>(c_.size()) - 1; }
  Poly coeff(int m) const;
  i64 max_coeff_deg() const;  // max theta-degree over coefficients (kNegInfDeg if zero)

  TPoly operator+(const TPoly& o) const;
  TPoly operator-(const TPoly& o) const;
  TPoly operator*(const TPoly& o) const;
  TPoly pow(i64 n) const;

  // theta -> theta^(q^n) on every coefficient (n >= 0).
  TPoly twist(int n) const;

  Poly eval_poly(const Poly& at) const;  // exact evaluation at a polynomial value of t
  // Evaluate at t = theta^(q^N) exactly, returned sparsely.
  SparsePoly eval_theta_power_sparse(int N) const;
  // (this^(d))(theta) = sum c_{jm} theta^(m q^d + j), exact and sparse.
  SparsePoly twisted_eval_theta(int d) const;

  TSeries to_series(int t_trunc) const;
  friend bool operator==(const TPoly& a, const TPoly& b) { return a.c_ == b.c_; }

 private:
  void trim();
  FieldPtr cfg_;
  std::vector<Poly> c_;
};

}  // namespace fqz
