#pragma once

#include <map>
#include <vector>

#include "fqzeta/field.hpp"

namespace fqz {

// Element of A = F_q[theta].  Dense coefficient vector, lowest degree
// first, no trailing zeros.
class Poly {
 public:
  Poly() = default;
  explicit Poly(FieldPtr cfg) : cfg_(std::move(cfg)) {}
  Poly(FieldPtr cfg, std::vector<Fq> coeffs);

  static Poly zero(FieldPtr cfg) { return Poly(std::move(cfg)); }
  static Poly one(FieldPtr cfg);
  static Poly constant(FieldPtr cfg, Fq c);
  // c * theta^n
  static Poly monomial(FieldPtr cfg, Fq c, i64 n);
  static Poly theta(FieldPtr cfg) { return monomial(cfg, cfg->one(), 1); }

  const FieldPtr& field() const { return cfg_; }
  bool is_zero() const { return c_.empty(); }
  // kNegInfDeg for the zero polynomial
  i64 deg() const { return c_.empty() ? kNegInfDeg : static_cast<i64>(c_.size()) - 1; }
  Fq coeff(i64 i) const;
  const std::vector<Fq>& coeffs() const { return c_; }
  Fq leading() const;
  bool is_monic() const { return !c_.empty() && c_.back().is_one(); }
  bool is_one() const { return c_.size() == 1 && c_[0].is_one(); }

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator-() const;
  Poly operator*(const Poly& o) const;
  Poly times(Fq c) const;
  Poly shifted(i64 n) const;  // multiply by theta^n, n >= 0
  Poly pow(i64 n) const;

  // Quotient and remainder; divisor must be nonzero.
  static std::pair<Poly, Poly> divmod(const Poly& a, const Poly& b);
  // Exact division, throws if a remainder is left.
  Poly divide_exact(const Poly& b) const;

  friend bool operator==(const Poly& a, const Poly& b) { return a.c_ == b.c_; }
  friend bool operator!=(const Poly& a, const Poly& b) { return !(a == b); }

  // Monic gcd.
  static Poly gcd(Poly a, Poly b);
  Poly monic() const;

  // Coefficientwise q^n-power Frobenius: theta -> theta^(q^n) on A.
  // Returned sparsely since the degree multiplies by q^n.
  class SparsePoly frobenius(int n) const;

  Fq eval(Fq x) const;

 private:
  void trim();
  FieldPtr cfg_;
  std::vector<Fq> c_;
};

// Polynomial with few terms and possibly huge exponents; used by the
// exact power-sum engine where exponents grow like q^d.
class SparsePoly {
 public:
  SparsePoly() = default;
  explicit SparsePoly(FieldPtr cfg) : cfg_(std::move(cfg)) {}
  static SparsePoly from_poly(const Poly& p);
  static SparsePoly monomial(FieldPtr cfg, Fq c, i64 n);
  static SparsePoly one(FieldPtr cfg);

  const FieldPtr& field() const { return cfg_; }
  const std::map<i64, Fq>& terms() const { return t_; }
  bool is_zero() const { return t_.empty(); }
  i64 deg() const { return t_.empty() ? kNegInfDeg : t_.rbegin()->first; }
  std::size_t term_count() const { return t_.size(); }

  void add_term(i64 exp, Fq c);
  SparsePoly operator+(const SparsePoly& o) const;
  SparsePoly operator-(const SparsePoly& o) const;
  SparsePoly operator*(const SparsePoly& o) const;
  SparsePoly times(Fq c) const;
  SparsePoly times_int(i64 n) const;  // n modulo p
  // Exponents multiplied by q^n (coefficients are Frobenius-fixed).
  SparsePoly frobenius(int n) const;

  // Exact division by a dense polynomial; throws error("not divisible")
  // if a nonzero remainder is left.
  SparsePoly divide_exact(const Poly& den) const;

  // Dense conversion; degree must stay moderate.
  Poly to_poly(i64 max_deg = 1 << 22) const;

  friend bool operator==(const SparsePoly& a, const SparsePoly& b) { return a.t_ == b.t_; }

 private:
  FieldPtr cfg_;
  std::map<i64, Fq> t_;
};

// Element of k = F_q(theta), stored in lowest terms with monic denominator.
class RationalFunction {
 public:
  RationalFunction() = default;
  explicit RationalFunction(Poly num);
  RationalFunction(Poly num, Poly den);

  static RationalFunction zero(FieldPtr cfg) { return RationalFunction(Poly::zero(cfg)); }
  static RationalFunction one(FieldPtr cfg) { return RationalFunction(Poly::one(cfg)); }

  const Poly& num() const { return num_; }
  const Poly& den() const { return den_; }
  const FieldPtr& field() const { return num_.field(); }
  bool is_zero() const { return num_.is_zero(); }
  bool is_poly() const { return den_.is_one(); }
  // deg num - deg den (kNegInfDeg for zero)
  i64 deg() const;

  RationalFunction operator+(const RationalFunction& o) const;
  RationalFunction operator-(const RationalFunction& o) const;
  RationalFunction operator-() const;
  RationalFunction operator*(const RationalFunction& o) const;
  RationalFunction operator/(const RationalFunction& o) const;
  RationalFunction inv() const;

  friend bool operator==(const RationalFunction& a, const RationalFunction& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

 private:
  void normalize();
  Poly num_, den_;
};

// Exact rational with sparse numerator and small dense denominator;
// workhorse of the exact power-sum identities where numerator exponents
// are on the order of q^d but term counts stay small.
struct SparseRat {
  SparsePoly num;
  Poly den;  // nonzero, not necessarily monic

  static SparseRat from_sparse(SparsePoly n);
  SparseRat operator+(const SparseRat& o) const;
  SparseRat operator*(const SparseRat& o) const;
  SparseRat times_int(i64 n) const;
  bool is_zero() const { return num.is_zero(); }
};

}  // namespace fqz
