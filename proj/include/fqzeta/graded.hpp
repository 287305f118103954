#pragma once

#include "fqzeta/laurent.hpp"

namespace fqz {

// Element of the theta-tilde graded extension of k_inf, where theta_tilde
// is a formal (q-1)-th root of -theta: value = unit * theta_tilde^grade,
// grade normalized into [0, q-2].  Only the relation
// theta_tilde^(q-1) = -theta is ever used; wrap-around multiplies the
// unit by -theta per full q-1 of theta_tilde exponent.  Values of
// different grade are never compared.
class GradedNumber {
 public:
  GradedNumber() = default;
  GradedNumber(LaurentNumber unit, i64 grade_raw);

  static GradedNumber from_laurent(LaurentNumber u) { return GradedNumber(std::move(u), 0); }
  // theta_tilde^n for any integer n (unit picks up (-theta)^carry).
  static GradedNumber theta_tilde_power(FieldPtr cfg, i64 n);

  const LaurentNumber& unit() const { return unit_; }
  i64 grade() const { return grade_; }
  const FieldPtr& field() const { return unit_.field(); }
  // Lies in k_inf iff grade == 0.
  bool in_k_inf() const { return grade_ == 0; }

  GradedNumber operator*(const GradedNumber& o) const;
  GradedNumber operator+(const GradedNumber& o) const;  // equal grade required
  GradedNumber operator-(const GradedNumber& o) const;
  GradedNumber pow(i64 n, i64 prec = kExact) const;  // n >= 0
  GradedNumber inv(i64 prec) const;
  GradedNumber times(Fq c) const;
  GradedNumber truncated(i64 err) const;
  GradedNumber frobenius_power(int n) const;

  static Ternary equal(const GradedNumber& a, const GradedNumber& b);

 private:
  LaurentNumber unit_;
  i64 grade_ = 0;  // in [0, q-2]; always 0 for q = 2
};

// (-theta)^n as an exact LaurentNumber (n may be negative).
LaurentNumber neg_theta_power(const FieldPtr& cfg, i64 n);

}  // namespace fqz
