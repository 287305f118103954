#include "fqzeta/graded.hpp"

namespace fqz {

namespace {
// floor division for the grade carry
i64 floor_div(i64 a, i64 b) {
  i64 q = a / b, r = a % b;
  return (r != 0 && ((r < 0) != (b < 0))) ? q - 1 : q;
}
}  // namespace

LaurentNumber neg_theta_power(const FieldPtr& cfg, i64 n) {
  Fq c = (n % 2 == 0) ? cfg->one() : cfg->neg(cfg->one());
  return LaurentNumber::monomial(cfg, c, n);
}

GradedNumber::GradedNumber(LaurentNumber unit, i64 grade_raw) : unit_(std::move(unit)) {
  const FieldPtr& cfg = unit_.field();
  i64 m = cfg->q() - 1;
  if (m == 1) {
    // q = 2: theta_tilde = -theta itself, the grade group is trivial
    if (grade_raw != 0) unit_ = unit_ * neg_theta_power(cfg, grade_raw);
    grade_ = 0;
    return;
  }
  i64 carry = floor_div(grade_raw, m);
  grade_ = grade_raw - carry * m;
  if (carry != 0) unit_ = unit_ * neg_theta_power(cfg, carry);
}

GradedNumber GradedNumber::theta_tilde_power(FieldPtr cfg, i64 n) {
  return GradedNumber(LaurentNumber::constant(cfg, cfg->one()), n);
}

GradedNumber GradedNumber::operator*(const GradedNumber& o) const {
  return GradedNumber(unit_ * o.unit_, grade_ + o.grade_);
}

GradedNumber GradedNumber::operator+(const GradedNumber& o) const {
  if (grade_ != o.grade_) throw error("grade mismatch in graded addition");
  return GradedNumber(unit_ + o.unit_, grade_);
}

GradedNumber GradedNumber::operator-(const GradedNumber& o) const {
  if (grade_ != o.grade_) throw error("grade mismatch in graded subtraction");
  return GradedNumber(unit_ - o.unit_, grade_);
}

GradedNumber GradedNumber::pow(i64 n, i64 prec) const {
  if (n < 0) throw error("negative graded power");
  return GradedNumber(unit_.pow(n, prec), grade_ * n);
}

GradedNumber GradedNumber::inv(i64 prec) const {
  return GradedNumber(unit_.inv(prec), -grade_);
}

GradedNumber GradedNumber::times(Fq c) const { return GradedNumber(unit_.times(c), grade_); }

GradedNumber GradedNumber::truncated(i64 err) const {
  return GradedNumber(unit_.truncated(err), grade_);
}

GradedNumber GradedNumber::frobenius_power(int n) const {
  // (u tt^g)^(q^n) = u^(q^n) tt^(g q^n); q == 1 mod (q-1) keeps the grade,
  // the constructor folds the carry into the unit.
  i64 qn = checked_pow(field()->q(), n);
  return GradedNumber(unit_.frobenius_power(n), checked_mul(grade_, qn));
}

Ternary GradedNumber::equal(const GradedNumber& a, const GradedNumber& b) {
  if (a.grade_ != b.grade_) return Ternary::no;
  return LaurentNumber::equal(a.unit_, b.unit_);
}

}  // namespace fqz
