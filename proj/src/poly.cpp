#include "fqzeta/poly.hpp"

#include <algorithm>

namespace fqz {

Poly::Poly(FieldPtr cfg, std::vector<Fq> coeffs) : cfg_(std::move(cfg)), c_(std::move(coeffs)) {
  trim();
}

void Poly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

Poly Poly::one(FieldPtr cfg) {
  Poly r(cfg);
  r.c_ = {cfg->one()};
  return r;
}

Poly Poly::constant(FieldPtr cfg, Fq c) {
  Poly r(std::move(cfg));
  if (!c.is_zero()) r.c_ = {c};
  return r;
}

Poly Poly::monomial(FieldPtr cfg, Fq c, i64 n) {
  Poly r(std::move(cfg));
  if (c.is_zero()) return r;
  if (n < 0) throw error("negative exponent in Poly");
  r.c_.assign(static_cast<size_t>(n) + 1, r.cfg_->zero());
  r.c_.back() = c;
  return r;
}

Fq Poly::coeff(i64 i) const {
  if (i < 0 || i >= static_cast<i64>(c_.size())) return Fq{0};
  return c_[static_cast<size_t>(i)];
}

Fq Poly::leading() const {
  if (c_.empty()) throw error("leading coefficient of zero polynomial");
  return c_.back();
}

Poly Poly::operator+(const Poly& o) const {
  const FieldConfig& F = *cfg_;
  Poly r(cfg_);
  r.c_.resize(std::max(c_.size(), o.c_.size()), F.zero());
  for (size_t i = 0; i < r.c_.size(); ++i) r.c_[i] = F.add(coeff(i), o.coeff(i));
  r.trim();
  return r;
}

Poly Poly::operator-() const {
  Poly r = *this;
  for (Fq& x : r.c_) x = cfg_->neg(x);
  return r;
}

Poly Poly::operator-(const Poly& o) const { return *this + (-o); }

Poly Poly::operator*(const Poly& o) const {
  if (is_zero() || o.is_zero()) return Poly::zero(cfg_);
  const FieldConfig& F = *cfg_;
  Poly r(cfg_);
  r.c_.assign(c_.size() + o.c_.size() - 1, F.zero());
  for (size_t i = 0; i < c_.size(); ++i) {
    if (c_[i].is_zero()) continue;
    for (size_t j = 0; j < o.c_.size(); ++j)
      r.c_[i + j] = F.add(r.c_[i + j], F.mul(c_[i], o.c_[j]));
  }
  r.trim();
  return r;
}

Poly Poly::times(Fq c) const {
  if (c.is_zero()) return Poly::zero(cfg_);
  Poly r = *this;
  for (Fq& x : r.c_) x = cfg_->mul(x, c);
  return r;
}

Poly Poly::shifted(i64 n) const {
  if (n < 0) throw error("negative shift in Poly");
  if (is_zero()) return *this;
  Poly r(cfg_);
  r.c_.assign(static_cast<size_t>(n), cfg_->zero());
  r.c_.insert(r.c_.end(), c_.begin(), c_.end());
  return r;
}

Poly Poly::pow(i64 n) const {
  if (n < 0) throw error("negative power of Poly");
  Poly r = Poly::one(cfg_), base = *this;
  while (n > 0) {
    if (n & 1) r = r * base;
    if (n >>= 1) base = base * base;
  }
  return r;
}

std::pair<Poly, Poly> Poly::divmod(const Poly& a, const Poly& b) {
  if (b.is_zero()) throw error("division by zero polynomial");
  const FieldConfig& F = *a.cfg_;
  Poly q(a.cfg_), r = a;
  i64 db = b.deg();
  Fq linv = F.inv(b.leading());
  if (r.deg() >= db) q.c_.assign(static_cast<size_t>(r.deg() - db) + 1, F.zero());
  while (!r.is_zero() && r.deg() >= db) {
    i64 d = r.deg() - db;
    Fq c = F.mul(r.leading(), linv);
    q.c_[static_cast<size_t>(d)] = c;
    for (i64 i = 0; i <= db; ++i)
      r.c_[static_cast<size_t>(d + i)] = F.sub(r.c_[static_cast<size_t>(d + i)],
                                               F.mul(c, b.c_[static_cast<size_t>(i)]));
    r.trim();
  }
  q.trim();
  return {q, r};
}

Poly Poly::divide_exact(const Poly& b) const {
  auto [q, r] = divmod(*this, b);
  if (!r.is_zero()) throw error("polynomial division not exact");
  return q;
}

Poly Poly::gcd(Poly a, Poly b) {
  while (!b.is_zero()) {
    Poly r = divmod(a, b).second;
    a = std::move(b);
    b = std::move(r);
  }
  return a.is_zero() ? a : a.monic();
}

Poly Poly::monic() const {
  if (is_zero()) throw error("monic of zero polynomial");
  return times(cfg_->inv(leading()));
}

SparsePoly Poly::frobenius(int n) const {
  SparsePoly r(cfg_);
  i64 qn = checked_pow(cfg_->q(), n);
  for (size_t i = 0; i < c_.size(); ++i)
    if (!c_[i].is_zero()) r.add_term(checked_mul(static_cast<i64>(i), qn), c_[i]);
  return r;
}

Fq Poly::eval(Fq x) const {
  const FieldConfig& F = *cfg_;
  Fq r = F.zero();
  for (size_t i = c_.size(); i-- > 0;) r = F.add(F.mul(r, x), c_[i]);
  return r;
}

SparsePoly SparsePoly::from_poly(const Poly& p) {
  SparsePoly r(p.field());
  for (i64 i = 0; i <= p.deg(); ++i)
    if (!p.coeff(i).is_zero()) r.t_[i] = p.coeff(i);
  return r;
}

SparsePoly SparsePoly::monomial(FieldPtr cfg, Fq c, i64 n) {
  SparsePoly r(std::move(cfg));
  if (!c.is_zero()) r.t_[n] = c;
  return r;
}

SparsePoly SparsePoly::one(FieldPtr cfg) { return monomial(std::move(cfg), Fq{1}, 0); }

void SparsePoly::add_term(i64 exp, Fq c) {
  if (c.is_zero()) return;
  auto it = t_.find(exp);
  if (it == t_.end()) {
    t_[exp] = c;
  } else {
    it->second = cfg_->add(it->second, c);
    if (it->second.is_zero()) t_.erase(it);
  }
}

SparsePoly SparsePoly::operator+(const SparsePoly& o) const {
  SparsePoly r = *this;
  for (const auto& [e, c] : o.t_) r.add_term(e, c);
  return r;
}

SparsePoly SparsePoly::operator-(const SparsePoly& o) const {
  SparsePoly r = *this;
  for (const auto& [e, c] : o.t_) r.add_term(e, cfg_->neg(c));
  return r;
}

SparsePoly SparsePoly::operator*(const SparsePoly& o) const {
  SparsePoly r(cfg_ ? cfg_ : o.cfg_);
  for (const auto& [ea, ca] : t_)
    for (const auto& [eb, cb] : o.t_)
      r.add_term(checked_add(ea, eb), cfg_->mul(ca, cb));
  return r;
}

SparsePoly SparsePoly::times(Fq c) const {
  SparsePoly r(cfg_);
  if (c.is_zero()) return r;
  for (const auto& [e, x] : t_) r.t_[e] = cfg_->mul(x, c);
  return r;
}

SparsePoly SparsePoly::times_int(i64 n) const { return times(cfg_->from_int(n)); }

SparsePoly SparsePoly::frobenius(int n) const {
  SparsePoly r(cfg_);
  i64 qn = checked_pow(cfg_->q(), n);
  for (const auto& [e, c] : t_) r.t_[checked_mul(e, qn)] = c;
  return r;
}

SparsePoly SparsePoly::divide_exact(const Poly& den) const {
  if (den.is_zero()) throw error("division by zero polynomial");
  const FieldConfig& F = *cfg_;
  i64 dd = den.deg();
  Fq linv = F.inv(den.leading());
  SparsePoly rem = *this, quot(cfg_);
  size_t steps = 0;
  while (!rem.t_.empty()) {
    auto top = *rem.t_.rbegin();
    if (top.first < dd) throw error("not divisible");
    i64 sh = top.first - dd;
    Fq qc = F.mul(top.second, linv);
    quot.t_[sh] = qc;
    for (i64 i = 0; i <= dd; ++i) {
      Fq dc = den.coeff(i);
      if (!dc.is_zero()) rem.add_term(sh + i, F.neg(F.mul(qc, dc)));
    }
    if (++steps > (1u << 22)) throw error("sparse division runaway");
  }
  return quot;
}

Poly SparsePoly::to_poly(i64 max_deg) const {
  Poly r = Poly::zero(cfg_);
  if (t_.empty()) return r;
  i64 d = deg();
  if (d > max_deg) throw error("sparse polynomial too large for dense conversion");
  std::vector<Fq> c(static_cast<size_t>(d) + 1, cfg_->zero());
  for (const auto& [e, x] : t_) {
    if (e < 0) throw error("negative exponent in dense conversion");
    c[static_cast<size_t>(e)] = x;
  }
  return Poly(cfg_, std::move(c));
}

RationalFunction::RationalFunction(Poly num) : num_(std::move(num)), den_(Poly::one(num_.field())) {}

RationalFunction::RationalFunction(Poly num, Poly den) : num_(std::move(num)), den_(std::move(den)) {
  normalize();
}

void RationalFunction::normalize() {
  if (den_.is_zero()) throw error("zero denominator");
  if (num_.is_zero()) {
    den_ = Poly::one(num_.field());
    return;
  }
  Poly g = Poly::gcd(num_, den_);
  if (g.deg() > 0) {
    num_ = num_.divide_exact(g);
    den_ = den_.divide_exact(g);
  }
  Fq lc = den_.leading();
  if (!lc.is_one()) {
    Fq li = num_.field()->inv(lc);
    num_ = num_.times(li);
    den_ = den_.times(li);
  }
}

i64 RationalFunction::deg() const {
  if (num_.is_zero()) return kNegInfDeg;
  return num_.deg() - den_.deg();
}

RationalFunction RationalFunction::operator+(const RationalFunction& o) const {
  return RationalFunction(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

RationalFunction RationalFunction::operator-() const {
  RationalFunction r = *this;
  r.num_ = -r.num_;
  return r;
}

RationalFunction RationalFunction::operator-(const RationalFunction& o) const { return *this + (-o); }

RationalFunction RationalFunction::operator*(const RationalFunction& o) const {
  return RationalFunction(num_ * o.num_, den_ * o.den_);
}

RationalFunction RationalFunction::inv() const {
  if (is_zero()) throw error("inverse of zero rational function");
  return RationalFunction(den_, num_);
}

RationalFunction RationalFunction::operator/(const RationalFunction& o) const { return *this * o.inv(); }

SparseRat SparseRat::from_sparse(SparsePoly n) {
  SparseRat r;
  r.den = Poly::one(n.field());
  r.num = std::move(n);
  return r;
}

SparseRat SparseRat::operator+(const SparseRat& o) const {
  SparseRat r;
  if (den == o.den) {
    r.num = num + o.num;
    r.den = den;
    return r;
  }
  r.num = num * SparsePoly::from_poly(o.den) + o.num * SparsePoly::from_poly(den);
  r.den = den * o.den;
  return r;
}

SparseRat SparseRat::operator*(const SparseRat& o) const {
  SparseRat r;
  r.num = num * o.num;
  r.den = den * o.den;
  return r;
}

SparseRat SparseRat::times_int(i64 n) const {
  SparseRat r = *this;
  r.num = r.num.times_int(n);
  return r;
}

}  // namespace fqz
