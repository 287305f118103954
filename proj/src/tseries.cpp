#include "fqzeta/tseries.hpp"

#include <algorithm>

namespace fqz {

TSeries::TSeries(FieldPtr cfg, int t_trunc) : cfg_(std::move(cfg)) {
  if (t_trunc < 0) throw error("negative t truncation");
  c_.assign(static_cast<size_t>(t_trunc) + 1, LaurentNumber::exact_zero(cfg_));
}

TSeries::TSeries(FieldPtr cfg, std::vector<LaurentNumber> coeffs)
    : cfg_(std::move(cfg)), c_(std::move(coeffs)) {
  if (c_.empty()) throw error("empty TSeries");
}

TSeries TSeries::constant(FieldPtr cfg, LaurentNumber c, int t_trunc) {
  TSeries r(cfg, t_trunc);
  r.c_[0] = std::move(c);
  return r;
}

TSeries TSeries::one(FieldPtr cfg, int t_trunc) {
  return constant(cfg, LaurentNumber::constant(cfg, cfg->one()), t_trunc);
}

const LaurentNumber& TSeries::coeff(int m) const {
  if (m < 0 || m > t_trunc()) throw error("t exponent out of range");
  return c_[static_cast<size_t>(m)];
}

void TSeries::set_coeff(int m, LaurentNumber c) {
  if (m < 0 || m > t_trunc()) throw error("t exponent out of range");
  c_[static_cast<size_t>(m)] = std::move(c);
}

TSeries TSeries::operator+(const TSeries& o) const {
  int t = std::min(t_trunc(), o.t_trunc());
  TSeries r(cfg_, t);
  for (int m = 0; m <= t; ++m) r.c_[m] = c_[m] + o.c_[m];
  return r;
}

TSeries TSeries::operator-() const {
  TSeries r = *this;
  for (auto& x : r.c_) x = -x;
  return r;
}

TSeries TSeries::operator-(const TSeries& o) const { return *this + (-o); }

TSeries TSeries::operator*(const TSeries& o) const {
  int t = std::min(t_trunc(), o.t_trunc());
  TSeries r(cfg_, t);
  for (int m = 0; m <= t; ++m) {
    LaurentNumber acc = LaurentNumber::exact_zero(cfg_);
    for (int i = 0; i <= m; ++i) {
      int j = m - i;
      if (i > t_trunc() || j > o.t_trunc()) continue;
      acc = acc + c_[i] * o.c_[j];
    }
    r.c_[m] = std::move(acc);
  }
  return r;
}

TSeries TSeries::times(const LaurentNumber& s) const {
  TSeries r = *this;
  for (auto& x : r.c_) x = x * s;
  return r;
}

TSeries TSeries::pow(i64 n) const {
  if (n < 0) throw error("negative TSeries power");
  TSeries r = TSeries::one(cfg_, t_trunc());
  TSeries base = *this;
  while (n > 0) {
    if (n & 1) r = r * base;
    if (n >>= 1) base = base * base;
  }
  return r;
}

TSeries TSeries::truncated_coeffs(i64 err) const {
  TSeries r = *this;
  for (auto& x : r.c_) x = x.truncated(err);
  return r;
}

TSeries TSeries::with_t_trunc(int t) const {
  if (t > t_trunc()) throw error("cannot extend t truncation");
  TSeries r(cfg_, t);
  for (int m = 0; m <= t; ++m) r.c_[m] = c_[m];
  return r;
}

TSeries TSeries::twist(int n) const {
  TSeries r = *this;
  if (n == 0) return r;
  if (n > 0) {
    for (auto& x : r.c_) x = x.frobenius_power(n);
    return r;
  }
  if (n != -1) throw error("only single inverse twist supported");
  i64 q = cfg_->q();
  for (auto& x : r.c_) {
    if (!x.is_exact()) throw error("not a q-th power");
    LaurentNumber y = LaurentNumber::exact_zero(cfg_);
    for (const auto& [e, c] : x.window()) {
      if (e % q != 0) throw error("not a q-th power");
      // coefficients in F_q are fixed by the Frobenius
      y = y + LaurentNumber::monomial(cfg_, c, e / q);
    }
    x = std::move(y);
  }
  return r;
}

LaurentNumber TSeries::eval_theta_power(int N, i64 tail_err) const {
  i64 qN = checked_pow(cfg_->q(), N);
  LaurentNumber acc = (tail_err == kExact) ? LaurentNumber::exact_zero(cfg_)
                                           : LaurentNumber::zero_to(cfg_, tail_err);
  for (int m = 0; m <= t_trunc(); ++m) {
    acc = acc + c_[m].shifted(cfg_->one(), checked_mul(static_cast<i64>(m), qN));
  }
  return acc;
}

bool TSeries::zero_within_precision() const {
  return std::all_of(c_.begin(), c_.end(),
                     [](const LaurentNumber& x) { return x.zero_within_precision(); });
}

TPoly::TPoly(FieldPtr cfg, std::vector<Poly> coeffs) : cfg_(std::move(cfg)), c_(std::move(coeffs)) {
  trim();
}

void TPoly::trim() {
  while (!c_.empty() && c_.back().is_zero()) c_.pop_back();
}

TPoly TPoly::one(FieldPtr cfg) {
  TPoly r(cfg);
  r.c_ = {Poly::one(cfg)};
  return r;
}

TPoly TPoly::constant(Poly c) {
  TPoly r(c.field());
  if (!c.is_zero()) r.c_ = {std::move(c)};
  return r;
}

TPoly TPoly::t_minus(Poly c) {
  TPoly r(c.field());
  r.c_ = {-c, Poly::one(r.cfg_)};
  return r;
}

bool TPoly::is_one() const { return c_.size() == 1 && c_[0].is_one(); }

Poly TPoly::coeff(int m) const {
  if (m < 0 || m >= static_cast<int>(c_.size())) return Poly::zero(cfg_);
  return c_[static_cast<size_t>(m)];
}

i64 TPoly::max_coeff_deg() const {
  i64 d = kNegInfDeg;
  for (const Poly& p : c_)
    if (!p.is_zero()) d = std::max(d, p.deg());
  return d;
}

TPoly TPoly::operator+(const TPoly& o) const {
  TPoly r(cfg_);
  r.c_.resize(std::max(c_.size(), o.c_.size()), Poly::zero(cfg_));
  for (size_t m = 0; m < r.c_.size(); ++m) {
    Poly a = m < c_.size() ? c_[m] : Poly::zero(cfg_);
    Poly b = m < o.c_.size() ? o.c_[m] : Poly::zero(cfg_);
    r.c_[m] = a + b;
  }
  r.trim();
  return r;
}

TPoly TPoly::operator-(const TPoly& o) const {
  TPoly neg = o;
  for (Poly& p : neg.c_) p = -p;
  return *this + neg;
}

TPoly TPoly::operator*(const TPoly& o) const {
  if (is_zero() || o.is_zero()) return TPoly::zero(cfg_);
  TPoly r(cfg_);
  r.c_.assign(c_.size() + o.c_.size() - 1, Poly::zero(cfg_));
  for (size_t i = 0; i < c_.size(); ++i)
    for (size_t j = 0; j < o.c_.size(); ++j)
      r.c_[i + j] = r.c_[i + j] + c_[i] * o.c_[j];
  r.trim();
  return r;
}

TPoly TPoly::pow(i64 n) const {
  if (n < 0) throw error("negative TPoly power");
  TPoly r = TPoly::one(cfg_), base = *this;
  while (n > 0) {
    if (n & 1) r = r * base;
    if (n >>= 1) base = base * base;
  }
  return r;
}

TPoly TPoly::twist(int n) const {
  if (n < 0) throw error("negative twist on TPoly");
  if (n == 0) return *this;
  TPoly r(cfg_);
  r.c_.reserve(c_.size());
  for (const Poly& p : c_) r.c_.push_back(p.frobenius(n).to_poly());
  r.trim();
  return r;
}

Poly TPoly::eval_poly(const Poly& at) const {
  Poly r = Poly::zero(cfg_);
  for (size_t m = c_.size(); m-- > 0;) r = r * at + c_[m];
  return r;
}

SparsePoly TPoly::eval_theta_power_sparse(int N) const {
  // coefficients stay in A; t = theta^(q^N) turns t^m into theta^(m q^N)
  i64 qN = checked_pow(cfg_->q(), N);
  SparsePoly r(cfg_);
  for (size_t m = 0; m < c_.size(); ++m) {
    SparsePoly term = SparsePoly::from_poly(c_[m]);
    for (const auto& [e, cf] : term.terms()) r.add_term(checked_add(e, checked_mul((i64)m, qN)), cf);
  }
  return r;
}

SparsePoly TPoly::twisted_eval_theta(int d) const {
  i64 qd = checked_pow(cfg_->q(), d);
  SparsePoly out(cfg_);
  for (int j = 0; j < static_cast<int>(c_.size()); ++j) {
    const Poly& c = c_[static_cast<size_t>(j)];
    for (i64 m = 0; m <= c.deg(); ++m) {
      if (c.coeff(m).is_zero()) continue;
      out.add_term(checked_add(checked_mul(m, qd), j), c.coeff(m));
    }
  }
  return out;
}

TSeries TPoly::to_series(int t_trunc) const {
  TSeries r(cfg_, t_trunc);
  for (int m = 0; m <= t_trunc && m < static_cast<int>(c_.size()); ++m)
    r.set_coeff(m, LaurentNumber::from_poly(c_[m]));
  return r;
}

}  // namespace fqz
