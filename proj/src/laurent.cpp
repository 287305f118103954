#include "fqzeta/laurent.hpp"

#include <algorithm>
#include <vector>

namespace fqz {

namespace {
// max with kExact acting as -infinity
i64 err_max(i64 a, i64 b) {
  if (a == kExact) return b;
  if (b == kExact) return a;
  return std::max(a, b);
}
i64 err_shift(i64 e, i64 s) { return e == kExact ? kExact : checked_add(e, s); }
constexpr i64 kDenseLimit = 1 << 22;
}  // namespace

void LaurentNumber::set_err_and_clip(i64 err) {
  err_ = err;
  if (err_ == kExact) return;
  while (!w_.empty() && w_.begin()->first < err_) w_.erase(w_.begin());
}

LaurentNumber LaurentNumber::zero_to(FieldPtr cfg, i64 err) {
  LaurentNumber r(std::move(cfg));
  r.err_ = err;
  return r;
}

LaurentNumber LaurentNumber::monomial(FieldPtr cfg, Fq c, i64 exp) {
  LaurentNumber r(std::move(cfg));
  if (!c.is_zero()) r.w_[exp] = c;
  return r;
}

LaurentNumber LaurentNumber::from_poly(const Poly& p) {
  LaurentNumber r(p.field());
  for (i64 i = 0; i <= p.deg(); ++i)
    if (!p.coeff(i).is_zero()) r.w_[i] = p.coeff(i);
  return r;
}

LaurentNumber LaurentNumber::from_sparse(const SparsePoly& p) {
  LaurentNumber r(p.field());
  r.w_ = p.terms();
  return r;
}

LaurentNumber LaurentNumber::from_rational(const RationalFunction& r, i64 prec) {
  if (r.is_zero()) return exact_zero(r.field());
  if (r.is_poly()) return from_poly(r.num());
  LaurentNumber num = from_poly(r.num());
  i64 inv_prec = checked_add(prec, -std::max<i64>(r.num().deg(), 0) - 1);
  LaurentNumber dinv = from_poly(r.den()).inv(inv_prec);
  return num * dinv;
}

std::optional<i64> LaurentNumber::deg() const {
  if (w_.empty()) return std::nullopt;
  i64 top = w_.rbegin()->first;
  if (!is_exact() && top <= err_) return std::nullopt;
  return top;
}

std::optional<Fq> LaurentNumber::leading() const {
  auto d = deg();
  if (!d) return std::nullopt;
  return w_.rbegin()->second;
}

std::optional<Fq> LaurentNumber::coeff(i64 e) const {
  if (!is_exact() && e < err_) return std::nullopt;
  auto it = w_.find(e);
  return it == w_.end() ? Fq{0} : it->second;
}

LaurentNumber LaurentNumber::operator+(const LaurentNumber& o) const {
  const FieldPtr& cfg = cfg_ ? cfg_ : o.cfg_;
  LaurentNumber r(cfg);
  r.w_ = w_;
  for (const auto& [e, c] : o.w_) {
    auto it = r.w_.find(e);
    if (it == r.w_.end()) {
      r.w_[e] = c;
    } else {
      it->second = cfg->add(it->second, c);
      if (it->second.is_zero()) r.w_.erase(it);
    }
  }
  r.set_err_and_clip(err_max(err_, o.err_));
  return r;
}

LaurentNumber LaurentNumber::operator-() const {
  LaurentNumber r = *this;
  for (auto& [e, c] : r.w_) c = cfg_->neg(c);
  return r;
}

LaurentNumber LaurentNumber::operator-(const LaurentNumber& o) const { return *this + (-o); }

LaurentNumber LaurentNumber::times(Fq c) const {
  LaurentNumber r(cfg_);
  r.err_ = err_;
  if (c.is_zero()) return r;
  for (const auto& [e, x] : w_) r.w_[e] = cfg_->mul(x, c);
  return r;
}

LaurentNumber LaurentNumber::shifted(Fq c, i64 n) const {
  LaurentNumber r(cfg_);
  r.err_ = err_shift(err_, n);
  if (c.is_zero()) return r;
  for (const auto& [e, x] : w_) r.w_[checked_add(e, n)] = cfg_->mul(x, c);
  return r;
}

LaurentNumber LaurentNumber::operator*(const LaurentNumber& o) const {
  const FieldPtr& cfg = cfg_ ? cfg_ : o.cfg_;
  const FieldConfig& F = *cfg;
  // True zero annihilates regardless of the other factor's precision.
  if (is_exact_zero() || o.is_exact_zero()) return exact_zero(cfg);

  auto hi_eff = [](const LaurentNumber& x) {
    return x.w_.empty() ? x.err_ - 1 : x.w_.rbegin()->first;
  };
  i64 res_err = kExact;
  if (err_ != kExact) res_err = err_max(res_err, checked_add(err_, hi_eff(o)));
  if (o.err_ != kExact) res_err = err_max(res_err, checked_add(o.err_, hi_eff(*this)));
  if (err_ != kExact && o.err_ != kExact) res_err = err_max(res_err, checked_add(err_, o.err_));

  LaurentNumber r(cfg);
  r.err_ = res_err;
  if (w_.empty() || o.w_.empty()) return r;

  i64 top = checked_add(w_.rbegin()->first, o.w_.rbegin()->first);
  i64 floor = (res_err == kExact) ? checked_add(w_.begin()->first, o.w_.begin()->first) : res_err;
  if (top < floor) return r;

  if (top - floor + 1 <= kDenseLimit) {
    std::vector<Fq> acc(static_cast<size_t>(top - floor + 1), F.zero());
    for (const auto& [ea, ca] : w_) {
      // only partners with ea + eb >= floor contribute
      auto it = o.w_.lower_bound(floor - ea);
      for (; it != o.w_.end(); ++it) {
        i64 e = ea + it->first;
        acc[static_cast<size_t>(e - floor)] = F.add(acc[static_cast<size_t>(e - floor)], F.mul(ca, it->second));
      }
    }
    for (i64 e = floor; e <= top; ++e) {
      Fq c = acc[static_cast<size_t>(e - floor)];
      if (!c.is_zero()) r.w_[e] = c;
    }
  } else {
    for (const auto& [ea, ca] : w_) {
      auto it = o.w_.lower_bound(floor - ea);
      for (; it != o.w_.end(); ++it) {
        i64 e = checked_add(ea, it->first);
        Fq prod = F.mul(ca, it->second);
        auto jt = r.w_.find(e);
        if (jt == r.w_.end()) {
          if (!prod.is_zero()) r.w_[e] = prod;
        } else {
          jt->second = F.add(jt->second, prod);
          if (jt->second.is_zero()) r.w_.erase(jt);
        }
      }
    }
  }
  r.set_err_and_clip(res_err);
  return r;
}

LaurentNumber LaurentNumber::pow(i64 n, i64 prec) const {
  if (n < 0) throw error("negative power of LaurentNumber");
  LaurentNumber r = monomial(cfg_, cfg_->one(), 0);
  LaurentNumber base = *this;
  while (n > 0) {
    if (n & 1) {
      r = r * base;
      if (prec != kExact) r = r.truncated(prec);
    }
    if (n >>= 1) {
      base = base * base;
      if (prec != kExact) base = base.truncated(prec);
    }
  }
  return r;
}

LaurentNumber LaurentNumber::inv(i64 prec) const {
  if (w_.empty()) throw error("indeterminate leading term");
  const FieldConfig& F = *cfg_;
  i64 D = w_.rbegin()->first;
  Fq lead = w_.rbegin()->second;
  if (w_.size() == 1 && is_exact()) {
    // exact monomial: exact inverse
    return monomial(cfg_, F.inv(lead), -D);
  }
  i64 res_err = prec;
  if (!is_exact()) res_err = std::max(prec, checked_add(err_, -2 * D));
  // coefficient recurrence for b = 1/a: conv(a, b) = 1
  Fq linv = F.inv(lead);
  std::map<i64, Fq> b;
  b[-D] = linv;
  for (i64 t = -D - 1; t >= res_err; --t) {
    // coefficient of theta^(t+D) in a*b must vanish
    Fq s = F.zero();
    for (const auto& [k, ak] : w_) {
      if (k == D) continue;
      auto it = b.find(t + D - k);
      if (it != b.end()) s = F.add(s, F.mul(ak, it->second));
    }
    Fq bt = F.neg(F.mul(linv, s));
    if (!bt.is_zero()) b[t] = bt;
  }
  LaurentNumber r(cfg_);
  r.w_ = std::move(b);
  r.set_err_and_clip(res_err);
  return r;
}

LaurentNumber LaurentNumber::frobenius_power(int n) const {
  if (n < 0) throw error("negative twist on LaurentNumber");
  if (n == 0) return *this;
  i64 qn = checked_pow(cfg_->q(), n);
  LaurentNumber r(cfg_);
  r.err_ = err_ == kExact ? kExact : checked_mul(err_, qn);
  for (const auto& [e, c] : w_) r.w_[checked_mul(e, qn)] = c;
  return r;
}

LaurentNumber LaurentNumber::truncated(i64 err) const {
  LaurentNumber r = *this;
  r.set_err_and_clip(err_max(err_, err));
  return r;
}

Ternary LaurentNumber::equal(const LaurentNumber& a, const LaurentNumber& b) {
  LaurentNumber d = a - b;
  if (!d.zero_within_precision()) return Ternary::no;
  return d.is_exact() ? Ternary::yes : Ternary::unknown;
}

}  // namespace fqz
