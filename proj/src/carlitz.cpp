#include "fqzeta/carlitz.hpp"

#include <algorithm>

namespace fqz {

namespace {
constexpr i64 kExactDegreeLimit = 1 << 21;
}

Poly CarlitzCache::big_d(int i) {
  if (i < 0) throw error("D_i needs i >= 0");
  {
    std::shared_lock lk(mu_);
    auto it = d_cache_.find(i);
    if (it != d_cache_.end()) return it->second;
  }
  if (i > 0 && big_d_deg(i) > kExactDegreeLimit) throw error("D_i too large for exact expansion");
  // D_i = prod_{j=0}^{i-1} (theta^(q^i) - theta^(q^j))
  Poly r = Poly::one(cfg_);
  i64 qi = checked_pow(cfg_->q(), i);
  for (int j = 0; j < i; ++j) {
    i64 qj = checked_pow(cfg_->q(), j);
    Poly f = Poly::monomial(cfg_, cfg_->one(), qi) - Poly::monomial(cfg_, cfg_->one(), qj);
    r = r * f;
  }
  std::unique_lock lk(mu_);
  d_cache_.emplace(i, r);
  return r;
}

Poly CarlitzCache::little_l(int i) {
  if (i < 0) throw error("L_i needs i >= 0");
  {
    std::shared_lock lk(mu_);
    auto it = l_cache_.find(i);
    if (it != l_cache_.end()) return it->second;
  }
  if (i > 0 && little_l_deg(i) > kExactDegreeLimit) throw error("L_i too large for exact expansion");
  Poly r = Poly::one(cfg_);
  for (int j = 1; j <= i; ++j) {
    i64 qj = checked_pow(cfg_->q(), j);
    Poly f = Poly::theta(cfg_) - Poly::monomial(cfg_, cfg_->one(), qj);
    r = r * f;
  }
  std::unique_lock lk(mu_);
  l_cache_.emplace(i, r);
  return r;
}

i64 CarlitzCache::little_l_deg(int i) const {
  i64 d = 0, qm = 1;
  for (int m = 1; m <= i; ++m) {
    qm = checked_mul(qm, cfg_->q());
    d = checked_add(d, qm);
  }
  return d;
}

i64 CarlitzCache::big_d_deg(int i) const { return checked_mul(i, checked_pow(cfg_->q(), i)); }

Poly CarlitzCache::carlitz_factorial(i64 n) {
  if (n < 0) throw error("Carlitz factorial needs n >= 0");
  if (n == 0) return Poly::one(cfg_);
  {
    std::shared_lock lk(mu_);
    auto it = gamma_cache_.find(n);
    if (it != gamma_cache_.end()) return it->second;
  }
  // Gamma_{m+1} = prod_i D_i^{m_i} with m = n-1 = sum m_i q^i the base-q digits
  i64 m = n - 1;
  Poly r = Poly::one(cfg_);
  for (int i = 0; m > 0; ++i, m /= cfg_->q()) {
    i64 digit = m % cfg_->q();
    if (digit > 0) r = r * big_d(i).pow(digit);
  }
  std::unique_lock lk(mu_);
  gamma_cache_.emplace(n, r);
  return r;
}

LaurentNumber CarlitzCache::little_l_window(int i, i64 width) {
  if (i == 0) return LaurentNumber::constant(cfg_, cfg_->one());
  if (width < 1) width = 1;
  {
    std::shared_lock lk(mu_);
    auto it = l_window_cache_.find({i, width});
    if (it != l_window_cache_.end()) return it->second;
  }
  LaurentNumber r = LaurentNumber::constant(cfg_, cfg_->one());
  i64 partial_deg = 0;
  for (int j = 1; j <= i; ++j) {
    i64 qj = checked_pow(cfg_->q(), j);
    LaurentNumber f = LaurentNumber::monomial(cfg_, cfg_->neg(cfg_->one()), qj) +
                      LaurentNumber::monomial(cfg_, cfg_->one(), 1);
    r = r * f;
    partial_deg = checked_add(partial_deg, qj);
    r = r.truncated(partial_deg - width);
  }
  std::unique_lock lk(mu_);
  l_window_cache_.emplace(std::make_pair(i, width), r);
  return r;
}

LaurentNumber CarlitzCache::little_l_pow_window(int i, i64 s, i64 width) {
  if (s < 0) throw error("negative power of L_i");
  LaurentNumber r = LaurentNumber::constant(cfg_, cfg_->one());
  if (i == 0 || s == 0) return r;
  LaurentNumber lw = little_l_window(i, width + 8);
  i64 lam = little_l_deg(i);
  for (i64 k = 1; k <= s; ++k)
    r = (r * lw).truncated(checked_add(checked_mul(k, lam), -width));
  return r;
}

LaurentNumber CarlitzCache::little_l_inv_pow(int i, i64 s, i64 prec) {
  if (s < 1) throw error("little_l_inv_pow needs s >= 1");
  if (i == 0) return LaurentNumber::constant(cfg_, cfg_->one());
  {
    std::shared_lock lk(mu_);
    auto it = l_inv_cache_.find({i, s});
    if (it != l_inv_cache_.end() && it->second.err_deg() <= prec) return it->second.truncated(prec);
  }
  i64 deg_ls;
  try {
    deg_ls = checked_mul(s, little_l_deg(i));
  } catch (const error&) {
    return LaurentNumber::zero_to(cfg_, prec);  // far below any usable precision
  }
  if (-deg_ls < prec) return LaurentNumber::zero_to(cfg_, prec);
  i64 width = -checked_add(deg_ls, prec) + 16;
  LaurentNumber ls = little_l_pow_window(i, s, width);
  LaurentNumber r = ls.inv(prec).truncated(prec);
  std::unique_lock lk(mu_);
  l_inv_cache_[{i, s}] = r;
  return r;
}

std::pair<TSeries, GradedNumber> CarlitzCache::omega_series(int t_trunc, i64 err) {
  if (err >= 0) throw error("omega_series needs err < 0");
  // I with q^I > |err| + t_trunc*q
  i64 target = checked_add(-err, checked_mul(t_trunc, cfg_->q()));
  int I = 1;
  while (checked_pow(cfg_->q(), I) <= target) ++I;
  TSeries prod = TSeries::one(cfg_, t_trunc);
  for (int i = 1; i <= I; ++i) {
    i64 qi = checked_pow(cfg_->q(), i);
    TSeries f(cfg_, t_trunc);
    f.set_coeff(0, LaurentNumber::constant(cfg_, cfg_->one()));
    if (t_trunc >= 1) f.set_coeff(1, LaurentNumber::monomial(cfg_, cfg_->neg(cfg_->one()), -qi));
    prod = (prod * f).truncated_coeffs(err);
  }
  return {prod, GradedNumber::theta_tilde_power(cfg_, -cfg_->q())};
}

LaurentNumber CarlitzCache::omega_scalar_product(i64 err) {
  {
    std::shared_lock lk(mu_);
    if (!omega_scalar_cache_.empty() && omega_scalar_cache_.begin()->first <= err)
      return omega_scalar_cache_.begin()->second.truncated(err);
  }
  // prod_{i>=1} (1 - theta^(1-q^i)), truncated once q^i - 1 > |err|
  LaurentNumber r = LaurentNumber::constant(cfg_, cfg_->one());
  for (int i = 1;; ++i) {
    i64 qi = checked_pow(cfg_->q(), i);
    if (qi - 1 > -err) break;
    LaurentNumber f = LaurentNumber::constant(cfg_, cfg_->one()) +
                      LaurentNumber::monomial(cfg_, cfg_->neg(cfg_->one()), 1 - qi);
    r = (r * f).truncated(err);
  }
  r = r.truncated(err);
  std::unique_lock lk(mu_);
  omega_scalar_cache_.clear();
  omega_scalar_cache_.emplace(err, r);
  return r;
}

GradedNumber CarlitzCache::omega_at_theta(i64 err) {
  if (err >= 0) throw error("omega_at_theta needs err < 0");
  return GradedNumber(omega_scalar_product(err), -cfg_->q());
}

GradedNumber CarlitzCache::pi_tilde(i64 err) {
  if (err >= 0) throw error("pi_tilde needs err < 0");
  // pi_tilde = theta_tilde^q * inv(product); |pi_tilde| = q^(q/(q-1)) so the
  // unit window tops out near q/(q-1) + carry bookkeeping.
  i64 work = checked_add(err, -8);
  LaurentNumber inv_prod = omega_scalar_product(work).inv(work);
  return GradedNumber(inv_prod, cfg_->q()).truncated(err);
}

}  // namespace fqz
