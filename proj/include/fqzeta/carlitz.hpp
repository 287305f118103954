#pragma once

#include <map>
#include <mutex>
#include <shared_mutex>

#include "fqzeta/graded.hpp"
#include "fqzeta/tseries.hpp"

namespace fqz {

// Memoized special constants of Carlitz theory for one field:
// D_i = prod_{j<i} (theta^(q^i) - theta^(q^j)),
// L_i = prod_{j=1..i} (theta - theta^(q^j))   (script-L in the classical
// notation; L_0 = 1), the Carlitz factorial built from base-q digits, the
// function Omega as a truncated t-series with its graded prefactor, and
// the period pi_tilde = 1/Omega(theta).
//
// Concurrent readers share the tables; fills take the exclusive lock.
// Cached truncations are monotone: a deeper request never changes
// coefficients previously served.
class CarlitzCache {
 public:
  explicit CarlitzCache(FieldPtr cfg) : cfg_(std::move(cfg)) {}

  const FieldPtr& field() const { return cfg_; }

  // Exact values (degree grows like i*q^i; guarded against blowup).
  Poly big_d(int i);
  Poly little_l(int i);
  // Gamma_n for n >= 0 (Gamma_0 := 1 by convention, Gamma_1 = 1).
  Poly carlitz_factorial(i64 n);

  // deg L_i = q + q^2 + ... + q^i, overflow-checked.
  i64 little_l_deg(int i) const;
  // deg D_i = i * q^i.
  i64 big_d_deg(int i) const;

  // L_i embedded in k_inf keeping `width` top coefficients
  // (err_deg = deg - width; exact when width covers the whole polynomial).
  LaurentNumber little_l_window(int i, i64 width);
  // L_i^s keeping `width` top coefficients; intermediate powers are
  // truncated relative to their own degree.
  LaurentNumber little_l_pow_window(int i, i64 s, i64 width);
  // 1/L_i^s at precision prec (zero within precision when s*deg L_i > -prec).
  LaurentNumber little_l_inv_pow(int i, i64 s, i64 prec);

  // k_inf part of Omega: prod_{i=1..I} (1 - t/theta^(q^i)) with I chosen
  // so that q^I > |err| + t_trunc*q, which keeps every omitted factor's
  // perturbation of the retained coefficients below err.  The graded
  // prefactor theta_tilde^(-q) is returned separately.
  std::pair<TSeries, GradedNumber> omega_series(int t_trunc, i64 err);

  // Omega(theta) = 1/pi_tilde via the scalar product
  // theta_tilde^(-q) * prod_{i>=1} (1 - theta^(1-q^i)).
  GradedNumber omega_at_theta(i64 err);
  // pi_tilde = theta_tilde^q / prod_{i>=1} (1 - theta^(1-q^i)); the
  // product is truncated once q^i - 1 > |err|.
  GradedNumber pi_tilde(i64 err);

  bool is_even_weight(i64 w) const { return w % (cfg_->q() - 1) == 0; }

 private:
  LaurentNumber omega_scalar_product(i64 err);

  FieldPtr cfg_;
  std::shared_mutex mu_;
  std::map<int, Poly> d_cache_, l_cache_;
  std::map<i64, Poly> gamma_cache_;
  std::map<std::pair<int, i64>, LaurentNumber> l_window_cache_;
  std::map<std::pair<int, i64>, LaurentNumber> l_inv_cache_;  // (i, s) -> deepest computed
  std::map<i64, LaurentNumber> omega_scalar_cache_;           // keyed by err, deepest wins
};

}  // namespace fqz
