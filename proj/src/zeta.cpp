#include "fqzeta/zeta.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <thread>

namespace fqz {

std::vector<Composition> compositions_of_weight(i64 weight, int max_depth) {
  std::vector<Composition> out;
  std::vector<int> cur;
  std::function<void(i64)> rec = [&](i64 rest) {
    if (rest == 0) {
      if (!cur.empty()) out.emplace_back(cur);
      return;
    }
    if (static_cast<int>(cur.size()) >= max_depth) return;
    for (i64 s = 1; s <= rest; ++s) {
      cur.push_back(static_cast<int>(s));
      rec(rest - s);
      cur.pop_back();
    }
  };
  rec(weight);
  std::sort(out.begin(), out.end());
  return out;
}

i64 mzv_weight(const Composition& c) { return c.weight(); }
int mzv_depth(const Composition& c) { return c.depth(); }

PowerSums::PowerSums(std::shared_ptr<CarlitzCache> carlitz) : carlitz_(std::move(carlitz)) {}

i64 PowerSums::power_sum_deg_bound(int s, int d) const {
  i64 q = carlitz_->field()->q();
  return -(static_cast<i64>(s) * d + (q - 1) * d * (d + 1) / 2);
}

LaurentNumber PowerSums::power_sum_bruteforce(int s, int d, i64 err, int threads) {
  const FieldPtr& cfg = carlitz_->field();
  if (s < 1 || d < 0) throw error("power_sum needs s >= 1, d >= 0");
  if (d == 0) return LaurentNumber::constant(cfg, cfg->one());
  i64 q = cfg->q();
  i64 count = 1;
  for (int i = 0; i < d; ++i) {
    count = checked_mul(count, q);
    if (count > 10'000'000) throw error("enumeration guard exceeded");
  }
  // working precision: err with slack covering the inner inversions
  i64 work = checked_add(err, -8);
  if (threads < 1) threads = 1;
  threads = std::min<i64>(threads, count);

  auto run = [&](i64 lo, i64 hi) {
    LaurentNumber acc = LaurentNumber::zero_to(cfg, work);
    for (i64 idx = lo; idx < hi; ++idx) {
      std::vector<Fq> coeffs(static_cast<size_t>(d) + 1, cfg->zero());
      i64 v = idx;
      for (int i = 0; i < d; ++i) {
        coeffs[static_cast<size_t>(i)] = Fq{static_cast<uint32_t>(v % q)};
        v /= q;
      }
      coeffs[static_cast<size_t>(d)] = cfg->one();
      Poly a(cfg, std::move(coeffs));
      Poly as = a.pow(s);
      acc = acc + LaurentNumber::from_poly(as).inv(work);
    }
    return acc;
  };

  LaurentNumber total = LaurentNumber::zero_to(cfg, work);
  if (threads == 1) {
    total = run(0, count);
  } else {
    std::vector<LaurentNumber> parts(static_cast<size_t>(threads));
    std::vector<std::thread> pool;
    i64 chunk = (count + threads - 1) / threads;
    for (int t = 0; t < threads; ++t) {
      i64 lo = std::min<i64>(count, t * chunk);
      i64 hi = std::min<i64>(count, lo + chunk);
      pool.emplace_back([&parts, &run, t, lo, hi] { parts[static_cast<size_t>(t)] = run(lo, hi); });
    }
    for (auto& th : pool) th.join();
    for (const auto& p : parts) total = total + p;
  }
  return total.truncated(err);
}

SparseRat PowerSums::power_sum_scaled_exact(int s, int d) {
  const FieldPtr& cfg = carlitz_->field();
  if (s < 1 || d < 0) throw error("power_sum needs s >= 1, d >= 0");
  SparseRat one = SparseRat::from_sparse(SparsePoly::one(cfg));
  if (d == 0) return one;  // only monic of degree 0 is 1, and L_0 = 1
  i64 q = cfg->q();

  // The monic polynomials of degree d are the roots of E_d(X) - D_d with
  // E_d the Carlitz F_q-linear polynomial vanishing on all degrees < d.
  // For the rescaled roots z_a = L_d / a the elementary symmetric
  // functions vanish except at indices q^i:
  //   e_{q^i} = sign * (L+_d / L+_{d-i})^(q^i) / D_i,  i = 0..d,
  // where L+_j = prod_{m<=j} (theta^(q^m) - theta) and the sign exponent
  // is q^i + 1 + d - i + d q^i.  Newton's identities (valid over any
  // commutative ring) then give the power sums of the z_a.
  i64 n_roots_cap = (d >= 40) ? std::numeric_limits<i64>::max() : checked_pow(q, d);

  auto e_hat = [&](int i) -> SparseRat {
    // G_{d,i} = prod_{m=d-i+1..d} (theta^(q^m) - theta), sparse
    SparsePoly g = SparsePoly::one(cfg);
    for (int m = d - i + 1; m <= d; ++m) {
      SparsePoly f = SparsePoly::monomial(cfg, cfg->one(), checked_pow(q, m));
      f.add_term(1, cfg->neg(cfg->one()));
      g = g * f;
    }
    g = g.frobenius(i);
    i64 qi = checked_pow(q, i);
    i64 sign_exp = qi + 1 + d - i + checked_mul(static_cast<i64>(d), qi);
    if (sign_exp % 2 != 0) g = g.times(cfg->neg(cfg->one()));
    SparseRat r;
    r.num = std::move(g);
    r.den = carlitz_->big_d(i);
    return r;
  };

  // nonzero elementary symmetric indices: q^0, q^1, ..., q^d (capped at s)
  std::vector<std::pair<i64, SparseRat>> es;
  for (int i = 0; i <= d; ++i) {
    i64 qi;
    try {
      qi = checked_pow(q, i);
    } catch (const error&) {
      break;
    }
    if (qi > s) break;
    es.emplace_back(qi, e_hat(i));
  }

  std::vector<SparseRat> p(static_cast<size_t>(s) + 1);
  p[0] = one;  // unused by the recursion below
  for (int m = 1; m <= s; ++m) {
    SparseRat acc;
    acc.num = SparsePoly(cfg);
    acc.den = Poly::one(cfg);
    for (const auto& [j, ej] : es) {
      if (j > n_roots_cap) break;
      if (j < m) {
        SparseRat term = ej * p[static_cast<size_t>(m - j)];
        if ((j - 1) % 2 != 0) term = term.times_int(-1);
        acc = acc + term;
      } else if (j == m) {
        SparseRat term = ej.times_int(m);
        if ((m - 1) % 2 != 0) term = term.times_int(-1);
        acc = acc + term;
      }
    }
    p[static_cast<size_t>(m)] = std::move(acc);
  }
  return p[static_cast<size_t>(s)];
}

LaurentNumber PowerSums::power_sum_newton(int s, int d, i64 err) {
  const FieldPtr& cfg = carlitz_->field();
  SparseRat t = power_sum_scaled_exact(s, d);
  if (t.is_zero()) return LaurentNumber::zero_to(cfg, err);
  // S_d(s) = num / (den * L_d^s)
  i64 deg_num = t.num.deg();
  i64 deg_den = t.den.deg();
  i64 lam = carlitz_->little_l_deg(d);
  i64 deg_f = checked_add(deg_den, checked_mul(static_cast<i64>(s), lam));
  i64 p_inv = checked_add(err, -deg_num) - 8;
  i64 err_f = checked_add(p_inv, checked_mul(2, deg_f));
  if (err_f > deg_f) return LaurentNumber::zero_to(cfg, err);
  i64 width = deg_f - err_f + 8;
  LaurentNumber lds = carlitz_->little_l_pow_window(d, s, width);
  LaurentNumber f = (LaurentNumber::from_poly(t.den) * lds).truncated(err_f);
  LaurentNumber finv = f.inv(p_inv);
  LaurentNumber res = (LaurentNumber::from_sparse(t.num) * finv).truncated(err);
  return res;
}

LaurentNumber PowerSums::power_sum(int s, int d, i64 err) {
  const FieldPtr& cfg = carlitz_->field();
  if (s < 1 || d < 0) throw error("power_sum needs s >= 1, d >= 0");
  if (err >= 0) throw error("power_sum needs err < 0");
  if (d == 0) return LaurentNumber::constant(cfg, cfg->one());
  if (power_sum_deg_bound(s, d) < err) return LaurentNumber::zero_to(cfg, err);
  {
    std::shared_lock lk(mu_);
    auto it = cache_.find({s, d});
    if (it != cache_.end() && it->second.err_deg() <= err) return it->second.truncated(err);
  }
  i64 q = cfg->q();
  double logq = std::log2(static_cast<double>(q));
  LaurentNumber r;
  if (d * logq <= 11.0) {
    r = power_sum_bruteforce(s, d, err);
  } else {
    r = power_sum_newton(s, d, err);
  }
  // ultrametric degree bound: every summand has exact degree -s d
  auto dg = r.deg();
  if (dg && *dg > -static_cast<i64>(s) * d) throw error("power sum degree bound violated");
  if (dg && *dg > power_sum_deg_bound(s, d)) throw error("power sum sharp degree bound violated");
  std::unique_lock lk(mu_);
  auto it = cache_.find({s, d});
  if (it == cache_.end() || it->second.err_deg() > r.err_deg()) cache_[{s, d}] = r;
  return r;
}

LaurentNumber PowerSums::multizeta(const Composition& c, i64 err, int threads) {
  MzvRequest req{c, err, threads};
  return multizeta(req);
}

LaurentNumber PowerSums::multizeta(const MzvRequest& req) {
  const FieldPtr& cfg = carlitz_->field();
  const Composition& c = req.composition;
  c.validate();
  if (req.err_deg >= 0) throw error("multizeta needs err_deg < 0");
  i64 work = checked_add(req.err_deg, -8);
  i64 budget = -work;
  int r = c.depth();

  // Enumerate d_1 > d_2 > ... > d_r >= 0 with
  //   sum_i cost(s_i, d_i) <= budget,  cost(s,d) = s d + (q-1) d(d+1)/2,
  // which by power_sum_deg_bound covers every term of degree >= work.
  auto cost = [&](int s, i64 d) { return -power_sum_deg_bound(s, static_cast<int>(d)); };

  LaurentNumber total = LaurentNumber::zero_to(cfg, work);
  std::vector<i64> ds(static_cast<size_t>(r));
  std::function<void(int, i64, const LaurentNumber&)> rec = [&](int pos, i64 used,
                                                                const LaurentNumber& partial) {
    // pos runs from the innermost index r-1 (smallest d) down to 0
    if (pos < 0) {
      total = total + partial;
      return;
    }
    i64 dmin = (pos == r - 1) ? 0 : ds[static_cast<size_t>(pos + 1)] + 1;
    // remaining outer positions need strictly larger d than ours; the cost
    // is strictly increasing in d, so once the cheapest completion
    // overshoots the budget nothing further fits
    for (i64 d = dmin;; ++d) {
      i64 c_here = cost(c.parts[static_cast<size_t>(pos)], d);
      i64 need_rest = 0;
      for (int j = pos - 1; j >= 0; --j) need_rest += cost(c.parts[static_cast<size_t>(j)], d + (pos - j));
      if (used + c_here + need_rest > budget) break;
      ds[static_cast<size_t>(pos)] = d;
      LaurentNumber factor = power_sum(c.parts[static_cast<size_t>(pos)], static_cast<int>(d), work);
      rec(pos - 1, used + c_here, partial * factor);
    }
  };
  rec(r - 1, 0, LaurentNumber::constant(cfg, cfg->one()));
  return total.truncated(req.err_deg);
}

}  // namespace fqz
