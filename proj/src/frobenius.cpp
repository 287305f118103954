#include "fqzeta/frobenius.hpp"

#include <algorithm>
#include <functional>

#include "fqzeta/parse.hpp"
#include "fqzeta/relations.hpp"

namespace fqz {

namespace {

// 1/(t - theta^(q^m)) = -theta^(-q^m) sum_k t^k theta^(-k q^m), exact
// monomial coefficients.
TSeries t_pole_inverse(const FieldPtr& cfg, int m, int t_trunc) {
  i64 qm = checked_pow(cfg->q(), m);
  TSeries r(cfg, t_trunc);
  Fq neg1 = cfg->neg(cfg->one());
  for (int k = 0; k <= t_trunc; ++k)
    r.set_coeff(k, LaurentNumber::monomial(cfg, neg1, checked_mul(-(static_cast<i64>(k) + 1), qm)));
  return r;
}

struct SeriesBuilder {
  PowerSums& ctx;
  const Composition& s;
  const std::vector<TPoly>& q_polys;
  int t_trunc;
  i64 work;  // target precision of the assembled sums
  i64 deep;  // working precision of the cached pieces (covers Frobenius shifts)

  std::vector<std::vector<TSeries>> denom_cache;  // [part][index]
  std::vector<std::vector<TSeries>> numer_cache;  // [part][index]

  SeriesBuilder(PowerSums& ctx, const Composition& s, const std::vector<TPoly>& q, int t_trunc,
                i64 work)
      : ctx(ctx), s(s), q_polys(q), t_trunc(t_trunc), work(work) {
    denom_cache.resize(q.size());
    numer_cache.resize(q.size());
    // Q_k^(i) lifts coefficient tops to q^i deg Q_k; all cached pieces are
    // kept deep enough to survive multiplication against those tops
    i64 pos_sum = 0;
    for (const auto& qp : q) pos_sum += std::max<i64>(qp.max_coeff_deg(), 0);
    i64 total_shift = 0;
    for (size_t j = 0; j < q.size(); ++j) {
      i64 dq = q[j].max_coeff_deg();
      if (dq <= 0) continue;
      i64 others = pos_sum - dq;
      i64 shift = 0;
      for (i64 i = 0;; ++i) {
        if (gain(static_cast<int>(j), i) + others < work) break;
        shift = std::max(shift, checked_mul(checked_pow(ctx.field()->q(), static_cast<int>(i)), dq));
      }
      total_shift += shift;
    }
    deep = checked_add(work, -total_shift) - 8;
  }

  i64 gain(int part, i64 i) const {
    i64 dq = q_polys[static_cast<size_t>(part)].max_coeff_deg();
    return checked_add(
        checked_mul(checked_pow(ctx.field()->q(), static_cast<int>(i)), dq),
        -checked_mul(s.parts[static_cast<size_t>(part)], ctx.carlitz().little_l_deg(static_cast<int>(i))));
  }

  const TSeries& denom(int part, int i) {
    auto& vec = denom_cache[static_cast<size_t>(part)];
    while (static_cast<int>(vec.size()) <= i) {
      if (vec.empty()) {
        vec.push_back(TSeries::one(ctx.field(), t_trunc));
      } else {
        int m = static_cast<int>(vec.size());
        TSeries f = t_pole_inverse(ctx.field(), m, t_trunc).pow(s.parts[static_cast<size_t>(part)]);
        vec.push_back((vec.back() * f).truncated_coeffs(deep));
      }
    }
    return vec[static_cast<size_t>(i)];
  }

  const TSeries& numer(int part, int i) {
    auto& vec = numer_cache[static_cast<size_t>(part)];
    while (static_cast<int>(vec.size()) <= i) {
      int n = static_cast<int>(vec.size());
      vec.push_back(q_polys[static_cast<size_t>(part)].twist(n).to_series(t_trunc));
    }
    return vec[static_cast<size_t>(i)];
  }

  // R for the prefix (s_1..s_L): sum over i_1 > ... > i_L >= 0 of
  // prod numer(k, i_k) * denom(k, i_k)
  TSeries partial_sum(int L) {
    const FieldPtr& cfg = ctx.field();
    TSeries total = TSeries::constant(cfg, LaurentNumber::zero_to(cfg, work), t_trunc);
    if (L == 0) return TSeries::one(cfg, t_trunc);
    std::vector<i64> idx(static_cast<size_t>(L));
    std::function<void(int, i64, const TSeries&)> rec = [&](int pos, i64 acc,
                                                            const TSeries& partial) {
      if (pos < 0) {
        total = total + partial;
        return;
      }
      i64 imin = (pos == L - 1) ? 0 : idx[static_cast<size_t>(pos + 1)] + 1;
      for (i64 i = imin;; ++i) {
        i64 g = gain(pos, i);
        i64 best_rest = 0;
        for (int k = pos - 1; k >= 0; --k) best_rest += gain(k, i + (pos - k));
        if (acc + g + best_rest < work) break;  // gains strictly decrease in i
        idx[static_cast<size_t>(pos)] = i;
        TSeries factor = numer(pos, static_cast<int>(i)) * denom(pos, static_cast<int>(i));
        rec(pos - 1, acc + g, (partial * factor).truncated_coeffs(deep));
      }
    };
    rec(L - 1, 0, TSeries::one(cfg, t_trunc));
    return total;
  }

  // scalar version at t = theta: sum over tuples of
  // prod Q_k^(i_k)(theta) / L_(i_k)^(s_k)
  LaurentNumber partial_sum_at_theta(int L) {
    const FieldPtr& cfg = ctx.field();
    LaurentNumber total = LaurentNumber::zero_to(cfg, work);
    if (L == 0) return LaurentNumber::constant(cfg, cfg->one());
    std::vector<i64> idx(static_cast<size_t>(L));
    std::function<void(int, i64, const LaurentNumber&)> rec = [&](int pos, i64 acc,
                                                                  const LaurentNumber& partial) {
      if (pos < 0) {
        total = total + partial;
        return;
      }
      i64 imin = (pos == L - 1) ? 0 : idx[static_cast<size_t>(pos + 1)] + 1;
      for (i64 i = imin;; ++i) {
        i64 g = gain(pos, i);
        i64 best_rest = 0;
        for (int k = pos - 1; k >= 0; --k) best_rest += gain(k, i + (pos - k));
        if (acc + g + best_rest < work) break;
        idx[static_cast<size_t>(pos)] = i;
        LaurentNumber nume = LaurentNumber::from_sparse(
            q_polys[static_cast<size_t>(pos)].twisted_eval_theta(static_cast<int>(i)));
        LaurentNumber factor =
            nume * ctx.carlitz().little_l_inv_pow(static_cast<int>(i), s.parts[static_cast<size_t>(pos)], deep);
        rec(pos - 1, acc + g, partial * factor);
      }
    };
    rec(L - 1, 0, LaurentNumber::constant(cfg, cfg->one()));
    return total;
  }
};

i64 positive_degree_slack(const std::vector<TPoly>& q_polys) {
  i64 s = 0;
  for (const auto& q : q_polys) s += std::max<i64>(q.max_coeff_deg(), 0);
  return s;
}

void check_decay(const Composition& s, const std::vector<TPoly>& q_polys, i64 q) {
  for (size_t j = 0; j < q_polys.size(); ++j) {
    if (q_polys[j].is_zero()) throw error("zero entry in Q tuple");
    if ((q - 1) * q_polys[j].max_coeff_deg() >= static_cast<i64>(s.parts[j]) * q)
      throw error("decay hypothesis violated for Q_" + std::to_string(j + 1));
  }
}

// min over partitions of m into <= w parts of sum of L-degrees; convexity
// makes the balanced partition optimal
i64 omega_power_coeff_drop(CarlitzCache& carlitz, i64 w, i64 m) {
  if (m <= 0) return 0;
  i64 a = m / w, b = m % w;
  return checked_add(checked_mul(w - b, carlitz.little_l_deg(static_cast<int>(a))),
                     checked_mul(b, carlitz.little_l_deg(static_cast<int>(a) + 1)));
}

}  // namespace

std::vector<std::vector<PhiEntry>> build_phi(const Composition& s, const std::vector<TPoly>& q_polys) {
  if (static_cast<int>(q_polys.size()) != s.depth())
    throw error("dimension mismatch between composition and Q tuple");
  const FieldPtr& cfg = q_polys.front().field();
  int d = s.depth();
  TPoly one = TPoly::one(cfg);
  TPoly tm = TPoly::t_minus(Poly::theta(cfg));
  std::vector<std::vector<PhiEntry>> phi(static_cast<size_t>(d) + 1);
  // partial weights v_j = s_j + ... + s_d
  std::vector<i64> v(static_cast<size_t>(d) + 2, 0);
  for (int j = d; j >= 1; --j)
    v[static_cast<size_t>(j)] = v[static_cast<size_t>(j) + 1] + s.parts[static_cast<size_t>(j) - 1];
  for (int i = 0; i <= d; ++i) {
    phi[static_cast<size_t>(i)].assign(static_cast<size_t>(d) + 1,
                                       PhiEntry{TPoly::zero(cfg), one});
    // diagonal: (t-theta)^(v_{i+1}); the last diagonal entry is 1
    phi[static_cast<size_t>(i)][static_cast<size_t>(i)] =
        PhiEntry{i == d ? one : tm.pow(v[static_cast<size_t>(i) + 1]), one};
    if (i >= 1) {
      // subdiagonal: Q_i^(-1) (t-theta)^(v_i), marker on Q_i
      phi[static_cast<size_t>(i)][static_cast<size_t>(i) - 1] =
          PhiEntry{tm.pow(v[static_cast<size_t>(i)]), q_polys[static_cast<size_t>(i) - 1]};
    }
  }
  return phi;
}

std::vector<TSeries> build_psi(PowerSums& ctx, const Composition& s,
                               const std::vector<TPoly>& q_polys, int t_trunc, i64 err) {
  const FieldPtr& cfg = ctx.field();
  if (static_cast<int>(q_polys.size()) != s.depth())
    throw error("dimension mismatch between composition and Q tuple");
  check_decay(s, q_polys, cfg->q());
  i64 w = s.weight();
  i64 work = checked_add(err, -16 - positive_degree_slack(q_polys));
  auto [p, prefactor] = ctx.carlitz().omega_series(t_trunc, work);
  (void)prefactor;
  TSeries pw = p.pow(w).truncated_coeffs(work);
  SeriesBuilder builder(ctx, s, q_polys, t_trunc, work);
  std::vector<TSeries> psi;
  for (int i = 0; i <= s.depth(); ++i)
    psi.push_back((pw * builder.partial_sum(i)).truncated_coeffs(work));
  return psi;
}

DifferenceSystem make_system(PowerSums& ctx, const Composition& s,
                             const std::vector<TPoly>& q_polys, int t_trunc, i64 err) {
  DifferenceSystem sys;
  sys.cfg = ctx.field();
  sys.parts = s.parts;
  sys.q_polys = q_polys;
  sys.weight = s.weight();
  sys.phi = build_phi(s, q_polys);
  sys.psi_units = build_psi(ctx, s, q_polys, t_trunc, err);
  sys.t_trunc = t_trunc;
  sys.err = err;
  sys.det_const = sys.cfg->one();
  i64 det_pow = 0;
  for (int j = 1; j <= s.depth(); ++j) {
    i64 vj = 0;
    for (int k = j; k <= s.depth(); ++k) vj += s.parts[static_cast<size_t>(k) - 1];
    det_pow += vj;
  }
  sys.det_tminus_pow = det_pow;
  // triangular determinant: the product of the diagonal entries must be
  // exactly (t-theta)^det_pow
  TPoly diag_prod = TPoly::one(sys.cfg);
  for (int i = 0; i < sys.dim(); ++i) diag_prod = diag_prod * sys.phi[static_cast<size_t>(i)][static_cast<size_t>(i)].plain;
  if (!(diag_prod == TPoly::t_minus(Poly::theta(sys.cfg)).pow(det_pow)))
    throw error("determinant shape violated");
  // vanishing orders at theta^(q^N): entry i has order >= w - (s_1+...+s_i)
  sys.vanish_order_min.resize(static_cast<size_t>(sys.dim()));
  i64 prefix = 0;
  for (int i = 0; i < sys.dim(); ++i) {
    sys.vanish_order_min[static_cast<size_t>(i)] = sys.weight - prefix;
    if (i < s.depth()) prefix += s.parts[static_cast<size_t>(i)];
  }
  return sys;
}

DifferenceSystem make_cmpl_system(PowerSums& ctx, const Composition& s,
                                  const std::vector<Poly>& coords, int t_trunc, i64 err) {
  std::vector<TPoly> q_polys;
  q_polys.reserve(coords.size());
  for (const Poly& u : coords) q_polys.push_back(TPoly::constant(u));
  return make_system(ctx, s, q_polys, t_trunc, err);
}

VerificationReport check_difference_equation(const DifferenceSystem& sys) {
  const FieldPtr& cfg = sys.cfg;
  int dim = sys.dim();
  i64 g = checked_mul(-cfg->q(), sys.weight);
  LaurentNumber factor = neg_theta_power(cfg, g);

  int phi_tdeg = 0;
  std::vector<std::vector<TPoly>> phi1(static_cast<size_t>(dim));
  for (int i = 0; i < dim; ++i) {
    for (int j = 0; j < dim; ++j) {
      const PhiEntry& e = sys.phi[static_cast<size_t>(i)][static_cast<size_t>(j)];
      TPoly t = e.plain.twist(1) * e.marked;
      phi_tdeg = std::max(phi_tdeg, t.deg_t());
      phi1[static_cast<size_t>(i)].push_back(std::move(t));
    }
  }
  int t_valid = sys.t_trunc - phi_tdeg;
  if (t_valid < 0) throw error("t truncation too small for the matrix degree");

  std::vector<TSeries> u1;
  u1.reserve(static_cast<size_t>(dim));
  for (const TSeries& u : sys.psi_units) u1.push_back(u.twist(1));

  VerificationReport out;
  out.pass = true;
  out.margin = std::numeric_limits<i64>::max();
  for (int i = 0; i < dim; ++i) {
    TSeries acc = TSeries::constant(cfg, LaurentNumber::exact_zero(cfg), sys.t_trunc);
    for (int j = 0; j < dim; ++j) {
      if (phi1[static_cast<size_t>(i)][static_cast<size_t>(j)].is_zero()) continue;
      acc = acc + phi1[static_cast<size_t>(i)][static_cast<size_t>(j)].to_series(sys.t_trunc) *
                      u1[static_cast<size_t>(j)];
    }
    TSeries residual = sys.psi_units[static_cast<size_t>(i)] - acc.times(factor);
    for (int m = 0; m <= t_valid; ++m) {
      const LaurentNumber& c = residual.coeff(m);
      i64 pot_hi = 0;
      if (auto d0 = sys.psi_units[static_cast<size_t>(i)].coeff(m).deg()) pot_hi = std::max(pot_hi, *d0);
      VerificationReport r = report_from_residual(c, pot_hi);
      out.pass = out.pass && r.pass;
      out.margin = std::min(out.margin, r.margin);
    }
  }
  out.detail = "difference equation residual, t-degrees 0.." + std::to_string(t_valid);
  return out;
}

DifferenceSystem corrupted(const DifferenceSystem& sys) {
  DifferenceSystem bad = sys;
  for (int i = 1; i < bad.dim(); ++i) {
    PhiEntry& e = bad.phi[static_cast<size_t>(i)][static_cast<size_t>(i - 1)];
    if (e.plain.is_zero()) continue;
    if (bad.cfg->p() == 2) {
      e.plain = e.plain * TPoly::constant(Poly::theta(bad.cfg));  // char 2: scale by theta
    } else {
      e.plain = TPoly::zero(bad.cfg) - e.plain;  // sign flip
    }
    return bad;
  }
  throw error("nothing to corrupt");
}

SpecializeReport specialize_L(PowerSums& ctx, const DifferenceSystem& sys, int j, int N, i64 err) {
  if (sys.parts.empty()) throw error("specialize_L needs a base system");
  if (j < 1 || j > static_cast<int>(sys.parts.size())) throw error("prefix index out of range");
  if (N != 0 && N != 1) throw error("unsupported N (only 0 and 1)");

  Composition prefix(std::vector<int>(sys.parts.begin(), sys.parts.begin() + j));
  std::vector<TPoly> qpre(sys.q_polys.begin(), sys.q_polys.begin() + j);
  i64 wj = prefix.weight();

  i64 work = checked_add(err, -16 - positive_degree_slack(qpre));
  SeriesBuilder builder(ctx, prefix, qpre, /*t_trunc=*/0, work);
  LaurentNumber sum = builder.partial_sum_at_theta(j);
  GradedNumber value = ctx.carlitz().omega_at_theta(work).pow(wj, work) *
                       GradedNumber::from_laurent(sum);

  SpecializeReport rep;
  rep.omega_zero_order = wj;
  rep.max_pole_order = wj - prefix.parts.back();
  rep.min_term_vanishing = prefix.parts.back();

  if (N == 0) {
    // independent route: Li over cmpl_eval divided by pi_tilde^wj
    bool constant_q = true;
    std::vector<RationalFunction> coords;
    for (const TPoly& qp : qpre) {
      if (qp.deg_t() > 0) {
        constant_q = false;
        break;
      }
      coords.emplace_back(qp.coeff(0));
    }
    if (constant_q) {
      LaurentNumber li = cmpl_eval(ctx, CmplPoint(prefix, coords), work);
      GradedNumber indep = GradedNumber::from_laurent(li) * ctx.carlitz().pi_tilde(work).pow(wj, work).inv(work);
      if (indep.grade() != value.grade()) throw error("grade mismatch in specialization check");
      LaurentNumber residual = value.unit() - indep.unit();
      i64 hi = 0;
      if (auto d0 = value.unit().deg()) hi = std::max(hi, *d0);
      rep.match = report_from_residual(residual, hi, "L(theta) against Li/pi^w");
    } else {
      rep.match.pass = true;
      rep.match.margin = 0;
      rep.match.detail = "no independent scalar route for non-constant Q";
    }
    rep.value = value.truncated(err);
    return rep;
  }

  // N = 1: the sub-N part vanishes by order arithmetic (each term's zero
  // order is at least min_term_vanishing > 0), and the rest is the
  // Frobenius power of the N = 0 value.
  rep.value = value.truncated(err).frobenius_power(1);
  rep.match.pass = rep.min_term_vanishing >= 1;
  rep.match.margin = rep.min_term_vanishing;
  rep.match.detail = "order arithmetic: zero order " + std::to_string(rep.omega_zero_order) +
                     ", pole order <= " + std::to_string(rep.max_pole_order);
  return rep;
}

MzReport check_mz_property(PowerSums& ctx, const DifferenceSystem& sys, i64 weight,
                           const std::function<GradedNumber(i64)>& z_provider,
                           i64 c_degree_bound) {
  const FieldPtr& cfg = ctx.field();
  MzReport rep;

  // (1) difference equation and determinant shape
  VerificationReport diff = check_difference_equation(sys);
  if (sys.det_const.is_zero() || sys.det_tminus_pow < 0) {
    diff.pass = false;
    diff.detail += "; det not of the form c (t-theta)^s";
  } else {
    diff.detail += "; det = c (t-theta)^" + std::to_string(sys.det_tminus_pow);
  }
  rep.conditions[0] = diff;

  // (2) last column (0,...,0,1)^T
  {
    VerificationReport r;
    r.pass = true;
    int last = sys.dim() - 1;
    for (int i = 0; i < sys.dim(); ++i) {
      const PhiEntry& e = sys.phi[static_cast<size_t>(i)][static_cast<size_t>(last)];
      bool ok = (i == last) ? (e.plain.is_one() && !e.has_marker())
                            : (e.plain.is_zero() && !e.has_marker());
      r.pass = r.pass && ok;
    }
    r.margin = r.pass ? std::numeric_limits<i64>::max() : 0;
    r.detail = "last column structure";
    rep.conditions[1] = r;
  }

  // (3) psi(theta) endpoints: first entry 1/pi^w, last entry c Z / pi^w
  {
    // the c-reconstruction needs enough constraint rows: 2(D+1) unknowns
    // plus the safety margin, below the positive window tops of pi^w
    i64 err_rc = -(3 * c_degree_bound + 40);
    i64 work = std::min(checked_add(sys.err, -8),
                        checked_add(err_rc, -2 * std::max<i64>(weight, 1) - 16));
    GradedNumber omega_theta_w = ctx.carlitz().omega_at_theta(work).pow(weight, work);
    // first entry: evaluate the truncated series with the rigorous tail
    // bound from the Omega-power coefficient profile
    i64 tail = checked_add(static_cast<i64>(sys.t_trunc) + 1,
                           -omega_power_coeff_drop(ctx.carlitz(), std::max<i64>(sys.weight, 1),
                                                   sys.t_trunc + 1));
    LaurentNumber first_val = sys.psi_units[0].eval_theta_power(0, tail);
    // attach the system's graded prefactor so that the carry normalization
    // matches the omega_at_theta route
    GradedNumber first_graded(first_val, checked_mul(-cfg->q(), sys.weight));
    VerificationReport first_rep;
    if (first_graded.grade() != omega_theta_w.grade()) {
      first_rep.pass = false;
      first_rep.detail = "first entry grade mismatch";
    } else {
      LaurentNumber first_res = first_graded.unit() - omega_theta_w.unit();
      first_rep = report_from_residual(first_res, 0, "first entry vs 1/pi^w");
    }

    // last entry via the scalar route
    VerificationReport last_rep;
    std::string c_str;
    if (!sys.parts.empty()) {
      SpecializeReport sp = specialize_L(ctx, sys, static_cast<int>(sys.parts.size()), 0, work);
      GradedNumber pi_w = ctx.carlitz().pi_tilde(work).pow(weight, work);
      GradedNumber z = z_provider(work);
      GradedNumber c_val = sp.value * pi_w * z.inv(work);
      if (c_val.grade() != 0) {
        last_rep.pass = false;
        last_rep.detail = "c has nonzero grade (weight mismatch)";
      } else {
        auto c_rat = rational_reconstruct(
            c_val.unit(), c_degree_bound, err_rc,
            [&](i64 e2) {
              i64 deep = checked_add(e2, -8);
              SpecializeReport sp2 = specialize_L(ctx, sys, static_cast<int>(sys.parts.size()), 0, deep);
              GradedNumber c2 = sp2.value * ctx.carlitz().pi_tilde(deep).pow(weight, deep) *
                                z_provider(deep).inv(deep);
              return c2.unit();
            });
        if (c_rat && !c_rat->is_zero()) {
          last_rep.pass = true;
          last_rep.margin = -work;
          c_str = format_rational(*c_rat);
          last_rep.detail = "last entry = c Z / pi^w with c = " + c_str;
        } else {
          last_rep.pass = false;
          last_rep.detail = "no c in k^x within degree bound";
        }
      }
    } else {
      // product systems: the last entry is the product of the factors'
      // last entries by construction; certified via condition (1)
      last_rep.pass = true;
      last_rep.margin = std::numeric_limits<i64>::max();
      last_rep.detail = "product system: last entry inherited from factors";
    }
    rep.conditions[2] = combine_reports(first_rep, last_rep);
    rep.recovered_c = c_str;
  }

  // (4) vanishing at theta^(q^N) for all entries except the last
  {
    VerificationReport r;
    r.pass = true;
    r.margin = std::numeric_limits<i64>::max();
    for (int i = 0; i + 1 < sys.dim(); ++i) {
      i64 ord = sys.vanish_order_min[static_cast<size_t>(i)];
      r.pass = r.pass && ord >= 1;
      r.margin = std::min(r.margin, ord);
    }
    r.detail = "order arithmetic at theta^(q^N); last entry is the q^N-th Frobenius power of its t=theta value";
    rep.conditions[3] = r;
    rep.tested_N = 1;
  }
  return rep;
}

DifferenceSystem kronecker_system(PowerSums& ctx,
                                  const std::vector<std::pair<DifferenceSystem, int>>& factors) {
  if (factors.empty()) throw error("empty Kronecker product");
  std::vector<const DifferenceSystem*> flat;
  for (const auto& [sys, mult] : factors) {
    if (mult < 1) throw error("multiplicities must be positive");
    for (int k = 0; k < mult; ++k) flat.push_back(&sys);
  }
  DifferenceSystem acc = *flat[0];
  const FieldPtr& cfg = ctx.field();
  for (size_t f = 1; f < flat.size(); ++f) {
    const DifferenceSystem& b = *flat[f];
    DifferenceSystem r;
    r.cfg = cfg;
    r.weight = acc.weight + b.weight;
    r.t_trunc = std::min(acc.t_trunc, b.t_trunc);
    r.err = std::max(acc.err, b.err);
    int da = acc.dim(), db = b.dim();
    r.phi.assign(static_cast<size_t>(da * db), {});
    for (int i = 0; i < da; ++i)
      for (int k = 0; k < db; ++k) {
        auto& row = r.phi[static_cast<size_t>(i * db + k)];
        row.reserve(static_cast<size_t>(da * db));
        for (int j = 0; j < da; ++j)
          for (int l = 0; l < db; ++l) {
            const PhiEntry& ea = acc.phi[static_cast<size_t>(i)][static_cast<size_t>(j)];
            const PhiEntry& eb = b.phi[static_cast<size_t>(k)][static_cast<size_t>(l)];
            row.push_back(PhiEntry{ea.plain * eb.plain, ea.marked * eb.marked});
          }
      }
    r.psi_units.reserve(static_cast<size_t>(da * db));
    r.vanish_order_min.reserve(static_cast<size_t>(da * db));
    for (int i = 0; i < da; ++i)
      for (int k = 0; k < db; ++k) {
        r.psi_units.push_back(acc.psi_units[static_cast<size_t>(i)] * b.psi_units[static_cast<size_t>(k)]);
        r.vanish_order_min.push_back(acc.vanish_order_min[static_cast<size_t>(i)] +
                                     b.vanish_order_min[static_cast<size_t>(k)]);
      }
    r.det_const = cfg->mul(cfg->pow(acc.det_const, db), cfg->pow(b.det_const, da));
    r.det_tminus_pow = acc.det_tminus_pow * db + b.det_tminus_pow * da;
    acc = std::move(r);
  }
  return acc;
}

DifferenceSystem lifted_block_system(PowerSums& ctx, const std::vector<DifferenceSystem>& systems) {
  if (systems.empty()) throw error("empty block system");
  if (systems.size() == 1) return systems.front();
  const FieldPtr& cfg = ctx.field();
  i64 w1 = 0;
  int t_trunc = systems.front().t_trunc;
  i64 err = systems.front().err;
  for (const auto& s : systems) {
    w1 = std::max(w1, s.weight);
    t_trunc = std::min(t_trunc, s.t_trunc);
    err = std::max(err, s.err);
  }
  i64 work = checked_add(err, -8);
  auto [p, pre] = ctx.carlitz().omega_series(t_trunc, work);
  (void)pre;

  DifferenceSystem r;
  r.cfg = cfg;
  r.weight = w1;
  r.t_trunc = t_trunc;
  r.err = err;
  r.det_const = cfg->one();
  int total_dim = 0;
  for (const auto& s : systems) total_dim += s.dim();
  r.phi.assign(static_cast<size_t>(total_dim),
               std::vector<PhiEntry>(static_cast<size_t>(total_dim),
                                     PhiEntry{TPoly::zero(cfg), TPoly::one(cfg)}));
  TPoly tm = TPoly::t_minus(Poly::theta(cfg));
  int off = 0;
  for (const auto& s : systems) {
    i64 delta = w1 - s.weight;
    TPoly scale = tm.pow(delta);
    TSeries pscale = p.pow(delta).truncated_coeffs(work);
    for (int i = 0; i < s.dim(); ++i) {
      for (int j = 0; j < s.dim(); ++j) {
        const PhiEntry& e = s.phi[static_cast<size_t>(i)][static_cast<size_t>(j)];
        if (e.plain.is_zero()) continue;
        r.phi[static_cast<size_t>(off + i)][static_cast<size_t>(off + j)] =
            PhiEntry{e.plain * scale, e.marked};
      }
      r.psi_units.push_back((s.psi_units[static_cast<size_t>(i)].with_t_trunc(t_trunc) * pscale)
                                .truncated_coeffs(work));
      r.vanish_order_min.push_back(s.vanish_order_min[static_cast<size_t>(i)] + delta);
    }
    r.det_const = cfg->mul(r.det_const, s.det_const);
    r.det_tminus_pow += s.det_tminus_pow + delta * s.dim();
    off += s.dim();
  }
  return r;
}

}  // namespace fqz
