#include "fqzeta/anderson_thakur.hpp"

#include <algorithm>

#include "fqzeta/relations.hpp"

namespace fqz {

AndersonThakur::AndersonThakur(std::shared_ptr<PowerSums> zeta) : zeta_(std::move(zeta)) {}

SparsePoly AndersonThakur::rhs_exact(int s, int d) {
  SparseRat t = zeta_->power_sum_scaled_exact(s, d);
  Poly gamma = zeta_->carlitz().carlitz_factorial(s);
  SparsePoly num = t.num * SparsePoly::from_poly(gamma);
  try {
    return num.divide_exact(t.den);
  } catch (const error&) {
    throw error("RHS not integral: Gamma_s S_d(s) L_d^s outside A for s=" + std::to_string(s) +
                " d=" + std::to_string(d));
  }
}

AtPolynomial AndersonThakur::at_poly(int n, const AtOptions& opt) {
  if (n < 0) throw error("at_poly needs n >= 0");
  {
    std::shared_lock lk(mu_);
    auto it = cache_.find(n);
    if (it != cache_.end()) return it->second;
  }
  const FieldPtr& cfg = field();
  const FieldConfig& F = *cfg;
  i64 q = F.q();
  int s = n + 1;
  i64 M = static_cast<i64>(n) * q / (q - 1);  // theta-degree bound from the defining theorem
  int b_cap = opt.t_degree_cap >= 0 ? opt.t_degree_cap : 4 * n + 4;

  std::map<int, SparsePoly> rhs_cache;
  auto rhs = [&](int d) -> const SparsePoly& {
    auto it = rhs_cache.find(d);
    if (it == rhs_cache.end()) it = rhs_cache.emplace(d, rhs_exact(s, d)).first;
    return it->second;
  };

  for (int B = 0; B <= b_cap; ++B) {
    int d_max = opt.d_max >= 0 ? opt.d_max : static_cast<int>(M) + B + 2;
    size_t unknowns = static_cast<size_t>(B + 1) * static_cast<size_t>(M + 1);

    // Augmented system over F_q: one row per (d, theta-exponent).
    std::vector<std::vector<Fq>> rows;
    bool feasible = true;
    for (int d = 0; d <= d_max && feasible; ++d) {
      i64 qd = checked_pow(q, d);
      std::map<i64, std::vector<std::pair<size_t, Fq>>> rows_at;  // exponent -> unknowns hitting it
      for (int j = 0; j <= B; ++j)
        for (i64 m = 0; m <= M; ++m) {
          i64 e = checked_add(checked_mul(m, qd), j);
          rows_at[e].emplace_back(static_cast<size_t>(j) * (M + 1) + static_cast<size_t>(m), F.one());
        }
      for (const auto& [e, c] : rhs(d).terms()) {
        if (!rows_at.count(e)) {
          feasible = false;  // RHS has support outside the degree box
          break;
        }
        (void)c;
      }
      if (!feasible) break;
      for (const auto& [e, hits] : rows_at) {
        std::vector<Fq> row(unknowns + 1, F.zero());
        for (const auto& [idx, coeff] : hits) row[idx] = coeff;
        auto it = rhs(d).terms().find(e);
        row[unknowns] = it == rhs(d).terms().end() ? F.zero() : it->second;
        rows.push_back(std::move(row));
      }
    }
    if (!feasible) continue;

    // solve by elimination on the augmented matrix
    size_t nrows = rows.size();
    std::vector<size_t> pivot_col;
    size_t rank = 0;
    for (size_t col = 0; col < unknowns && rank < nrows; ++col) {
      size_t sel = SIZE_MAX;
      for (size_t r = rank; r < nrows; ++r)
        if (!rows[r][col].is_zero()) {
          sel = r;
          break;
        }
      if (sel == SIZE_MAX) continue;
      std::swap(rows[rank], rows[sel]);
      Fq inv = F.inv(rows[rank][col]);
      for (size_t c = col; c <= unknowns; ++c) rows[rank][c] = F.mul(rows[rank][c], inv);
      for (size_t r = 0; r < nrows; ++r) {
        if (r == rank || rows[r][col].is_zero()) continue;
        Fq f = rows[r][col];
        for (size_t c = col; c <= unknowns; ++c) rows[r][c] = F.sub(rows[r][c], F.mul(f, rows[rank][c]));
      }
      pivot_col.push_back(col);
      ++rank;
    }
    bool consistent = true;
    for (size_t r = rank; r < nrows; ++r)
      if (!rows[r][unknowns].is_zero()) {
        consistent = false;
        break;
      }
    if (!consistent) continue;
    if (rank < unknowns) {
      // homogeneous nullspace must be trivial at this d_max; a rank
      // deficiency means the degree box is degenerate, not solvable
      throw error("at_poly: homogeneous system unexpectedly has a nullspace");
    }

    std::vector<Fq> sol(unknowns, F.zero());
    for (size_t r = 0; r < rank; ++r) sol[pivot_col[r]] = rows[r][unknowns];

    std::vector<Poly> h_coeffs;
    for (int j = 0; j <= B; ++j) {
      std::vector<Fq> c(static_cast<size_t>(M) + 1);
      for (i64 m = 0; m <= M; ++m) c[static_cast<size_t>(m)] = sol[static_cast<size_t>(j) * (M + 1) + static_cast<size_t>(m)];
      h_coeffs.emplace_back(cfg, std::move(c));
    }
    AtPolynomial result;
    result.n = n;
    result.value = TPoly(cfg, std::move(h_coeffs));
    result.t_degree = result.value.deg_t() < 0 ? 0 : result.value.deg_t();

    // over-verification on a doubled d-range, exactly
    int verify_max = opt.verify_d_max >= 0 ? opt.verify_d_max : 2 * d_max + 2;
    for (int d = 0; d <= verify_max; ++d) {
      if (!(result.value.twisted_eval_theta(d) == rhs(d)))
        throw error("at_poly verification failed at d=" + std::to_string(d));
    }
    result.certified_d_range = verify_max;

    if (result.value.max_coeff_deg() > M) throw error("at_poly degree bound violated");

    std::unique_lock lk(mu_);
    cache_.emplace(n, result);
    return result;
  }
  throw error("no solution within search bounds (t-degree cap " + std::to_string(b_cap) + ")");
}

Decomposition AndersonThakur::decompose_mzv(const Composition& comp) {
  const FieldPtr& cfg = field();
  Decomposition dec;
  dec.composition = comp;
  dec.gamma_factor = Poly::one(cfg);
  int r = comp.depth();
  std::vector<TPoly> hs;
  for (int j = 0; j < r; ++j) {
    int sj = comp.parts[static_cast<size_t>(j)];
    hs.push_back(at_poly(sj - 1).value);
    dec.gamma_factor = dec.gamma_factor * zeta_->carlitz().carlitz_factorial(sj);
  }
  // Cartesian product of the nonzero t-coefficients of each H_{s_j - 1}
  std::vector<std::vector<std::pair<i64, Poly>>> lists;
  for (int j = 0; j < r; ++j) {
    std::vector<std::pair<i64, Poly>> lst;
    for (int m = 0; m <= hs[static_cast<size_t>(j)].deg_t(); ++m) {
      Poly c = hs[static_cast<size_t>(j)].coeff(m);
      if (!c.is_zero()) lst.emplace_back(m, c);
    }
    lists.push_back(std::move(lst));
  }
  std::vector<size_t> pick(static_cast<size_t>(r), 0);
  for (;;) {
    Decomposition::Term term;
    term.a_exponent = 0;
    for (int j = 0; j < r; ++j) {
      const auto& [m, c] = lists[static_cast<size_t>(j)][pick[static_cast<size_t>(j)]];
      term.a_exponent += m;
      term.point.push_back(c);
    }
    // every point must obey the strict polydisc bound (degree bound on H)
    for (int j = 0; j < r; ++j) {
      i64 du = term.point[static_cast<size_t>(j)].deg();
      if ((cfg->q() - 1) * du >= static_cast<i64>(comp.parts[static_cast<size_t>(j)]) * cfg->q())
        throw error("decomposition point escaped the polydisc");
    }
    dec.terms.push_back(std::move(term));
    int j = r - 1;
    while (j >= 0 && ++pick[static_cast<size_t>(j)] == lists[static_cast<size_t>(j)].size()) {
      pick[static_cast<size_t>(j)] = 0;
      --j;
    }
    if (j < 0) break;
  }
  return dec;
}

VerificationReport AndersonThakur::verify_decomposition(const Composition& comp, i64 err, bool corrupt) {
  const FieldPtr& cfg = field();
  Decomposition dec = decompose_mzv(comp);
  i64 g = dec.gamma_factor.deg();
  i64 work = checked_add(err, -g - 8);

  // Gamma-cleared identity: prod Gamma_{s_j} * zeta_A(s) = sum_u a_u Li_s(u)
  LaurentNumber lhs = LaurentNumber::from_poly(dec.gamma_factor) * zeta_->multizeta(comp, work);
  LaurentNumber rhs = LaurentNumber::zero_to(cfg, work);
  bool first = true;
  for (const auto& term : dec.terms) {
    std::vector<RationalFunction> coords;
    coords.reserve(term.point.size());
    for (const Poly& u : term.point) coords.emplace_back(u);
    LaurentNumber li = cmpl_eval(*zeta_, CmplPoint(comp, coords), work);
    LaurentNumber au = LaurentNumber::monomial(cfg, cfg->one(), term.a_exponent);
    if (corrupt && first && cfg->p() != 2) au = -au;
    if (corrupt && first && cfg->p() == 2) au = au.shifted(cfg->one(), 1);  // char 2: shift instead of sign flip
    first = false;
    rhs = rhs + au * li;
  }
  LaurentNumber residual = lhs - rhs;
  i64 hi = 0;
  if (auto d = lhs.deg()) hi = std::max(hi, *d);
  if (auto d = rhs.deg()) hi = std::max(hi, *d);
  return report_from_residual(residual, hi,
                              "decomposition " + comp.str() + (corrupt ? " (corrupted)" : ""));
}

}  // namespace fqz
