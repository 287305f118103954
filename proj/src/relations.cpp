#include "fqzeta/relations.hpp"

#include <algorithm>

namespace fqz {

std::vector<std::vector<Fq>> nullspace_fq(const FieldPtr& cfg, std::vector<std::vector<Fq>> rows,
                                          size_t ncols) {
  const FieldConfig& F = *cfg;
  for (const auto& r : rows)
    if (r.size() != ncols) throw error("ragged matrix");

  size_t nrows = rows.size();
  std::vector<size_t> pivot_of_col(ncols, SIZE_MAX);
  size_t rank = 0;
  for (size_t col = 0; col < ncols && rank < nrows; ++col) {
    size_t sel = SIZE_MAX;
    for (size_t r = rank; r < nrows; ++r) {
      if (!rows[r][col].is_zero()) {
        sel = r;
        break;
      }
    }
    if (sel == SIZE_MAX) continue;
    std::swap(rows[rank], rows[sel]);
    Fq inv = F.inv(rows[rank][col]);
    for (size_t c = col; c < ncols; ++c) rows[rank][c] = F.mul(rows[rank][c], inv);
    for (size_t r = 0; r < nrows; ++r) {
      if (r == rank || rows[r][col].is_zero()) continue;
      Fq f = rows[r][col];
      for (size_t c = col; c < ncols; ++c)
        rows[r][c] = F.sub(rows[r][c], F.mul(f, rows[rank][c]));
    }
    pivot_of_col[col] = rank;
    ++rank;
  }

  std::vector<std::vector<Fq>> basis;
  for (size_t col = 0; col < ncols; ++col) {
    if (pivot_of_col[col] != SIZE_MAX) continue;
    std::vector<Fq> v(ncols, F.zero());
    v[col] = F.one();
    for (size_t c = 0; c < ncols; ++c) {
      size_t pr = pivot_of_col[c];
      if (pr == SIZE_MAX) continue;
      v[c] = F.neg(rows[pr][col]);
    }
    basis.push_back(std::move(v));
  }
  return basis;
}

namespace {

struct UnknownLayout {
  size_t per_value;  // F_q unknowns per value
  i64 max_deg;
};

LaurentNumber relation_residual(const FieldPtr& cfg, const std::vector<Poly>& coeffs,
                                const std::vector<GradedNumber>& values) {
  LaurentNumber r = LaurentNumber::exact_zero(cfg);
  for (size_t i = 0; i < coeffs.size(); ++i)
    r = r + LaurentNumber::from_poly(coeffs[i]) * values[i].unit();
  return r;
}

}  // namespace

std::vector<RelationCertificate> find_relations(const std::vector<GradedNumber>& values,
                                                const RelationQuery& query,
                                                const ValueProvider& provider) {
  if (values.empty()) throw error("no values given");
  const FieldPtr& cfg = values.front().field();
  const FieldConfig& F = *cfg;
  for (const auto& v : values)
    if (v.grade() != values.front().grade())
      throw error("mixed grades: relation search requires one grade");

  UnknownLayout layout{1, 0};
  if (query.ring == CoeffRing::BoundedDeg) {
    if (query.max_deg < 0) throw error("negative degree bound");
    layout = {static_cast<size_t>(query.max_deg) + 1, query.max_deg};
  }
  size_t n = values.size();
  size_t unknowns = n * layout.per_value;

  // usable exponent range: rows at exponents >= eff_err + D are fully
  // determined for every shifted value theta^m v_i, m <= D
  i64 eff_err = kExact;
  i64 hi = std::numeric_limits<i64>::min();
  for (const auto& v : values) {
    if (!v.unit().is_exact()) eff_err = std::max(eff_err == kExact ? v.unit().err_deg() : eff_err, v.unit().err_deg());
    if (!v.unit().window().empty()) hi = std::max(hi, v.unit().window().rbegin()->first);
  }
  if (eff_err == kExact) eff_err = query.err_deg;
  eff_err = std::max(eff_err, query.err_deg);
  if (hi == std::numeric_limits<i64>::min()) hi = 0;
  i64 row_lo = checked_add(eff_err, layout.max_deg);
  i64 row_hi = checked_add(hi, layout.max_deg);  // theta^m v_i reaches up to hi + D
  i64 nrows_avail = row_hi - row_lo + 1;
  bool fp_split = query.ring == CoeffRing::Fp && cfg->e() > 1;
  i64 row_multiplier = fp_split ? cfg->e() : 1;
  if (nrows_avail * row_multiplier < static_cast<i64>(unknowns) + query.safety_rows)
    throw error("insufficient precision");

  std::vector<std::vector<Fq>> rows;
  for (i64 e = row_lo; e <= row_hi; ++e) {
    std::vector<Fq> row(unknowns, F.zero());
    for (size_t i = 0; i < n; ++i) {
      for (size_t m = 0; m < layout.per_value; ++m) {
        auto c = values[i].unit().coeff(e - static_cast<i64>(m));
        if (!c) throw error("window shallower than advertised");
        row[i * layout.per_value + m] = *c;
      }
    }
    if (fp_split) {
      for (int comp = 0; comp < cfg->e(); ++comp) {
        std::vector<Fq> prow(unknowns, F.zero());
        for (size_t c = 0; c < unknowns; ++c) prow[c] = F.from_int(F.component(row[c], comp));
        rows.push_back(std::move(prow));
      }
    } else {
      rows.push_back(std::move(row));
    }
  }

  std::vector<std::vector<Fq>> basis = nullspace_fq(cfg, std::move(rows), unknowns);
  if (basis.empty()) return {};

  // re-verify every candidate at doubled precision (hard soundness gate)
  i64 err2 = checked_mul(query.err_deg, 2);
  std::vector<GradedNumber> deep = provider(err2);
  if (deep.size() != values.size()) throw error("provider returned wrong arity");
  for (const auto& v : deep)
    if (v.grade() != values.front().grade()) throw error("provider changed grades");

  std::vector<RelationCertificate> out;
  for (const auto& vec : basis) {
    std::vector<Poly> coeffs;
    coeffs.reserve(n);
    for (size_t i = 0; i < n; ++i) {
      std::vector<Fq> c(layout.per_value);
      for (size_t m = 0; m < layout.per_value; ++m) c[m] = vec[i * layout.per_value + m];
      coeffs.emplace_back(cfg, std::move(c));
    }
    LaurentNumber residual = relation_residual(cfg, coeffs, deep);
    if (!residual.zero_within_precision())
      throw error("relation candidate failed re-verification (unsound precision bookkeeping)");
    i64 pot_hi = 0;
    for (size_t i = 0; i < n; ++i) {
      if (coeffs[i].is_zero() || deep[i].unit().window().empty()) continue;
      pot_hi = std::max(pot_hi, coeffs[i].deg() + deep[i].unit().window().rbegin()->first);
    }
    RelationCertificate cert;
    cert.coefficients = std::move(coeffs);
    cert.precision_used = query.err_deg;
    cert.reverified_at = err2;
    cert.margin = residual.is_exact() ? std::numeric_limits<i64>::max() : pot_hi - residual.err_deg();
    out.push_back(std::move(cert));
  }
  return out;
}

std::optional<RationalFunction> rational_reconstruct(const LaurentNumber& z, i64 max_deg, i64 err,
                                                     const std::function<LaurentNumber(i64)>& z_provider) {
  const FieldPtr& cfg = z.field();
  RelationQuery q;
  q.ring = CoeffRing::BoundedDeg;
  q.max_deg = max_deg;
  q.err_deg = err;
  auto one = GradedNumber::from_laurent(LaurentNumber::constant(cfg, cfg->one()));
  std::vector<GradedNumber> vals{one, GradedNumber::from_laurent(z)};
  auto provider = [&](i64 e2) {
    return std::vector<GradedNumber>{one, GradedNumber::from_laurent(z_provider(e2))};
  };
  std::vector<RelationCertificate> certs = find_relations(vals, q, provider);
  for (const auto& cert : certs) {
    const Poly& a = cert.coefficients[0];
    const Poly& b = cert.coefficients[1];
    if (b.is_zero()) continue;
    // a + b z = 0  =>  z = -a/b
    return RationalFunction(-a, b);
  }
  return std::nullopt;
}

ProductRelationResult product_relation_search(PowerSums& ctx, const Composition& s,
                                              const Composition& sp, i64 err,
                                              int depth_cap_override) {
  const FieldPtr& cfg = ctx.field();
  ProductRelationResult res;
  int depth_cap = depth_cap_override > 0 ? depth_cap_override : s.depth() + sp.depth();
  res.candidates = compositions_of_weight(s.weight() + sp.weight(), depth_cap);

  auto eval_all = [&](i64 e) {
    std::vector<GradedNumber> vals;
    i64 half = checked_add(e, -8);
    vals.push_back(GradedNumber::from_laurent(ctx.multizeta(s, half) * ctx.multizeta(sp, half)));
    for (const auto& c : res.candidates)
      vals.push_back(GradedNumber::from_laurent(ctx.multizeta(c, e)));
    return vals;
  };

  RelationQuery q;
  q.ring = CoeffRing::Fp;
  q.err_deg = err;
  std::vector<RelationCertificate> certs = find_relations(eval_all(err), q, eval_all);
  for (auto& cert : certs) {
    if (!cert.coefficients[0].is_zero()) {
      // normalize the product coefficient to 1
      Fq c0 = cert.coefficients[0].coeff(0);
      Fq inv = cfg->inv(c0);
      for (Poly& p : cert.coefficients) p = p.times(inv);
      res.found = true;
      res.certificate = std::move(cert);
      return res;
    }
  }
  return res;
}

}  // namespace fqz
