#include "fqzeta/cmpl.hpp"

#include <algorithm>
#include <functional>

namespace fqz {

bool in_small_polydisc(const CmplPoint& pt, i64 q) {
  for (int i = 0; i < pt.composition.depth(); ++i) {
    const RationalFunction& u = pt.coords[static_cast<size_t>(i)];
    if (u.is_zero()) continue;  // zero coordinates are allowed everywhere
    if ((q - 1) * u.deg() >= static_cast<i64>(pt.composition.parts[static_cast<size_t>(i)]) * q)
      return false;
  }
  return true;
}

LaurentNumber cmpl_eval(PowerSums& ctx, const CmplPoint& pt, i64 err, const CmplOptions& opt) {
  const FieldPtr& cfg = ctx.field();
  CarlitzCache& carlitz = ctx.carlitz();
  i64 q = cfg->q();
  if (err >= 0) throw error("cmpl_eval needs err < 0");
  if (!in_small_polydisc(pt, q) && !opt.unsafe_domain)
    throw error("point outside the guaranteed convergence polydisc");

  int r = pt.composition.depth();
  // any zero coordinate kills every term of the series
  for (const auto& u : pt.coords)
    if (u.is_zero()) return LaurentNumber::exact_zero(cfg);

  std::vector<i64> du(static_cast<size_t>(r));
  i64 pos_deg_sum = 0;
  for (int j = 0; j < r; ++j) {
    du[static_cast<size_t>(j)] = pt.coords[static_cast<size_t>(j)].deg();
    pos_deg_sum += std::max<i64>(du[static_cast<size_t>(j)], 0);
  }
  i64 work = checked_add(err, -8);

  // The factor u_j^(q^i) lifts window tops to q^i deg u_j; every inverse
  // and embedding must be deep enough to survive multiplication against
  // those tops.  Bound the largest shift over indices that can appear in
  // an admissible tuple.
  i64 total_shift = 0;
  if (!opt.unsafe_domain) {
    CarlitzCache& cz = ctx.carlitz();
    for (int j = 0; j < r; ++j) {
      if (du[static_cast<size_t>(j)] <= 0) continue;
      i64 others = pos_deg_sum - du[static_cast<size_t>(j)];
      i64 shift = 0;
      int s = pt.composition.parts[static_cast<size_t>(j)];
      for (i64 i = 0;; ++i) {
        i64 g = checked_add(checked_mul(checked_pow(q, static_cast<int>(i)), du[static_cast<size_t>(j)]),
                            -checked_mul(s, cz.little_l_deg(static_cast<int>(i))));
        if (g + others < work) break;
        shift = std::max(shift, checked_mul(checked_pow(q, static_cast<int>(i)), du[static_cast<size_t>(j)]));
      }
      total_shift += shift;
    }
  } else {
    // indices are capped at unsafe_index_cap + depth; the largest window
    // lift per coordinate is q^i deg u at the deepest admissible index
    int imax = opt.unsafe_index_cap + r;
    for (int j = 0; j < r; ++j)
      if (du[static_cast<size_t>(j)] > 0)
        total_shift += checked_mul(checked_pow(q, imax), du[static_cast<size_t>(j)]);
  }
  i64 factor_prec = checked_add(work, -total_shift) - 8;

  // u_j^(q^i) cached per (j, i); embeddings at factor_prec
  std::vector<LaurentNumber> base;
  base.reserve(static_cast<size_t>(r));
  for (int j = 0; j < r; ++j)
    base.push_back(LaurentNumber::from_rational(pt.coords[static_cast<size_t>(j)], factor_prec));
  std::map<std::pair<int, int>, LaurentNumber> frob_cache;
  auto coord_power = [&](int j, int i) -> const LaurentNumber& {
    auto key = std::make_pair(j, i);
    auto it = frob_cache.find(key);
    if (it == frob_cache.end())
      it = frob_cache.emplace(key, base[static_cast<size_t>(j)].frobenius_power(i)).first;
    return it->second;
  };

  // term degree bound for index i at position j: q^i deg u_j - s_j deg L_i,
  // strictly decreasing in i inside the polydisc
  auto gain = [&](int j, i64 i) -> i64 {
    int s = pt.composition.parts[static_cast<size_t>(j)];
    return checked_add(checked_mul(checked_pow(q, static_cast<int>(i)), du[static_cast<size_t>(j)]),
                       -checked_mul(s, carlitz.little_l_deg(static_cast<int>(i))));
  };

  LaurentNumber total = LaurentNumber::zero_to(cfg, work);
  std::vector<i64> idx(static_cast<size_t>(r));
  // positions run innermost (r-1, smallest index) to outermost (0)
  std::function<void(int, i64, const LaurentNumber&)> rec = [&](int pos, i64 acc_gain,
                                                                const LaurentNumber& partial) {
    if (pos < 0) {
      total = total + partial;
      return;
    }
    i64 imin = (pos == r - 1) ? 0 : idx[static_cast<size_t>(pos + 1)] + 1;
    for (i64 i = imin;; ++i) {
      i64 g_here = gain(pos, i);
      if (opt.unsafe_domain) {
        if (i > imin + opt.unsafe_index_cap) break;
      } else {
        i64 best_rest = 0;
        for (int j = pos - 1; j >= 0; --j) best_rest += gain(j, i + (pos - j));
        // inside the polydisc every gain strictly decreases in its index
        if (acc_gain + g_here + best_rest < work) break;
      }
      idx[static_cast<size_t>(pos)] = i;
      int s = pt.composition.parts[static_cast<size_t>(pos)];
      LaurentNumber factor =
          coord_power(pos, static_cast<int>(i)) * carlitz.little_l_inv_pow(static_cast<int>(i), s, factor_prec);
      rec(pos - 1, acc_gain + g_here, partial * factor);
    }
  };
  rec(r - 1, 0, LaurentNumber::constant(cfg, cfg->one()));
  LaurentNumber out = total.truncated(err);
  if (!opt.unsafe_domain && out.err_deg() > err) throw error("cmpl_eval failed to reach precision");
  return out;
}

LaurentNumber carlitz_polylog(PowerSums& ctx, int n, const RationalFunction& z, i64 err) {
  if (n < 1) throw error("carlitz_polylog needs n >= 1");
  if (z.is_zero()) return LaurentNumber::exact_zero(ctx.field());
  return cmpl_eval(ctx, CmplPoint(Composition{std::vector<int>{n}}, {z}), err);
}

std::vector<StuffleTerm> stuffle_expand(const Composition& s, const Composition& sp) {
  int r = s.depth(), rp = sp.depth();
  std::vector<StuffleTerm> out;
  for (int rr = std::max(r, rp); rr <= r + rp; ++rr) {
    // choose the positions of the left parts (in order), then of the right
    std::vector<int> left_mask, right_mask;
    std::function<void(int, int)> choose_left = [&](int pos, int taken) {
      if (taken == r) {
        std::function<void(int, int)> choose_right = [&](int pos2, int taken2) {
          if (taken2 == rp) {
            // every position must carry at least one part
            std::vector<int> leftat(static_cast<size_t>(rr), -1), rightat(static_cast<size_t>(rr), -1);
            for (int j = 0; j < r; ++j) leftat[static_cast<size_t>(left_mask[static_cast<size_t>(j)])] = j;
            for (int j = 0; j < rp; ++j) rightat[static_cast<size_t>(right_mask[static_cast<size_t>(j)])] = j;
            StuffleTerm term;
            term.recipe.resize(static_cast<size_t>(rr));
            std::vector<int> parts(static_cast<size_t>(rr), 0);
            for (int i = 0; i < rr; ++i) {
              int a = leftat[static_cast<size_t>(i)], b = rightat[static_cast<size_t>(i)];
              if (a < 0 && b < 0) return;
              term.recipe[static_cast<size_t>(i)] = {a, b};
              parts[static_cast<size_t>(i)] = (a >= 0 ? s.parts[static_cast<size_t>(a)] : 0) +
                                              (b >= 0 ? sp.parts[static_cast<size_t>(b)] : 0);
            }
            term.composition = Composition(parts);
            out.push_back(std::move(term));
            return;
          }
          for (int nxt = pos2; nxt <= rr - (rp - taken2); ++nxt) {
            right_mask.push_back(nxt);
            choose_right(nxt + 1, taken2 + 1);
            right_mask.pop_back();
          }
        };
        choose_right(0, 0);
        return;
      }
      for (int nxt = pos; nxt <= rr - (r - taken); ++nxt) {
        left_mask.push_back(nxt);
        choose_left(nxt + 1, taken + 1);
        left_mask.pop_back();
      }
    };
    choose_left(0, 0);
  }
  return out;
}

VerificationReport stuffle_verify(PowerSums& ctx, const Composition& s, const Composition& sp,
                                  const std::vector<RationalFunction>& z,
                                  const std::vector<RationalFunction>& zp, i64 err, bool corrupt) {
  LaurentNumber lhs = cmpl_eval(ctx, CmplPoint(s, z), err) * cmpl_eval(ctx, CmplPoint(sp, zp), err);
  std::vector<StuffleTerm> terms = stuffle_expand(s, sp);
  if (corrupt && !terms.empty()) terms.pop_back();
  LaurentNumber rhs = LaurentNumber::zero_to(ctx.field(), err);
  for (const StuffleTerm& term : terms) {
    std::vector<RationalFunction> coords;
    coords.reserve(term.recipe.size());
    for (const auto& src : term.recipe) {
      if (src.merged()) {
        coords.push_back(z[static_cast<size_t>(src.from_left)] * zp[static_cast<size_t>(src.from_right)]);
      } else if (src.from_left >= 0) {
        coords.push_back(z[static_cast<size_t>(src.from_left)]);
      } else {
        coords.push_back(zp[static_cast<size_t>(src.from_right)]);
      }
    }
    rhs = rhs + cmpl_eval(ctx, CmplPoint(term.composition, coords), err);
  }
  LaurentNumber residual = lhs - rhs;
  i64 hi = 0;
  if (auto d = lhs.deg()) hi = std::max(hi, *d);
  if (auto d = rhs.deg()) hi = std::max(hi, *d);
  return report_from_residual(residual, hi,
                              "stuffle " + s.str() + " x " + sp.str() + (corrupt ? " (corrupted)" : ""));
}

}  // namespace fqz
