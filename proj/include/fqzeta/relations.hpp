#pragma once

#include <functional>
#include <optional>

#include "fqzeta/cmpl.hpp"
#include "fqzeta/graded.hpp"

namespace fqz {

// Coefficient ring for the relation search: the prime field, F_q, or
// polynomials in A of bounded degree.
enum class CoeffRing { Fp, Fq, BoundedDeg };

struct RelationQuery {
  CoeffRing ring = CoeffRing::BoundedDeg;
  i64 max_deg = 0;  // degree bound D for BoundedDeg
  i64 err_deg = -40;
  int safety_rows = 10;  // extra constraint rows required beyond the unknowns
};

// A certified linear relation sum a_i v_i = 0 within stated precision.
// Soundness contract: the residual recomputed at reverified_at precision
// is zero within precision; certificates distinguish "relation within
// precision" from any claim of exact vanishing, which finite computation
// cannot make.
struct RelationCertificate {
  std::vector<Poly> coefficients;  // one per input value, not all zero
  i64 precision_used = 0;
  i64 margin = 0;
  i64 reverified_at = 0;
};

// Recompute the input values at a deeper precision (for re-verification).
using ValueProvider = std::function<std::vector<GradedNumber>(i64 err)>;

// Nullspace basis of the row-major matrix over F_q via reduced
// row-echelon elimination; basis vectors are pivot-normalized and the
// output is deterministic.
std::vector<std::vector<Fq>> nullspace_fq(const FieldPtr& cfg,
                                          std::vector<std::vector<Fq>> rows, size_t ncols);

// All relations sum a_i v_i = 0 certified at query.err_deg among values
// of one common grade.  Every emitted certificate is re-verified against
// values recomputed at twice the precision; failure to re-verify throws.
// Throws error("insufficient precision") when the usable coefficient
// window provides fewer than unknowns + safety_rows constraints.
std::vector<RelationCertificate> find_relations(const std::vector<GradedNumber>& values,
                                                const RelationQuery& query,
                                                const ValueProvider& provider);

// Bounded-degree rational reconstruction: find Z = a/b with
// deg a, deg b <= D, certified at err; nullopt when no candidate within
// the bounds survives.
std::optional<RationalFunction> rational_reconstruct(const LaurentNumber& z, i64 max_deg, i64 err,
                                                     const std::function<LaurentNumber(i64)>& z_provider);

struct ProductRelationResult {
  bool found = false;
  RelationCertificate certificate;          // coefficient 0 pairs with the product
  std::vector<Composition> candidates;      // weight w1+w2, depth <= r+r'
};

// Expresses zeta(s) zeta(s') as an F_p-combination of same-weight MZVs
// from the depth-bounded candidate set.  An empty result is
// bounds-relative, never a disproof.
ProductRelationResult product_relation_search(PowerSums& ctx, const Composition& s,
                                              const Composition& sp, i64 err,
                                              int depth_cap_override = -1);

}  // namespace fqz
