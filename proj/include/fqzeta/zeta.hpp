#pragma once

#include <memory>

#include "fqzeta/carlitz.hpp"
#include "fqzeta/composition.hpp"

namespace fqz {

struct MzvRequest {
  Composition composition;
  i64 err_deg;  // < 0
  int threads = 1;
};

// Power sums S_d(s) = sum over monic a of degree d of 1/a^s, and the
// multizeta values built from them.  Computed values are cached per
// (s, d) at the deepest precision seen; shallower requests are served by
// truncation, so refining the precision never changes certified
// coefficients.
class PowerSums {
 public:
  explicit PowerSums(std::shared_ptr<CarlitzCache> carlitz);

  const FieldPtr& field() const { return carlitz_->field(); }
  CarlitzCache& carlitz() { return *carlitz_; }

  // S_d(s) at precision err.  Uses direct enumeration for small q^d and
  // the exact symmetric-function route otherwise; values with
  // deg S_d(s) certified below err come back as zero-within-precision.
  LaurentNumber power_sum(int s, int d, i64 err);

  // Literal enumeration of all q^d monic polynomials (guard q^d <= 10^7),
  // partitioned across threads; the reduction is exact field addition, so
  // the result is independent of the partitioning.
  LaurentNumber power_sum_bruteforce(int s, int d, i64 err, int threads = 1);

  // S_d(s) * L_d^s exactly (an element of k with small denominator).
  // Multiplying by Gamma_s must land in A; callers assert that.
  SparseRat power_sum_scaled_exact(int s, int d);

  // Rigorous truncation-degree bound: deg S_d(s) <= -(s d + (q-1) d(d+1)/2).
  // Follows from the coefficient-sum argument: a monomial in the q^d inner
  // coefficients survives summation over F_q^d only if every coefficient
  // appears with exponent >= q-1, which costs at least (q-1) d(d+1)/2
  // positions of theta-degree on top of the leading s d.
  i64 power_sum_deg_bound(int s, int d) const;

  LaurentNumber multizeta(const MzvRequest& req);
  LaurentNumber multizeta(const Composition& c, i64 err, int threads = 1);

 private:
  LaurentNumber power_sum_newton(int s, int d, i64 err);

  std::shared_ptr<CarlitzCache> carlitz_;
  std::shared_mutex mu_;
  std::map<std::pair<int, int>, LaurentNumber> cache_;  // (s,d) -> deepest computed
};

i64 mzv_weight(const Composition& c);
int mzv_depth(const Composition& c);

}  // namespace fqz
