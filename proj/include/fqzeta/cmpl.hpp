#pragma once

#include "fqzeta/verification.hpp"
#include "fqzeta/zeta.hpp"

namespace fqz {

// Evaluation point of a Carlitz multiple polylogarithm: coordinates in k,
// one per composition part.
struct CmplPoint {
  Composition composition;
  std::vector<RationalFunction> coords;

  CmplPoint(Composition c, std::vector<RationalFunction> u)
      : composition(std::move(c)), coords(std::move(u)) {
    if (static_cast<int>(coords.size()) != composition.depth())
      throw error("point depth does not match composition depth");
  }
};

// Strict polydisc on which the defining series certainly converges:
// deg u_i < s_i q/(q-1) for all i, compared as (q-1) deg u_i < s_i q.
bool in_small_polydisc(const CmplPoint& pt, i64 q);

struct CmplOptions {
  // Evaluate outside the strict polydisc with a user-supplied index cap.
  // The result is NOT rigorously truncated; default is rejection.
  bool unsafe_domain = false;
  int unsafe_index_cap = 0;
};

// Li_s(u_1,...,u_r) = sum over i_1 > ... > i_r >= 0 of
// prod u_j^(q^(i_j)) / L_(i_j)^(s_j), at precision err.
LaurentNumber cmpl_eval(PowerSums& ctx, const CmplPoint& pt, i64 err, const CmplOptions& opt = {});

// n-th Carlitz polylogarithm: depth-one case of cmpl_eval.
LaurentNumber carlitz_polylog(PowerSums& ctx, int n, const RationalFunction& z, i64 err);

// One term of the stuffle expansion of Li_s * Li_s'.  Each position of
// the result composition takes its coordinate from the left factor, the
// right factor, or the product of both (merged).
struct StuffleTerm {
  Composition composition;
  struct Source {
    int from_left = -1;   // index into s, or -1
    int from_right = -1;  // index into s', or -1
    bool merged() const { return from_left >= 0 && from_right >= 0; }
  };
  std::vector<Source> recipe;
};

// All pairs (v, v') obtained by padding s and s' with zeros to a common
// depth r'' in max(r,r')..r+r', subject to no position where both vanish.
// Deterministic order: by r'', then by insertion pattern.
std::vector<StuffleTerm> stuffle_expand(const Composition& s, const Composition& sp);

// Numeric check of Li_s(z) Li_s'(z') = sum of stuffle terms; corrupt
// drops the last term to exercise the failure path.
VerificationReport stuffle_verify(PowerSums& ctx, const Composition& s, const Composition& sp,
                                  const std::vector<RationalFunction>& z,
                                  const std::vector<RationalFunction>& zp, i64 err,
                                  bool corrupt = false);

}  // namespace fqz
