#pragma once

#include <memory>

#include "fqzeta/cmpl.hpp"

namespace fqz {

// H_n recovered by exact linear algebra from the defining identity
//   (H_{s-1} Omega^s)^(d)(theta) = Gamma_s S_d(s) / pi_tilde^s,
// reduced to the root-free exact form
//   H^(d)(theta) = Gamma_s S_d(s) L_d^s in A,  d = 0, 1, 2, ...
// with s = n+1.  H^(d)(theta) = sum c_{jm} theta^(m q^d + j) is
// F_q-linear in the unknown coefficients.
struct AtPolynomial {
  int n = 0;
  TPoly value;                // H_n in A[t]
  int t_degree = 0;           // the B found by the incremental search
  int certified_d_range = 0;  // identity verified exactly for d = 0..this
};

struct AtOptions {
  int t_degree_cap = -1;  // default 4n + 4
  int d_max = -1;         // default floor(nq/(q-1)) + B + 2
  int verify_d_max = -1;  // default 2 d_max + 2
};

struct Decomposition {
  Composition composition;
  struct Term {
    std::vector<Poly> point;  // u in A^r
    i64 a_exponent = 0;       // a_u = theta^(m_1+...+m_r)
  };
  std::vector<Term> terms;
  Poly gamma_factor;  // Gamma_{s_1} ... Gamma_{s_r}
};

class AndersonThakur {
 public:
  explicit AndersonThakur(std::shared_ptr<PowerSums> zeta);

  const FieldPtr& field() const { return zeta_->field(); }
  PowerSums& zeta() { return *zeta_; }

  // Exact RHS Gamma_s S_d(s) L_d^s; throws error("RHS not integral")
  // if the exact rational fails to be a polynomial.
  SparsePoly rhs_exact(int s, int d);

  AtPolynomial at_poly(int n, const AtOptions& opt = {});

  // zeta_A(s) = (1/prod Gamma_{s_j}) sum_u a_u Li_s(u) with u running over
  // the Cartesian product of the coefficient lists of the H_{s_j - 1}.
  Decomposition decompose_mzv(const Composition& s);

  // Both sides evaluated independently: multizeta on the left,
  // cmpl_eval over the decomposition on the right (the Gamma-cleared
  // identity).  corrupt negates one a_u to exercise the failure path.
  VerificationReport verify_decomposition(const Composition& s, i64 err, bool corrupt = false);

 private:
  std::shared_ptr<PowerSums> zeta_;
  std::shared_mutex mu_;
  std::map<int, AtPolynomial> cache_;
};

}  // namespace fqz
