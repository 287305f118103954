#pragma once

#include <memory>
#include <vector>

#include "fqzeta/common.hpp"

namespace fqz {

// Element of F_q, encoded as an index in [0, q).  The index is the base-p
// digit expansion of the residue in F_p[x]/(modulus): value = sum a_i p^i
// where a_i is the coefficient of x^i.  All arithmetic goes through the
// owning FieldConfig.
struct Fq {
  uint32_t v = 0;
  friend bool operator==(Fq a, Fq b) { return a.v == b.v; }
  friend bool operator!=(Fq a, Fq b) { return a.v != b.v; }
  bool is_zero() const { return v == 0; }
  bool is_one() const { return v == 1; }
};

// Description of F_q, q = p^e, as F_p[x]/(modulus).  Immutable after
// construction; shared between all values of one computation via
// shared_ptr.  Construction verifies p prime and modulus irreducible.
class FieldConfig {
 public:
  // modulus: coefficients of a monic degree-e polynomial over F_p,
  // lowest degree first, modulus[e] == 1.
  FieldConfig(int p, std::vector<int> modulus);

  int p() const { return p_; }
  int e() const { return e_; }
  i64 q() const { return q_; }
  const std::vector<int>& modulus() const { return modulus_; }

  Fq zero() const { return Fq{0}; }
  Fq one() const { return Fq{1}; }
  // Element from an integer, reduced mod p (e >= 1: embeds the prime field).
  Fq from_int(long long n) const;
  // Element from base-p digits (coefficients of the residue).
  Fq from_digits(const std::vector<int>& digits) const;
  std::vector<int> digits(Fq a) const;

  Fq add(Fq a, Fq b) const;
  Fq sub(Fq a, Fq b) const;
  Fq neg(Fq a) const;
  Fq mul(Fq a, Fq b) const;
  Fq inv(Fq a) const;
  Fq pow(Fq a, i64 n) const;

  // True iff a lies in the prime field F_p.
  bool in_prime_field(Fq a) const { return a.v < static_cast<uint32_t>(p_); }

  // Component of a on the basis element x^i of F_q over F_p.
  int component(Fq a, int i) const;

 private:
  int p_;
  int e_;
  i64 q_;
  std::vector<int> modulus_;
  bool tables_;
  std::vector<uint16_t> add_tab_, mul_tab_;
  std::vector<uint16_t> inv_tab_, neg_tab_;

  Fq mul_generic(Fq a, Fq b) const;
  Fq add_generic(Fq a, Fq b) const;
  void build_tables();
};

using FieldPtr = std::shared_ptr<const FieldConfig>;

// Field with a built-in modulus for q in {2,3,4,5,7,8,9,16,25,27};
// throws for other q (construct FieldConfig directly for those).
FieldPtr make_field(i64 q);
FieldPtr make_field(int p, std::vector<int> modulus);

}  // namespace fqz
