#pragma once

#include <string>

#include "fqzeta/graded.hpp"

namespace fqz {

// Versioned JSON encodings (top-level "schema" integer bumps on breaking
// changes).  Laurent values: {"schema":1,"q":...,"coeffs":[[exp,"c"],...],
// "err_deg":...,"grade":...} with coeffs ordered highest exponent first
// and err_deg null for exact values.
std::string laurent_to_json(const LaurentNumber& v, int indent = -1);
std::string graded_to_json(const GradedNumber& v, int indent = -1);
std::string poly_to_json(const Poly& p, int indent = -1);

// Stable 64-bit FNV-1a digest of a canonical string, hex encoded; used
// for run manifests.
std::string digest_hex(const std::string& canonical);

}  // namespace fqz
