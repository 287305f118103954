#pragma once

#include <string>

#include "fqzeta/laurent.hpp"

namespace fqz {

// Outcome of a numeric identity check.  For a pass, margin counts the
// coefficient positions certified zero between the highest exponent
// where a discrepancy could have appeared and the residual's error
// degree.  For a fail, margin is the distance of the leading discrepancy
// above the error degree (positive = robust discrepancy).
struct VerificationReport {
  bool pass = false;
  i64 margin = 0;
  std::string detail;
};

inline VerificationReport report_from_residual(const LaurentNumber& residual, i64 potential_hi,
                                               std::string detail = {}) {
  VerificationReport r;
  r.detail = std::move(detail);
  if (residual.zero_within_precision()) {
    r.pass = true;
    r.margin = residual.is_exact() ? std::numeric_limits<i64>::max()
                                   : potential_hi - residual.err_deg();
  } else {
    r.pass = false;
    i64 lead = residual.window().rbegin()->first;
    r.margin = residual.is_exact() ? std::numeric_limits<i64>::max() : lead - residual.err_deg();
  }
  return r;
}

inline VerificationReport combine_reports(const VerificationReport& a, const VerificationReport& b) {
  VerificationReport r;
  r.pass = a.pass && b.pass;
  r.margin = std::min(a.margin, b.margin);
  r.detail = a.detail.empty() ? b.detail : (b.detail.empty() ? a.detail : a.detail + "; " + b.detail);
  return r;
}

}  // namespace fqz
