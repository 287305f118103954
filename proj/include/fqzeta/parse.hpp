#pragma once

#include <string>

#include "fqzeta/graded.hpp"

namespace fqz {

// Expression grammar over F_q(theta).  The variable token `x` stands for
// theta; coefficients are integers mod p, or tuples [a0,a1,...] over F_p
// when e > 1; operators + - * / ^ and parentheses.  Division yields a
// rational function in lowest terms.  Syntax errors report the offset.
RationalFunction parse_expr(const std::string& text, const FieldPtr& cfg);

// parse_expr restricted to polynomial results.
Poly parse_poly(const std::string& text, const FieldPtr& cfg);

std::string format_fq(const FieldConfig& cfg, Fq c);
// Lowest exponent first: "1+x+x^2".
std::string format_poly(const Poly& p);
std::string format_rational(const RationalFunction& r);
// Highest exponent first with explicit error marker: "x^2+1+x^-3+O(x^-10)";
// the marker O(x^k) stands for an error term all of whose exponents are < k.
std::string format_laurent(const LaurentNumber& v);
std::string format_graded(const GradedNumber& v);

}  // namespace fqz
