#include <doctest.h>

#include "fqzeta/parse.hpp"
#include "fqzeta/tseries.hpp"

using namespace fqz;

TEST_CASE("twisting of t-series") {
  FieldPtr cfg3 = make_field(3);
  // (theta t)^(1) = theta^3 t
  TSeries f(cfg3, 2);
  f.set_coeff(1, LaurentNumber::from_poly(Poly::theta(cfg3)));
  TSeries g = f.twist(1);
  CHECK(g.coeff(1) == LaurentNumber::from_poly(parse_poly("x^3", cfg3)));
  CHECK(f.twist(0).coeff(1) == f.coeff(1));

  // q=2: (theta^2 + theta^4 t)^(-1) = theta + theta^2 t
  FieldPtr cfg2 = make_field(2);
  TSeries h(cfg2, 1);
  h.set_coeff(0, LaurentNumber::from_poly(parse_poly("x^2", cfg2)));
  h.set_coeff(1, LaurentNumber::from_poly(parse_poly("x^4", cfg2)));
  TSeries hi = h.twist(-1);
  CHECK(hi.coeff(0) == LaurentNumber::from_poly(parse_poly("x", cfg2)));
  CHECK(hi.coeff(1) == LaurentNumber::from_poly(parse_poly("x^2", cfg2)));

  // odd exponents are not q-th powers
  TSeries bad(cfg2, 0);
  bad.set_coeff(0, LaurentNumber::from_poly(parse_poly("x^3", cfg2)));
  CHECK_THROWS_WITH_AS(bad.twist(-1), "not a q-th power", error);
  // inexact coefficients are rejected as well
  TSeries bad2(cfg2, 0);
  bad2.set_coeff(0, LaurentNumber::from_poly(parse_poly("x^2", cfg2)).truncated(-5));
  CHECK_THROWS_AS(bad2.twist(-1), error);
}

TEST_CASE("fixed field of the inverse twist") {
  // rational functions in t with F_q coefficients are fixed; anything with
  // a coefficient outside F_q moves
  FieldPtr cfg = make_field(3);
  TSeries f(cfg, 3);  // 1 + 2t + t^3, coefficients constants
  f.set_coeff(0, LaurentNumber::constant(cfg, cfg->one()));
  f.set_coeff(1, LaurentNumber::constant(cfg, cfg->from_int(2)));
  f.set_coeff(3, LaurentNumber::constant(cfg, cfg->one()));
  TSeries fi = f.twist(-1);
  for (int m = 0; m <= 3; ++m) CHECK(fi.coeff(m) == f.coeff(m));

  TSeries g(cfg, 1);  // theta^3 t is representable and moves to theta t
  g.set_coeff(1, LaurentNumber::from_poly(parse_poly("x^3", cfg)));
  TSeries gi = g.twist(-1);
  CHECK(gi.coeff(1) != g.coeff(1));
  CHECK(gi.coeff(1) == LaurentNumber::from_poly(Poly::theta(cfg)));
}

TEST_CASE("series arithmetic respects the t-truncation") {
  FieldPtr cfg = make_field(2);
  TSeries a = TSeries::one(cfg, 5);
  TSeries b(cfg, 3);
  b.set_coeff(0, LaurentNumber::constant(cfg, cfg->one()));
  b.set_coeff(3, LaurentNumber::from_poly(Poly::theta(cfg)));
  CHECK((a + b).t_trunc() == 3);
  CHECK((a * b).t_trunc() == 3);
  CHECK((a * b).coeff(3) == b.coeff(3));
}

TEST_CASE("evaluation at theta powers with caller-supplied tail") {
  FieldPtr cfg = make_field(2);
  TPoly p(cfg, {parse_poly("x", cfg), parse_poly("1", cfg)});  // x + t
  // exact polynomial: evaluation at t = theta^(q^1) = theta^2
  LaurentNumber v = p.to_series(4).eval_theta_power(1, kExact);
  CHECK(v == LaurentNumber::from_poly(parse_poly("x^2+x", cfg)));
  SparsePoly sp = p.eval_theta_power_sparse(1);
  CHECK(LaurentNumber::from_sparse(sp) == v);

  // twisted evaluation helper: (x + t)^(1) at theta = x^2 + x
  CHECK(LaurentNumber::from_sparse(p.twisted_eval_theta(1)) ==
        LaurentNumber::from_poly(parse_poly("x^2+x", cfg)));
}

TEST_CASE("TPoly algebra") {
  FieldPtr cfg = make_field(3);
  TPoly tm = TPoly::t_minus(Poly::theta(cfg));
  TPoly sq = tm * tm;
  CHECK(sq.deg_t() == 2);
  CHECK(sq.coeff(0) == parse_poly("x^2", cfg));
  CHECK(sq.coeff(1) == parse_poly("x", cfg));  // -2 theta = theta mod 3
  CHECK(tm.pow(3).deg_t() == 3);
  // twist moves theta to theta^q in the coefficients
  CHECK(tm.twist(1) == TPoly::t_minus(parse_poly("x^3", cfg)));
}
