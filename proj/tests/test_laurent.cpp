#include <doctest.h>

#include <random>

#include "fqzeta/graded.hpp"
#include "fqzeta/parse.hpp"

using namespace fqz;

namespace {

LaurentNumber embed(const FieldPtr& cfg, const std::string& expr, i64 prec) {
  return LaurentNumber::from_rational(parse_expr(expr, cfg), prec);
}

}  // namespace

TEST_CASE("addition precision contract") {
  FieldPtr cfg = make_field(2);
  // exact + exact stays exact
  LaurentNumber a = embed(cfg, "x+1", -100);
  LaurentNumber b = embed(cfg, "x^2", -100);
  LaurentNumber s = a + b;
  CHECK(s.is_exact());
  CHECK(s == embed(cfg, "x^2+x+1", -100));

  // sub-precision term absorbed: (1 + O(x^-5)) + x^-6 = 1 + O(x^-5)
  LaurentNumber one5 = LaurentNumber::constant(cfg, cfg->one()).truncated(-5);
  LaurentNumber tiny = LaurentNumber::monomial(cfg, cfg->one(), -6);
  LaurentNumber t = one5 + tiny;
  CHECK(t.err_deg() == -5);
  CHECK(t.window().size() == 1);
  CHECK(t.window().begin()->first == 0);

  // char 2: x^-1 + x^-1 = 0 with the precision kept
  LaurentNumber inv_theta = LaurentNumber::monomial(cfg, cfg->one(), -1).truncated(-10);
  LaurentNumber zero = inv_theta + inv_theta;
  CHECK(zero.zero_within_precision());
  CHECK(zero.err_deg() == -10);
}

TEST_CASE("multiplication precision contract") {
  FieldPtr cfg2 = make_field(2);
  CHECK((embed(cfg2, "x", -50) * embed(cfg2, "x", -50)) == embed(cfg2, "x^2", -50));

  // (1 + O(x^-N)) * x^3 = x^3 + O(x^(3-N))
  LaurentNumber a = LaurentNumber::constant(cfg2, cfg2->one()).truncated(-20);
  LaurentNumber b = LaurentNumber::monomial(cfg2, cfg2->one(), 3);
  CHECK((a * b).err_deg() == -17);

  // q=3: (x - x^3) * its inverse at err -20 = 1 + O(x^-17)
  FieldPtr cfg3 = make_field(3);
  Poly f = parse_poly("x+2*x^3", cfg3);  // x - x^3
  LaurentNumber finv = LaurentNumber::from_poly(f).inv(-20);
  LaurentNumber prod = LaurentNumber::from_poly(f) * finv;
  CHECK(prod.err_deg() == -17);
  CHECK(prod.window().size() == 1);
  CHECK(prod.window().begin()->first == 0);
  CHECK(prod.window().begin()->second.is_one());
}

TEST_CASE("geometric-series inversion") {
  FieldPtr cfg = make_field(2);
  // inverse of a monomial is exact
  LaurentNumber th = LaurentNumber::monomial(cfg, cfg->one(), 1);
  LaurentNumber thinv = th.inv(-30);
  CHECK(thinv.is_exact());
  CHECK(thinv.window().begin()->first == -1);

  // oracle: 1/(x^2+x) = x^-2 (1 + x^-1)^-1 = x^-2 + x^-3 + x^-4 + ...
  LaurentNumber v = embed(cfg, "x^2+x", -200).inv(-12);
  for (i64 e = -2; e >= -12; --e) {
    auto c = v.coeff(e);
    REQUIRE(c);
    CHECK(c->is_one());
  }
  // counter-check by multiplying back
  LaurentNumber back = v * embed(cfg, "x^2+x", -200);
  CHECK(back.window().size() == 1);
  CHECK(back.window().begin()->second.is_one());

  // inverse of zero-within-precision reports the leading-term failure
  LaurentNumber z = LaurentNumber::zero_to(cfg, -10);
  CHECK_THROWS_WITH_AS(z.inv(-20), "indeterminate leading term", error);
}

TEST_CASE("frobenius power") {
  FieldPtr cfg3 = make_field(3);
  // q=3, n=1: x + 1 -> x^3 + 1 (Frobenius additivity, F_q coefficients fixed)
  CHECK(embed(cfg3, "x+1", -10).frobenius_power(1) == embed(cfg3, "x^3+1", -10));
  CHECK(embed(cfg3, "x^2+2*x", -10).frobenius_power(0) == embed(cfg3, "x^2+2*x", -10));

  // q=2, n=2: x^-1 + O(x^-9) -> x^-4 + O(x^-36)
  FieldPtr cfg2 = make_field(2);
  LaurentNumber a = LaurentNumber::monomial(cfg2, cfg2->one(), -1).truncated(-9);
  LaurentNumber b = a.frobenius_power(2);
  CHECK(b.err_deg() == -36);
  CHECK(b.window().begin()->first == -4);

  // composition law on twists
  std::mt19937 rng(5);
  for (int iter = 0; iter < 40; ++iter) {
    std::uniform_int_distribution<int> dm(0, 2);
    int m = dm(rng), n = dm(rng);
    LaurentNumber x = embed(cfg3, "x^2+2*x+1", -30);
    CHECK(x.frobenius_power(m + n) == x.frobenius_power(m).frobenius_power(n));
  }
}

TEST_CASE("degree queries and three-valued equality") {
  FieldPtr cfg = make_field(2);
  LaurentNumber v = embed(cfg, "x^3+x", -40);
  REQUIRE(v.deg());
  CHECK(*v.deg() == 3);
  // leading coefficient at the error boundary is not a degree witness
  LaurentNumber w = LaurentNumber::monomial(cfg, cfg->one(), -5).truncated(-5);
  CHECK(!w.deg());

  LaurentNumber vt = v.truncated(-40);
  CHECK(LaurentNumber::equal(vt, vt) == Ternary::unknown);  // inexact: equal within precision
  LaurentNumber ve = LaurentNumber::from_poly(parse_poly("x^3+x", cfg));
  CHECK(LaurentNumber::equal(ve, ve) == Ternary::yes);
  CHECK(LaurentNumber::equal(v, v + LaurentNumber::constant(cfg, cfg->one())) == Ternary::no);
}

TEST_CASE("precision soundness: exact vs truncated evaluation") {
  // every composite expression evaluated both ways agrees on all
  // coefficients above the tracked err_deg of the truncated result
  for (i64 q : {2, 3}) {
    FieldPtr cfg = make_field(q);
    std::mt19937 rng(400 + static_cast<unsigned>(q));
    std::uniform_int_distribution<i64> dc(0, q - 1);
    auto rnd_rat = [&]() {
      std::vector<Fq> nc(4), dc2(3);
      for (auto& x : nc) x = Fq{static_cast<uint32_t>(dc(rng))};
      for (auto& x : dc2) x = Fq{static_cast<uint32_t>(dc(rng))};
      Poly num(cfg, nc), den(cfg, dc2);
      if (den.is_zero()) den = Poly::theta(cfg);
      return RationalFunction(num, den);
    };
    for (int iter = 0; iter < 50; ++iter) {
      RationalFunction ra = rnd_rat(), rb = rnd_rat();
      if (ra.is_zero() || rb.is_zero()) continue;
      LaurentNumber deep_a = LaurentNumber::from_rational(ra, -90);
      LaurentNumber deep_b = LaurentNumber::from_rational(rb, -90);
      LaurentNumber sh_a = LaurentNumber::from_rational(ra, -30);
      LaurentNumber sh_b = LaurentNumber::from_rational(rb, -30);
      LaurentNumber deep_expr = deep_a * deep_b + deep_a.inv(-80);
      LaurentNumber sh_expr = sh_a * sh_b + sh_a.inv(-25);
      LaurentNumber diff = deep_expr - sh_expr;
      CHECK(diff.zero_within_precision());
      CHECK(diff.err_deg() == sh_expr.err_deg());
    }
  }
}

TEST_CASE("graded multiplication") {
  FieldPtr cfg3 = make_field(3);
  LaurentNumber u = LaurentNumber::from_rational(parse_expr("x+1", cfg3), -20);
  LaurentNumber v = LaurentNumber::from_rational(parse_expr("x^2", cfg3), -20);
  // q=3: (u, grade 1)(v, grade 1) = (-theta u v, grade 0) since tt^2 = -theta
  GradedNumber gu(u, 1), gv(v, 1);
  GradedNumber p = gu * gv;
  CHECK(p.grade() == 0);
  LaurentNumber expected = u * v * LaurentNumber::monomial(cfg3, cfg3->neg(cfg3->one()), 1);
  CHECK(LaurentNumber::equal(p.unit(), expected) != Ternary::no);

  GradedNumber p0 = GradedNumber(u, 0) * GradedNumber(v, 0);
  CHECK(p0.grade() == 0);
  CHECK(LaurentNumber::equal(p0.unit(), u * v) != Ternary::no);

  // q=2: the grade group is trivial
  FieldPtr cfg2 = make_field(2);
  GradedNumber g2(LaurentNumber::constant(cfg2, cfg2->one()), 5);
  CHECK(g2.grade() == 0);

  // associativity/commutativity and (x, g)^(q-1) has grade 0
  GradedNumber a(u, 1), b(v, 1), c(u + v, 0);
  CHECK(GradedNumber::equal((a * b) * c, a * (b * c)) != Ternary::no);
  CHECK(GradedNumber::equal(a * b, b * a) != Ternary::no);
  CHECK(a.pow(cfg3->q() - 1, -20).grade() == 0);
}
