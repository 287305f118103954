#include <doctest.h>

#include <random>

#include "fqzeta/parse.hpp"

using namespace fqz;

namespace {

Poly random_poly(std::mt19937& rng, const FieldPtr& cfg, int max_deg) {
  std::uniform_int_distribution<int> ddeg(0, max_deg);
  std::uniform_int_distribution<i64> dc(0, cfg->q() - 1);
  int deg = ddeg(rng);
  std::vector<Fq> c(static_cast<size_t>(deg) + 1);
  for (auto& x : c) x = Fq{static_cast<uint32_t>(dc(rng))};
  return Poly(cfg, std::move(c));
}

}  // namespace

TEST_CASE("field construction and built-in moduli") {
  for (i64 q : {2, 3, 4, 5, 7, 8, 9, 16, 25, 27}) {
    FieldPtr cfg = make_field(q);
    CHECK(cfg->q() == q);
    // x^q = x for all elements: the Frobenius fixes F_q
    for (uint32_t v = 0; v < q; ++v) {
      Fq a{v};
      CHECK(cfg->pow(a, q) == a);
    }
  }
  CHECK_THROWS_AS(make_field(4, {1, 0, 1}), error);  // x^2+1 reducible over F_2
  CHECK_THROWS_AS(make_field(6), error);
  CHECK_THROWS_AS(FieldConfig(4, {1, 1}), error);  // p not prime
}

TEST_CASE("field axioms on every element pair") {
  for (i64 q : {2, 3, 4, 9}) {
    FieldPtr cfg = make_field(q);
    const FieldConfig& F = *cfg;
    for (uint32_t a = 0; a < q; ++a) {
      for (uint32_t b = 0; b < q; ++b) {
        CHECK(F.add(Fq{a}, Fq{b}) == F.add(Fq{b}, Fq{a}));
        CHECK(F.mul(Fq{a}, Fq{b}) == F.mul(Fq{b}, Fq{a}));
        for (uint32_t c = 0; c < q; ++c) {
          CHECK(F.mul(Fq{a}, F.add(Fq{b}, Fq{c})) ==
                F.add(F.mul(Fq{a}, Fq{b}), F.mul(Fq{a}, Fq{c})));
          CHECK(F.mul(F.mul(Fq{a}, Fq{b}), Fq{c}) == F.mul(Fq{a}, F.mul(Fq{b}, Fq{c})));
        }
      }
      if (a) CHECK(F.mul(Fq{a}, F.inv(Fq{a})).is_one());
      CHECK(F.add(Fq{a}, F.neg(Fq{a})).is_zero());
    }
  }
}

TEST_CASE("ring axioms on random polynomial and rational triples") {
  // 200 random cases per q in {2,3,4}
  for (i64 q : {2, 3, 4}) {
    FieldPtr cfg = make_field(q);
    std::mt19937 rng(12345 + static_cast<unsigned>(q));
    for (int iter = 0; iter < 200; ++iter) {
      Poly a = random_poly(rng, cfg, 6), b = random_poly(rng, cfg, 6), c = random_poly(rng, cfg, 6);
      CHECK((a * b) * c == a * (b * c));
      CHECK(a * (b + c) == a * b + a * c);
      CHECK(a + b == b + a);
      if (!b.is_zero() && !c.is_zero()) {
        RationalFunction ra(a, b), rb(c, b);
        CHECK(ra + rb == RationalFunction(a + c, b));
        CHECK(ra * rb == RationalFunction(a * c, b * b));
      }
      // deg(fg) = deg f + deg g for nonzero f, g
      if (!a.is_zero() && !b.is_zero()) CHECK((a * b).deg() == a.deg() + b.deg());
    }
  }
}

TEST_CASE("polynomial division, gcd and lowest terms") {
  FieldPtr cfg = make_field(3);
  std::mt19937 rng(7);
  for (int iter = 0; iter < 100; ++iter) {
    Poly a = random_poly(rng, cfg, 8), b = random_poly(rng, cfg, 5);
    if (b.is_zero()) continue;
    auto [qt, r] = Poly::divmod(a, b);
    CHECK(qt * b + r == a);
    CHECK((r.is_zero() || r.deg() < b.deg()));
  }
  // rational functions stored in lowest terms with monic denominator
  RationalFunction r = parse_expr("(x^2+x)/(x^2+2*x+1)", cfg);
  CHECK(Poly::gcd(r.num(), r.den()).is_one());
  CHECK(r.den().is_monic());
}

TEST_CASE("sparse polynomials and exact division") {
  FieldPtr cfg = make_field(2);
  std::mt19937 rng(99);
  for (int iter = 0; iter < 50; ++iter) {
    Poly a = random_poly(rng, cfg, 10), b = random_poly(rng, cfg, 6);
    if (b.is_zero()) continue;
    SparsePoly prod = SparsePoly::from_poly(a * b);
    CHECK(prod.divide_exact(b).to_poly() == a);
  }
  SparsePoly big = SparsePoly::monomial(cfg, Fq{1}, 1'000'000'000);
  big.add_term(0, Fq{1});
  CHECK(big.deg() == 1'000'000'000);
  CHECK_THROWS_AS(big.divide_exact(Poly::theta(cfg)), error);
}

TEST_CASE("parser examples") {
  FieldPtr cfg2 = make_field(2);
  CHECK(parse_poly("x^2+x", cfg2) == Poly::theta(cfg2) + Poly::theta(cfg2).pow(2));

  RationalFunction r = parse_expr("(x+1)/(x^3)", cfg2);
  CHECK(r.num() == parse_poly("x+1", cfg2));
  CHECK(r.den() == parse_poly("x^3", cfg2));

  CHECK_THROWS_WITH_AS(parse_expr("x^^2", cfg2), "expected integer at offset 2", parse_error);

  // tuples over F_p for e > 1
  FieldPtr cfg4 = make_field(4);
  Poly g = parse_poly("[0,1]*x+[1,1]", cfg4);
  CHECK(g.coeff(1) == cfg4->from_digits({0, 1}));
  CHECK(g.coeff(0) == cfg4->from_digits({1, 1}));
}

TEST_CASE("formatter round-trips with the parser") {
  for (i64 q : {2, 3, 4}) {
    FieldPtr cfg = make_field(q);
    std::mt19937 rng(31 + static_cast<unsigned>(q));
    for (int iter = 0; iter < 60; ++iter) {
      Poly a = random_poly(rng, cfg, 7);
      CHECK(parse_poly(format_poly(a), cfg) == a);
      Poly b = random_poly(rng, cfg, 4);
      if (b.is_zero()) continue;
      RationalFunction r(a, b);
      CHECK(parse_expr(format_rational(r), cfg) == r);
    }
  }
}
