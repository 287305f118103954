#include <doctest.h>

#include <random>

#include "fqzeta/parse.hpp"
#include "fqzeta/zeta.hpp"

using namespace fqz;

namespace {

struct Ctx {
  FieldPtr cfg;
  std::shared_ptr<CarlitzCache> carlitz;
  std::shared_ptr<PowerSums> ps;
  explicit Ctx(i64 q) : cfg(make_field(q)), carlitz(std::make_shared<CarlitzCache>(cfg)),
                        ps(std::make_shared<PowerSums>(carlitz)) {}
};

}  // namespace

TEST_CASE("power sum basics and hand oracles") {
  Ctx c2(2);
  // S_0(s) = 1: the only monic of degree 0
  for (int s = 1; s <= 4; ++s) {
    LaurentNumber v = c2.ps->power_sum(s, 0, -20);
    CHECK(v.is_exact());
    CHECK(v.window().size() == 1);
    CHECK(v.window().begin()->second.is_one());
  }

  // q=2: S_1(1) = 1/theta + 1/(theta+1) = 1/(theta^2+theta), by the
  // independent two-term oracle
  LaurentNumber oracle = LaurentNumber::from_rational(parse_expr("1/x + 1/(x+1)", c2.cfg), -40);
  LaurentNumber got = c2.ps->power_sum(1, 1, -40);
  CHECK((got - oracle).zero_within_precision());
  for (i64 e = -2; e >= -40; --e) {
    auto cf = got.coeff(e);
    REQUIRE(cf);
    CHECK(cf->is_one());
  }

  // q=3: S_2(1) by direct 9-term evaluation; deg <= -2 and nonzero
  Ctx c3(3);
  LaurentNumber s21 = c3.ps->power_sum_bruteforce(1, 2, -40);
  REQUIRE(s21.deg());
  CHECK(*s21.deg() <= -2);
  CHECK(!s21.zero_within_precision());
  CHECK((s21 - c3.ps->power_sum(1, 2, -40)).zero_within_precision());
}

TEST_CASE("classical closed form S_d(s) = 1/L_d^s for s <= q") {
  for (i64 q : {2, 3, 4, 9}) {
    Ctx c(q);
    int dmax = q <= 4 ? 3 : 2;
    for (int d = 1; d <= dmax; ++d)
      for (int s = 1; s <= static_cast<int>(q); ++s) {
        LaurentNumber got = c.ps->power_sum(s, d, -40);
        LaurentNumber expect = c.carlitz->little_l_inv_pow(d, s, -40);
        CHECK((got - expect).zero_within_precision());
      }
  }
}

TEST_CASE("enumeration route matches the symmetric-function route") {
  for (i64 q : {2, 3, 4}) {
    Ctx c(q);
    for (int d = 1; d <= (q == 2 ? 5 : 3); ++d)
      for (int s = 1; s <= 6; ++s) {
        LaurentNumber brute = c.ps->power_sum_bruteforce(s, d, -50);
        SparseRat t = c.ps->power_sum_scaled_exact(s, d);
        LaurentNumber num = LaurentNumber::from_sparse(t.num);
        LaurentNumber den = (LaurentNumber::from_poly(t.den) *
                             c.carlitz->little_l_window(d, 120).pow(s, kExact));
        LaurentNumber sym = num * den.inv(-80);
        CHECK((brute - sym).truncated(-50).zero_within_precision());
      }
  }
}

TEST_CASE("power sum degree bounds hold on every computed value") {
  for (i64 q : {2, 3}) {
    Ctx c(q);
    for (int s = 1; s <= 4; ++s)
      for (int d = 0; d <= 6; ++d) {
        LaurentNumber v = c.ps->power_sum(s, d, -60);
        auto dg = v.deg();
        if (dg) {
          CHECK(*dg <= -static_cast<i64>(s) * d);
          CHECK(*dg <= c.ps->power_sum_deg_bound(s, d));
        }
      }
  }
}

TEST_CASE("enumeration guard") {
  Ctx c(3);
  CHECK_THROWS_WITH_AS(c.ps->power_sum_bruteforce(1, 20, -10), "enumeration guard exceeded", error);
}

TEST_CASE("multizeta examples") {
  // refinement consistency: deeper precision never changes certified
  // coefficients
  Ctx c3(3);
  LaurentNumber shallow = c3.ps->multizeta(Composition{2, 1}, -30);
  LaurentNumber deep = c3.ps->multizeta(Composition{2, 1}, -70);
  CHECK((shallow - deep.truncated(-30)).zero_within_precision());

  // q=2: zeta(1)^2 = zeta(2) coefficient-for-coefficient (char 2 Frobenius)
  Ctx c2(2);
  LaurentNumber z1 = c2.ps->multizeta(Composition{1}, -70);
  LaurentNumber z2 = c2.ps->multizeta(Composition{2}, -60);
  CHECK((z1 * z1 - z2).zero_within_precision());
  CHECK((z1 * z1 - z2).err_deg() <= -60);

  // q=2: zeta(2,1) nonzero within err -60
  LaurentNumber z21 = c2.ps->multizeta(Composition{2, 1}, -60);
  REQUIRE(z21.deg());
  CHECK(!z21.zero_within_precision());

  CHECK(mzv_weight(Composition{2, 1}) == 3);
  CHECK(mzv_depth(Composition{2, 1}) == 2);
  CHECK(mzv_weight(Composition{5}) == 5);
  CHECK(mzv_depth(Composition{5}) == 1);
  CHECK(mzv_weight(Composition{1, 1, 1}) == 3);
  CHECK(mzv_depth(Composition{1, 1, 1}) == 3);
}

TEST_CASE("Frobenius compatibility: zeta(p s) = zeta(s)^p") {
  for (i64 q : {2, 3}) {
    Ctx c(q);
    int p = c.cfg->p();
    std::vector<Composition> comps{Composition{1}, Composition{2}, Composition{1, 1},
                                   Composition{2, 1}};
    for (const auto& comp : comps) {
      std::vector<int> scaled;
      for (int s : comp.parts) scaled.push_back(p * s);
      LaurentNumber lhs = c.ps->multizeta(Composition(scaled), -50);
      LaurentNumber rhs = c.ps->multizeta(comp, -50).pow(p, -50);
      CHECK((lhs - rhs).truncated(-50).zero_within_precision());
    }
  }
}

TEST_CASE("threaded enumeration is deterministic") {
  Ctx c(2);
  LaurentNumber a = c.ps->power_sum_bruteforce(1, 9, -50, 1);
  LaurentNumber b = c.ps->power_sum_bruteforce(1, 9, -50, 4);
  LaurentNumber d = c.ps->power_sum_bruteforce(1, 9, -50, 7);
  CHECK(a == b);
  CHECK(a == d);
}

TEST_CASE("non-vanishing regression at weight <= 6") {
  // every MZV of weight <= 6 has a determined nonzero leading coefficient;
  // a regression suite, not a theorem.  Deep compositions are smaller than
  // q^-60 (the leading index tuple alone has degree below -100 at depth 6),
  // so the precision is refined until the lead is determined.
  for (i64 q : {2, 3}) {
    Ctx c(q);
    for (i64 w = 1; w <= 6; ++w) {
      for (const auto& comp : compositions_of_weight(w, static_cast<int>(w))) {
        INFO("q=", q, " s=", comp.str());
        std::optional<i64> dg;
        LaurentNumber v;
        for (i64 e : {-60, -150, -600}) {
          v = c.ps->multizeta(comp, e);
          dg = v.deg();
          if (dg) break;
        }
        REQUIRE(dg);
        CHECK(!v.leading()->is_zero());
      }
    }
  }
}
