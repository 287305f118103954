#include <doctest.h>

#include <functional>
#include <random>
#include <set>

#include "fqzeta/cmpl.hpp"
#include "fqzeta/parse.hpp"

using namespace fqz;

namespace {

struct Ctx {
  FieldPtr cfg;
  std::shared_ptr<CarlitzCache> carlitz;
  std::shared_ptr<PowerSums> ps;
  explicit Ctx(i64 q) : cfg(make_field(q)), carlitz(std::make_shared<CarlitzCache>(cfg)),
                        ps(std::make_shared<PowerSums>(carlitz)) {}
  RationalFunction rat(const std::string& e) const { return parse_expr(e, cfg); }
};

// independent brute-force stuffle enumerator: generate all zero-padded
// interleavings as strings and deduplicate
std::multiset<std::string> stuffle_oracle(const Composition& s, const Composition& sp) {
  std::multiset<std::string> out;
  int r = s.depth(), rp = sp.depth();
  for (int rr = std::max(r, rp); rr <= r + rp; ++rr) {
    std::vector<int> lpos(static_cast<size_t>(r));
    std::vector<bool> lsel(static_cast<size_t>(rr), false);
    std::function<void(int, int)> recL = [&](int idx, int from) {
      if (idx == r) {
        std::vector<bool> rsel(static_cast<size_t>(rr), false);
        std::function<void(int, int)> recR = [&](int j, int f) {
          if (j == rp) {
            std::string key;
            for (int pos = 0; pos < rr; ++pos) {
              int v = 0, vp = 0;
              for (int a = 0; a < r; ++a)
                if (lpos[static_cast<size_t>(a)] == pos) v = s.parts[static_cast<size_t>(a)];
              for (int b = 0, cnt = 0; b < rr; ++b) {
                if (rsel[static_cast<size_t>(b)]) {
                  if (b == pos) vp = sp.parts[static_cast<size_t>(cnt)];
                  ++cnt;
                }
              }
              if (v == 0 && vp == 0) return;  // both vanish: not allowed
              key += "(" + std::to_string(v) + "|" + std::to_string(vp) + ")";
            }
            out.insert(key);
            return;
          }
          for (int pos = f; pos < rr; ++pos) {
            rsel[static_cast<size_t>(pos)] = true;
            recR(j + 1, pos + 1);
            rsel[static_cast<size_t>(pos)] = false;
          }
        };
        recR(0, 0);
        return;
      }
      for (int pos = from; pos < rr; ++pos) {
        lpos[static_cast<size_t>(idx)] = pos;
        recL(idx + 1, pos + 1);
      }
    };
    recL(0, 0);
  }
  return out;
}

std::multiset<std::string> stuffle_keys(const std::vector<StuffleTerm>& terms,
                                        const Composition& s, const Composition& sp) {
  std::multiset<std::string> out;
  for (const auto& t : terms) {
    std::string key;
    for (const auto& src : t.recipe) {
      int v = src.from_left >= 0 ? s.parts[static_cast<size_t>(src.from_left)] : 0;
      int vp = src.from_right >= 0 ? sp.parts[static_cast<size_t>(src.from_right)] : 0;
      key += "(" + std::to_string(v) + "|" + std::to_string(vp) + ")";
    }
    out.insert(key);
  }
  return out;
}

}  // namespace

TEST_CASE("convergence polydisc") {
  Ctx c2(2);
  CHECK(in_small_polydisc(CmplPoint(Composition{1}, {c2.rat("x")}), 2));       // deg 1 < 2
  CHECK(!in_small_polydisc(CmplPoint(Composition{1}, {c2.rat("x^2")}), 2));    // deg 2 not < 2
  Ctx c3(3);
  CHECK(in_small_polydisc(CmplPoint(Composition{2}, {c3.rat("x^2")}), 3));     // 2*2 < 2*3
  CHECK_THROWS_AS(cmpl_eval(*c2.ps, CmplPoint(Composition{1}, {c2.rat("x^2")}), -20), error);
}

TEST_CASE("polylogarithm values") {
  Ctx c2(2);
  // log_n(0) = 0
  CHECK(carlitz_polylog(*c2.ps, 3, RationalFunction::zero(c2.cfg), -30).is_exact_zero());

  // log_1(1): leading terms 1 + 1/L_1 + ... straight from the definition
  LaurentNumber v = carlitz_polylog(*c2.ps, 1, c2.rat("1"), -30);
  auto c0 = v.coeff(0);
  REQUIRE(c0);
  CHECK(c0->is_one());
  LaurentNumber first_two = LaurentNumber::constant(c2.cfg, c2.cfg->one()) +
                            c2.carlitz->little_l_inv_pow(1, 1, -30);
  // they agree above deg of the i=2 term (-L_2 degree = -6)
  CHECK((v - first_two).truncated(-5).zero_within_precision());

  // q=2: log_1(theta) converges (|theta| = q < q^2) and is nonzero
  LaurentNumber lt = carlitz_polylog(*c2.ps, 1, c2.rat("x"), -40);
  REQUIRE(lt.deg());
  CHECK(!lt.zero_within_precision());

  // Li_1(1) = zeta_A(1) for q=2 (depth-one decomposition with H_0 = 1)
  LaurentNumber z1 = c2.ps->multizeta(Composition{1}, -60);
  LaurentNumber li1 = cmpl_eval(*c2.ps, CmplPoint(Composition{1}, {c2.rat("1")}), -60);
  CHECK((z1 - li1).zero_within_precision());

  // q=3, s=(2,1), u=(1,1): the leading index tuple (1,0) gives 1/L_1^2,
  // so the value has degree exactly -6
  Ctx c3(3);
  LaurentNumber li = cmpl_eval(*c3.ps, CmplPoint(Composition{2, 1}, {c3.rat("1"), c3.rat("1")}), -40);
  REQUIRE(li.deg());
  CHECK(*li.deg() == -6);
}

TEST_CASE("general term degree formula, two routes") {
  // (q-1) * log_q |term| computed from the scaled formula and from raw
  // degree arithmetic agree
  for (i64 q : {2, 3}) {
    Ctx c(q);
    std::mt19937 rng(17 + static_cast<unsigned>(q));
    for (int iter = 0; iter < 40; ++iter) {
      std::uniform_int_distribution<int> dpart(1, 3), didx(0, 4), ddeg(-2, 1);
      int r = 1 + iter % 3;
      std::vector<int> parts;
      std::vector<i64> degs, idx;
      i64 last = -1;
      for (int j = r - 1; j >= 0; --j) {
        parts.insert(parts.begin(), dpart(rng));
        degs.insert(degs.begin(), ddeg(rng));
        last = last + 1 + didx(rng);
        idx.insert(idx.begin(), last);
      }
      // raw route: sum q^i deg u - s * deg L_i, scaled by (q-1)
      i64 raw = 0;
      for (int j = 0; j < r; ++j)
        raw += checked_pow(q, static_cast<int>(idx[static_cast<size_t>(j)])) * degs[static_cast<size_t>(j)] -
               static_cast<i64>(parts[static_cast<size_t>(j)]) *
                   c.carlitz->little_l_deg(static_cast<int>(idx[static_cast<size_t>(j)]));
      // formula route: q/(q-1) sum s_j + sum q^(i_j) (deg u_j - s_j q/(q-1))
      i64 formula = 0;
      for (int j = 0; j < r; ++j) {
        formula += q * parts[static_cast<size_t>(j)];
        formula += checked_pow(q, static_cast<int>(idx[static_cast<size_t>(j)])) *
                   ((q - 1) * degs[static_cast<size_t>(j)] - q * parts[static_cast<size_t>(j)]);
      }
      CHECK((q - 1) * raw == formula);
    }
  }
}

TEST_CASE("stuffle expansion shapes") {
  Composition s1{1}, s2{2};
  auto t3 = stuffle_expand(s1, s2);
  CHECK(t3.size() == 3);  // (s,s'), (s',s), (s+s')
  std::multiset<std::vector<int>> comps;
  for (const auto& t : t3) comps.insert(t.composition.parts);
  CHECK(comps.count({1, 2}) == 1);
  CHECK(comps.count({2, 1}) == 1);
  CHECK(comps.count({3}) == 1);

  // the five-term depth (1)x(2) expansion
  Composition sp{3, 4};
  auto t5 = stuffle_expand(Composition{2}, sp);
  CHECK(t5.size() == 5);
  std::multiset<std::vector<int>> c5;
  for (const auto& t : t5) c5.insert(t.composition.parts);
  CHECK(c5.count({2, 3, 4}) == 1);
  CHECK(c5.count({3, 2, 4}) == 1);
  CHECK(c5.count({3, 4, 2}) == 1);
  CHECK(c5.count({5, 4}) == 1);   // merged first
  CHECK(c5.count({3, 6}) == 1);   // merged second

  // depth (2,2): cross-checked against the brute-force interleaving oracle
  Composition a{1, 2}, b{3, 5};
  auto terms = stuffle_expand(a, b);
  CHECK(terms.size() == 13);
  CHECK(stuffle_keys(terms, a, b) == stuffle_oracle(a, b));

  // weight additivity of every term
  for (const auto& t : terms) CHECK(t.composition.weight() == a.weight() + b.weight());
}

TEST_CASE("stuffle numeric verification") {
  Ctx c2(2);
  // q=2, s = s' = 1, z = z' = 1 (merged coordinate 1, Li_2(1) converges)
  auto rep = stuffle_verify(*c2.ps, Composition{1}, Composition{1}, {c2.rat("1")}, {c2.rat("1")}, -50);
  CHECK(rep.pass);
  CHECK(rep.margin >= 40);

  Ctx c3(3);
  auto rep2 = stuffle_verify(*c3.ps, Composition{1}, Composition{2}, {c3.rat("x")}, {c3.rat("1")}, -50);
  CHECK(rep2.pass);

  // dropped-term negative control fails with positive margin
  auto bad = stuffle_verify(*c3.ps, Composition{1}, Composition{2}, {c3.rat("x")}, {c3.rat("1")}, -50, true);
  CHECK(!bad.pass);
  CHECK(bad.margin > 0);
}

TEST_CASE("randomized stuffle suite") {
  // 10 random in-domain points per q at err -40
  for (i64 q : {2, 3}) {
    Ctx c(q);
    std::mt19937 rng(1000 + static_cast<unsigned>(q));
    std::uniform_int_distribution<int> dpart(1, 2);
    std::uniform_int_distribution<i64> dcoeff(0, q - 1);
    auto rnd_point = [&](const Composition& comp) {
      std::vector<RationalFunction> pt;
      for (int s : comp.parts) {
        // polynomial of degree < s q/(q-1) (strict polydisc)
        i64 max_deg = (static_cast<i64>(s) * q - 1) / (q - 1);
        if (max_deg * (q - 1) >= static_cast<i64>(s) * q) --max_deg;
        std::vector<Fq> cs(static_cast<size_t>(std::max<i64>(max_deg, 0)) + 1);
        for (auto& x : cs) x = Fq{static_cast<uint32_t>(dcoeff(rng))};
        Poly p(c.cfg, cs);
        if (p.is_zero()) p = Poly::one(c.cfg);
        pt.emplace_back(p);
      }
      return pt;
    };
    for (int iter = 0; iter < 10; ++iter) {
      Composition s{dpart(rng)};
      Composition sp = iter % 2 ? Composition{dpart(rng)} : Composition{dpart(rng), dpart(rng)};
      auto z = rnd_point(s), zp = rnd_point(sp);
      INFO("q=", q, " s=", s.str(), " s'=", sp.str());
      auto rep = stuffle_verify(*c.ps, s, sp, z, zp, -40);
      CHECK(rep.pass);
    }
  }
}

TEST_CASE("zero coordinates and the unsafe domain flag") {
  Ctx c(3);
  // a zero coordinate kills every term of the series
  LaurentNumber v = cmpl_eval(*c.ps, CmplPoint(Composition{2, 1}, {c.rat("0"), c.rat("1")}), -30);
  CHECK(v.is_exact_zero());

  // outside the strict polydisc: rejected by default, index-capped with
  // the explicit flag (result flagged non-rigorous by construction)
  CmplOptions opt;
  opt.unsafe_domain = true;
  opt.unsafe_index_cap = 6;
  LaurentNumber u = cmpl_eval(*c.ps, CmplPoint(Composition{1}, {c.rat("x^3")}), -30, opt);
  CHECK(!u.window().empty());
}
