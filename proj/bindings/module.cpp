#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "fqzeta/anderson_thakur.hpp"
#include "fqzeta/frobenius.hpp"
#include "fqzeta/json_io.hpp"
#include "fqzeta/parse.hpp"
#include "fqzeta/relations.hpp"
#include "fqzeta/selftest.hpp"

namespace py = pybind11;
using namespace fqz;

namespace {

Composition comp_of(const std::vector<int>& parts) { return Composition(parts); }

struct PySystem {
  DifferenceSystem sys;
  Composition comp;
  std::vector<Poly> coords;
};

// One field, one cache set; the entry point for everything.
struct SessionCtx {
  FieldPtr cfg;
  std::shared_ptr<CarlitzCache> carlitz;
  std::shared_ptr<PowerSums> ps;
  std::shared_ptr<AndersonThakur> at;

  explicit SessionCtx(i64 q)
      : cfg(make_field(q)),
        carlitz(std::make_shared<CarlitzCache>(cfg)),
        ps(std::make_shared<PowerSums>(carlitz)),
        at(std::make_shared<AndersonThakur>(ps)) {}
  SessionCtx(int p, const std::vector<int>& modulus)
      : cfg(make_field(p, modulus)),
        carlitz(std::make_shared<CarlitzCache>(cfg)),
        ps(std::make_shared<PowerSums>(carlitz)),
        at(std::make_shared<AndersonThakur>(ps)) {}

  std::vector<RationalFunction> parse_point(const std::vector<std::string>& exprs) const {
    std::vector<RationalFunction> out;
    out.reserve(exprs.size());
    for (const auto& e : exprs) out.push_back(parse_expr(e, cfg));
    return out;
  }

  std::vector<Poly> parse_apoint(const std::vector<std::string>& exprs) const {
    std::vector<Poly> out;
    out.reserve(exprs.size());
    for (const auto& e : exprs) out.push_back(parse_poly(e, cfg));
    return out;
  }

  GradedNumber li_value(const Composition& c, const std::vector<Poly>& u, i64 err) {
    std::vector<RationalFunction> rs;
    rs.reserve(u.size());
    for (const Poly& p : u) rs.emplace_back(p);
    return GradedNumber::from_laurent(cmpl_eval(*ps, CmplPoint(c, rs), err));
  }
};

py::dict report_dict(const VerificationReport& r) {
  py::dict d;
  d["pass"] = r.pass;
  d["margin"] = r.margin;
  d["detail"] = r.detail;
  return d;
}

py::dict cert_dict(const RelationCertificate& c) {
  py::dict d;
  py::list coeffs;
  for (const auto& p : c.coefficients) coeffs.append(format_poly(p));
  d["coefficients"] = coeffs;
  d["precision_used"] = c.precision_used;
  d["reverified_at"] = c.reverified_at;
  d["margin"] = c.margin;
  return d;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "exact arithmetic for function-field multizeta values and Carlitz polylogarithms";
  m.attr("__version__") = "0.1.0";

  py::register_exception<fqz::error>(m, "FqzetaError");

  py::class_<LaurentNumber>(m, "Laurent")
      .def("__repr__", [](const LaurentNumber& v) { return format_laurent(v); })
      .def("__str__", [](const LaurentNumber& v) { return format_laurent(v); })
      .def_property_readonly("err_deg",
                             [](const LaurentNumber& v) -> py::object {
                               if (v.is_exact()) return py::none();
                               return py::int_(v.err_deg());
                             })
      .def_property_readonly("is_exact", &LaurentNumber::is_exact)
      .def("deg",
           [](const LaurentNumber& v) -> py::object {
             auto d = v.deg();
             if (!d) return py::none();
             return py::int_(*d);
           })
      .def("coeffs",
           [](const LaurentNumber& v) {
             py::dict d;
             for (const auto& [e, c] : v.window()) d[py::int_(e)] = format_fq(*v.field(), c);
             return d;
           })
      .def("is_zero_within_precision", &LaurentNumber::zero_within_precision)
      .def("json", [](const LaurentNumber& v) { return laurent_to_json(v); })
      .def("__add__", [](const LaurentNumber& a, const LaurentNumber& b) { return a + b; })
      .def("__sub__", [](const LaurentNumber& a, const LaurentNumber& b) { return a - b; })
      .def("__mul__", [](const LaurentNumber& a, const LaurentNumber& b) { return a * b; })
      .def("inv", &LaurentNumber::inv, py::arg("prec"))
      .def("truncated", &LaurentNumber::truncated, py::arg("err"))
      .def("frobenius", &LaurentNumber::frobenius_power, py::arg("n"));

  py::class_<GradedNumber>(m, "Graded")
      .def("__repr__", [](const GradedNumber& v) { return format_graded(v); })
      .def_property_readonly("grade", &GradedNumber::grade)
      .def_property_readonly("unit", &GradedNumber::unit)
      .def("in_k_inf", &GradedNumber::in_k_inf)
      .def("__mul__", [](const GradedNumber& a, const GradedNumber& b) { return a * b; })
      .def("pow", [](const GradedNumber& a, i64 n, i64 prec) { return a.pow(n, prec); },
           py::arg("n"), py::arg("prec"))
      .def("json", [](const GradedNumber& v) { return graded_to_json(v); });

  py::class_<PySystem>(m, "DifferenceSystem")
      .def_property_readonly("dim", [](const PySystem& s) { return s.sys.dim(); })
      .def_property_readonly("weight", [](const PySystem& s) { return s.sys.weight; })
      .def_property_readonly("vanishing_orders",
                             [](const PySystem& s) { return s.sys.vanish_order_min; })
      .def("check", [](const PySystem& s) { return report_dict(check_difference_equation(s.sys)); });

  py::class_<SessionCtx>(m, "Context")
      .def(py::init<i64>(), py::arg("q"))
      .def(py::init<int, const std::vector<int>&>(), py::arg("p"), py::arg("modulus"))
      .def_property_readonly("q", [](const SessionCtx& c) { return c.cfg->q(); })
      .def_property_readonly("p", [](const SessionCtx& c) { return c.cfg->p(); })
      .def_property_readonly("e", [](const SessionCtx& c) { return c.cfg->e(); })
      .def("parse",
           [](const SessionCtx& c, const std::string& text, i64 prec) {
             return LaurentNumber::from_rational(parse_expr(text, c.cfg), prec);
           },
           py::arg("expr"), py::arg("prec") = -40,
           "parse an expression over F_q(theta) and embed it at the given precision")
      .def("format_poly",
           [](const SessionCtx& c, const std::string& text) {
             return format_poly(parse_poly(text, c.cfg));
           })
      .def("zeta",
           [](SessionCtx& c, const std::vector<int>& s, i64 prec, int threads) {
             return c.ps->multizeta(comp_of(s), prec, threads);
           },
           py::arg("s"), py::arg("prec") = -40, py::arg("threads") = 1)
      .def("power_sum",
           [](SessionCtx& c, int s, int d, i64 prec) { return c.ps->power_sum(s, d, prec); },
           py::arg("s"), py::arg("d"), py::arg("prec") = -40)
      .def("power_sum_bruteforce",
           [](SessionCtx& c, int s, int d, i64 prec, int threads) {
             return c.ps->power_sum_bruteforce(s, d, prec, threads);
           },
           py::arg("s"), py::arg("d"), py::arg("prec") = -40, py::arg("threads") = 1)
      .def("cmpl",
           [](SessionCtx& c, const std::vector<int>& s, const std::vector<std::string>& point,
              i64 prec) {
             return cmpl_eval(*c.ps, CmplPoint(comp_of(s), c.parse_point(point)), prec);
           },
           py::arg("s"), py::arg("point"), py::arg("prec") = -40)
      .def("polylog",
           [](SessionCtx& c, int n, const std::string& z, i64 prec) {
             return carlitz_polylog(*c.ps, n, parse_expr(z, c.cfg), prec);
           },
           py::arg("n"), py::arg("z"), py::arg("prec") = -40)
      .def("pi_tilde", [](SessionCtx& c, i64 prec) { return c.carlitz->pi_tilde(prec); },
           py::arg("prec") = -40)
      .def("big_d", [](SessionCtx& c, int i) { return format_poly(c.carlitz->big_d(i)); })
      .def("little_l", [](SessionCtx& c, int i) { return format_poly(c.carlitz->little_l(i)); })
      .def("gamma", [](SessionCtx& c, i64 n) { return format_poly(c.carlitz->carlitz_factorial(n)); })
      .def("is_even_weight", [](SessionCtx& c, i64 w) { return c.carlitz->is_even_weight(w); })
      .def("stuffle_expand",
           [](const SessionCtx&, const std::vector<int>& s, const std::vector<int>& sp) {
             py::list out;
             for (const auto& t : stuffle_expand(comp_of(s), comp_of(sp))) {
               py::dict d;
               d["composition"] = t.composition.parts;
               py::list recipe;
               for (const auto& src : t.recipe)
                 recipe.append(py::make_tuple(src.from_left, src.from_right));
               d["recipe"] = recipe;
               out.append(d);
             }
             return out;
           })
      .def("stuffle_verify",
           [](SessionCtx& c, const std::vector<int>& s, const std::vector<int>& sp,
              const std::vector<std::string>& z, const std::vector<std::string>& zp, i64 prec,
              bool corrupt) {
             return report_dict(stuffle_verify(*c.ps, comp_of(s), comp_of(sp), c.parse_point(z),
                                               c.parse_point(zp), prec, corrupt));
           },
           py::arg("s"), py::arg("sprime"), py::arg("z"), py::arg("zprime"), py::arg("prec") = -40,
           py::arg("corrupt") = false)
      .def("at_poly",
           [](SessionCtx& c, int n) {
             AtPolynomial h = c.at->at_poly(n);
             py::dict d;
             d["n"] = h.n;
             d["t_degree"] = h.t_degree;
             d["certified_d_range"] = h.certified_d_range;
             py::list coeffs;
             for (int m = 0; m <= h.value.deg_t(); ++m) coeffs.append(format_poly(h.value.coeff(m)));
             d["coeffs"] = coeffs;
             return d;
           })
      .def("decompose",
           [](SessionCtx& c, const std::vector<int>& s) {
             Decomposition dec = c.at->decompose_mzv(comp_of(s));
             py::dict d;
             d["gamma_factor"] = format_poly(dec.gamma_factor);
             py::list terms;
             for (const auto& t : dec.terms) {
               py::dict term;
               term["a_exponent"] = t.a_exponent;
               py::list pt;
               for (const auto& u : t.point) pt.append(format_poly(u));
               term["point"] = pt;
               terms.append(term);
             }
             d["terms"] = terms;
             return d;
           })
      .def("verify_decomposition",
           [](SessionCtx& c, const std::vector<int>& s, i64 prec, bool corrupt) {
             return report_dict(c.at->verify_decomposition(comp_of(s), prec, corrupt));
           },
           py::arg("s"), py::arg("prec") = -40, py::arg("corrupt") = false)
      .def("difference_system",
           [](SessionCtx& c, const std::vector<int>& s, const std::vector<std::string>& point,
              int t_trunc, i64 prec) {
             PySystem out;
             out.comp = comp_of(s);
             out.coords = point.empty()
                              ? std::vector<Poly>(out.comp.parts.size(), Poly::one(c.cfg))
                              : c.parse_apoint(point);
             out.sys = make_cmpl_system(*c.ps, out.comp, out.coords, t_trunc, prec);
             return out;
           },
           py::arg("s"), py::arg("point") = std::vector<std::string>{}, py::arg("t_trunc") = 12,
           py::arg("prec") = -40)
      .def("mz_check",
           [](SessionCtx& c, PySystem& s, i64 weight) {
             auto zprov = [&](i64 e) { return c.li_value(s.comp, s.coords, e); };
             MzReport rep = check_mz_property(*c.ps, s.sys, weight ? weight : s.comp.weight(), zprov);
             py::dict d;
             py::list conds;
             for (const auto& r : rep.conditions) conds.append(report_dict(r));
             d["conditions"] = conds;
             d["pass"] = rep.pass();
             d["recovered_c"] = rep.recovered_c;
             d["tested_N"] = rep.tested_N;
             return d;
           },
           py::arg("system"), py::arg("weight") = 0)
      .def("kronecker",
           [](SessionCtx& c, PySystem& a, PySystem& b) {
             PySystem out;
             out.sys = kronecker_system(*c.ps, {{a.sys, 1}, {b.sys, 1}});
             return out;
           })
      .def("specialize",
           [](SessionCtx& c, PySystem& s, int j, int N, i64 prec) {
             SpecializeReport rep = specialize_L(*c.ps, s.sys, j, N, prec);
             py::dict d;
             d["value"] = rep.value;
             d["omega_zero_order"] = rep.omega_zero_order;
             d["max_pole_order"] = rep.max_pole_order;
             d["min_term_vanishing"] = rep.min_term_vanishing;
             d["match"] = report_dict(rep.match);
             return d;
           },
           py::arg("system"), py::arg("j"), py::arg("N"), py::arg("prec") = -40)
      .def("find_zeta_relations",
           [](SessionCtx& c, const std::vector<std::vector<int>>& zetas,
              const std::vector<i64>& pi_powers, const std::string& ring, i64 deg, i64 prec) {
             auto provider = [&](i64 e) {
               std::vector<GradedNumber> vals;
               for (const auto& s : zetas)
                 vals.push_back(GradedNumber::from_laurent(c.ps->multizeta(comp_of(s), e)));
               for (i64 w : pi_powers) vals.push_back(c.carlitz->pi_tilde(e).pow(w, e));
               return vals;
             };
             RelationQuery query;
             query.err_deg = prec;
             query.max_deg = deg;
             query.ring = ring == "fp"   ? CoeffRing::Fp
                          : ring == "fq" ? CoeffRing::Fq
                                         : CoeffRing::BoundedDeg;
             py::list out;
             for (const auto& cert : find_relations(provider(prec), query, provider))
               out.append(cert_dict(cert));
             return out;
           },
           py::arg("zetas"), py::arg("pi_powers") = std::vector<i64>{}, py::arg("ring") = "poly",
           py::arg("deg") = 3, py::arg("prec") = -80)
      .def("reconstruct",
           [](SessionCtx& c, const std::string& expr, i64 deg, i64 prec) -> py::object {
             RationalFunction z = parse_expr(expr, c.cfg);
             auto prov = [&](i64 e) { return LaurentNumber::from_rational(z, e); };
             auto rec = rational_reconstruct(prov(checked_mul(prec, 2)), deg, prec, prov);
             if (!rec) return py::none();
             return py::str(format_rational(*rec));
           },
           py::arg("expr"), py::arg("deg") = 3, py::arg("prec") = -40)
      .def("product_relation",
           [](SessionCtx& c, const std::vector<int>& s, const std::vector<int>& sp, i64 prec) {
             auto res = product_relation_search(*c.ps, comp_of(s), comp_of(sp), prec);
             py::dict d;
             d["found"] = res.found;
             py::list cands;
             for (const auto& cand : res.candidates) cands.append(cand.parts);
             d["candidates"] = cands;
             if (res.found) d["certificate"] = cert_dict(res.certificate);
             return d;
           },
           py::arg("s"), py::arg("sprime"), py::arg("prec") = -60);

  m.def("selftest", [] {
    py::list out;
    for (const auto& r : run_selftest()) {
      py::dict d;
      d["name"] = r.name;
      d["pass"] = r.pass;
      d["detail"] = r.detail;
      out.append(d);
    }
    return out;
  });
}
