#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "superalg/quantize.hpp"

#include <map>
#include <string>
#include <vector>

using namespace superalg;

namespace {

struct QFix {
  SymbolContext ctx;
  StandardModel M;
  QuantParams qp;
  QFix() : M(ctx), qp(standard_quant_params(ctx)) {}

  SuperGroup& G() { return M.group; }

  SymbolId id(const std::string& n) { return ctx.id(n); }
  SuperScalar S(const std::string& n) { return sym(ctx, n); }
  SuperScalar dS(const std::string& n) { return sym(ctx, ctx.diff_of(ctx.id(n))); }
  SuperScalar half(int sgn = 1) { return frac(ctx, sgn, 2); }
  SuperScalar one() { return num(ctx, 1); }
  SuperScalar zero() { return SuperScalar(ctx); }
  SuperScalar i(int p = 1, int q = 1) { return ifrac(ctx, p, q); }

  // fresh scratch symbols, declared on first use
  SuperScalar ES(const std::string& n) {
    return sym(ctx, ctx.has(n) ? ctx.id(n) : ctx.declare(n, Parity::Even));
  }
  SuperScalar OS(const std::string& n) {
    return sym(ctx, ctx.has(n) ? ctx.id(n) : ctx.declare(n, Parity::Odd));
  }

  AlgElem elem(const std::vector<std::pair<int, SuperScalar>>& rows) {
    AlgElem v = G().zero_elem();
    for (const auto& [b, c] : rows) v.a[size_t(b)] = c;
    return v;
  }

  // generic even element: even coefficients on the even directions, odd
  // ones on the odd directions
  AlgElem generic_even() {
    return elem({{0, ES("fv1")},
                 {1, ES("fv2")},
                 {2, ES("fv3")},
                 {3, OS("fn4")},
                 {4, OS("fn5")},
                 {5, OS("fn6")},
                 {6, ES("fz0")},
                 {7, OS("fz1")}});
  }

  // binds the two free polarization parameters to the standard (0, 1) slice
  PolarizationVariant slice01(const PolarizationFamily& fam, size_t k) {
    std::map<SymbolId, SuperScalar> bind = {{fam.params.at(0), zero()},
                                            {fam.params.at(1), one()}};
    return bind_params(fam.variants.at(k), bind);
  }
};

SuperVectorField chart_dir(const Chart& ch, const SymbolContext& ctx, const std::string& n) {
  SuperVectorField X(ch);
  X.set(ctx.id(n), num(ctx, 1));
  return X;
}

}  // namespace

TEST_CASE("quantization parameters are declared once with fixed kinds") {
  QFix F;
  CHECK(F.ctx.parity(F.qp.hbar) == Parity::Even);
  CHECK(F.ctx.invertible(F.qp.hbar));
  CHECK(F.ctx.parity(F.qp.kappa) == Parity::Odd);
  CHECK(F.ctx.parity(F.qp.period) == Parity::Even);
  QuantParams again = standard_quant_params(F.ctx);
  CHECK(again.hbar == F.qp.hbar);
  CHECK(again.kappa == F.qp.kappa);
  CHECK(again.period == F.qp.period);
}

TEST_CASE("bundle potentials match the closed forms and their curvature") {
  QFix F;

  OrbitGeometry orbP(F.M, OrbitCase::Point);
  Prequantization pqP(orbP, F.qp);
  REQUIRE(pqP.bundle_chart().coords.size() == 2);
  CHECK(pqP.bundle_chart().coords[0] == pqP.t());
  CHECK(pqP.bundle_chart().coords[1] == pqP.tau());
  CHECK(pqP.connection().gamma0 == F.dS("t"));
  CHECK(pqP.connection().gamma1 == F.dS("tau"));
  Certificate certP = curvature_checks(pqP, pqP.connection());
  CHECK(certP.ok());
  CHECK(certP.entries.size() == 6);

  OrbitGeometry orbE(F.M, OrbitCase::Even22);
  Prequantization pqE(orbE, F.qp);
  CHECK(pqE.bundle_chart().coords.size() == 6);
  CHECK(pqE.connection().gamma0 ==
        F.dS("t") + inverse(F.S("y0")) * (-(F.S("x1") * F.dS("x2")) -
                                          F.half() * F.S("xi5") * F.dS("xi5") +
                                          F.half() * F.S("xi6") * F.dS("xi6")));
  CHECK(pqE.connection().gamma1 == F.dS("tau"));
  CHECK(curvature_checks(pqE, pqE.connection()).ok());

  OrbitGeometry orbO(F.M, OrbitCase::Odd22);
  Prequantization pqO(orbO, F.qp);
  CHECK(pqO.connection().gamma0 == F.dS("t"));
  CHECK(pqO.connection().gamma1 ==
        F.dS("tau") + inverse(F.S("yb1")) *
                          (F.S("xb5") * F.dS("xib3") - F.S("xib1") * F.dS("xb4")));
  CHECK(curvature_checks(pqO, pqO.connection()).ok());

  OrbitGeometry orbM(F.M, OrbitCase::Mixed33);
  Prequantization pqM(orbM, F.qp);
  CHECK(pqM.connection().gamma0 ==
        F.dS("t") + inverse(F.S("y0")) * (-(F.S("x1") * F.dS("x2")) -
                                          F.half() * F.S("xi5") * F.dS("xi5") +
                                          F.half() * F.S("xi6") * F.dS("xi6")));
  CHECK(pqM.connection().gamma1 ==
        F.dS("tau") + inverse(F.S("y0")) *
                          (-(F.S("xb5") * F.dS("xi5")) - F.S("xib1") * F.dS("x2")));
  CHECK(curvature_checks(pqM, pqM.connection()).ok());

  // shifting a component by an exact one-form is invisible to every check
  Connection shifted{pqE.connection().gamma0 + F.dS("x1"), pqE.connection().gamma1};
  CHECK(curvature_checks(pqE, shifted).ok());

  // a non-closed addition bends the curvature and nothing else
  Connection bent{pqE.connection().gamma0 + F.S("x2") * F.dS("x1"), pqE.connection().gamma1};
  Certificate certBent = curvature_checks(pqE, bent);
  CHECK(!certBent.ok());
  CHECK(certBent.failures().size() == 1);

  // a zero-form addition breaks the shape, a wrong-parity one the pairings
  Connection fat{pqE.connection().gamma0 + F.S("x1"), pqE.connection().gamma1};
  CHECK(!curvature_checks(pqE, fat).ok());
  Connection crossed{pqE.connection().gamma0 + F.dS("tau"), pqE.connection().gamma1};
  CHECK(!curvature_checks(pqE, crossed).ok());
}

TEST_CASE("generator lifts carry the displayed compact legs") {
  QFix F;

  OrbitGeometry orbP(F.M, OrbitCase::Point);
  Prequantization pqP(orbP, F.qp);
  SuperVectorField YP = pqP.lift(F.generic_even(), Parity::Even);
  CHECK(YP.get(pqP.t()) == F.ES("fv1") * F.S("x1o") + F.ES("fv2") * F.S("x2o") +
                               F.ES("fv3") * F.S("x3o"));
  CHECK(YP.get(pqP.tau()) == F.OS("fn4") * F.S("xb4o") + F.OS("fn5") * F.S("xb5o") +
                                 F.OS("fn6") * F.S("xb6o"));
  Certificate certP = lift_checks(pqP);
  CHECK(certP.ok());
  CHECK(certP.entries.size() == 24);

  OrbitGeometry orbE(F.M, OrbitCase::Even22);
  Prequantization pqE(orbE, F.qp);
  SuperVectorField YE = pqE.lift(F.generic_even(), Parity::Even);
  CHECK(YE.get(pqE.t()) == F.ES("fv2") * F.S("x2") + F.ES("fv3") * F.S("x3o") -
                               F.half() * F.OS("fn5") * F.S("xi5") -
                               F.half() * F.OS("fn6") * F.S("xi6") +
                               F.ES("fz0") * F.S("y0"));
  CHECK(YE.get(pqE.tau()) == F.OS("fn4") * F.S("xb4o") + F.OS("fn5") * F.S("xb5o") +
                                 F.OS("fn6") * F.S("xb6o"));
  CHECK(lift_checks(pqE).ok());

  OrbitGeometry orbO(F.M, OrbitCase::Odd22);
  Prequantization pqO(orbO, F.qp);
  SuperVectorField YO = pqO.lift(F.generic_even(), Parity::Even);
  CHECK(YO.get(pqO.t()) == F.ES("fv1") * F.S("x1o") + F.ES("fv2") * F.S("x2o") +
                               F.ES("fv3") * F.S("x3o"));
  CHECK(YO.get(pqO.tau()) == F.ES("fv3") * F.S("xib3") + F.OS("fn4") * F.S("xb4") +
                                 F.OS("fn6") * F.S("xb6o") + F.OS("fz1") * F.S("yb1"));
  CHECK(lift_checks(pqO).ok());

  OrbitGeometry orbM(F.M, OrbitCase::Mixed33);
  Prequantization pqM(orbM, F.qp);
  SuperVectorField YM = pqM.lift(F.generic_even(), Parity::Even);
  CHECK(YM.get(pqM.t()) == F.ES("fv2") * F.S("x2") + F.ES("fv3") * F.S("x3o") -
                               F.half() * F.OS("fn5") * F.S("xi5") -
                               F.half() * F.OS("fn6") * F.S("xi6") +
                               F.ES("fz0") * F.S("y0"));
  // the two dependent directions contribute through their on-orbit values
  CHECK(YM.get(pqM.tau()) ==
        F.ES("fv3") * (-(inverse(F.S("y0")) * F.S("yb1") * F.S("xi5"))) +
            F.OS("fn4") * (inverse(F.S("y0")) * (F.S("so") + F.S("yb1") * F.S("x2"))) +
            F.OS("fn6") * F.S("xb6o") + F.OS("fz1") * F.S("yb1"));
  CHECK(lift_checks(pqM).ok());
}

TEST_CASE("integrated actions reproduce the displayed flows") {
  QFix F;

  OrbitGeometry orbP(F.M, OrbitCase::Point);
  Prequantization pqP(orbP, F.qp);
  auto tmplP = pqP.action(F.G().symbolic_point());
  CHECK(pqP.image_of(tmplP, pqP.t()) ==
        F.S("t") - F.S("a1") * F.S("x1o") - F.S("a2") * F.S("x2o") - F.S("a3") * F.S("x3o"));
  CHECK(pqP.image_of(tmplP, pqP.tau()) == F.S("tau") - F.S("al4") * F.S("xb4o") -
                                              F.S("al5") * F.S("xb5o") -
                                              F.S("al6") * F.S("xb6o"));
  Certificate certP = action_checks(pqP);
  CHECK(certP.ok());
  CHECK(certP.entries.size() == 12);

  OrbitGeometry orbE(F.M, OrbitCase::Even22);
  Prequantization pqE(orbE, F.qp);
  auto tmplE = pqE.action(F.G().symbolic_point());
  CHECK(pqE.image_of(tmplE, F.id("x1")) == F.S("x1") - F.S("y0") * F.S("a2"));
  CHECK(pqE.image_of(tmplE, F.id("x2")) == F.S("x2") + F.S("y0") * F.S("a1"));
  CHECK(pqE.image_of(tmplE, F.id("xi5")) == F.S("xi5") + F.S("y0") * F.S("al5"));
  CHECK(pqE.image_of(tmplE, F.id("xi6")) == F.S("xi6") - F.S("y0") * F.S("al6"));
  CHECK(pqE.image_of(tmplE, pqE.t()) ==
        F.S("t") - F.S("a2") * F.S("x2") - F.S("a3") * F.S("x3o") +
            F.half() * F.S("al5") * F.S("xi5") + F.half() * F.S("al6") * F.S("xi6") -
            F.S("b") * F.S("y0") - F.half() * F.S("y0") * F.S("a1") * F.S("a2"));
  CHECK(pqE.image_of(tmplE, pqE.tau()) == F.S("tau") - F.S("al4") * F.S("xb4o") -
                                              F.S("al5") * F.S("xb5o") -
                                              F.S("al6") * F.S("xb6o"));
  CHECK(action_checks(pqE).ok());

  OrbitGeometry orbO(F.M, OrbitCase::Odd22);
  Prequantization pqO(orbO, F.qp);
  auto tmplO = pqO.action(F.G().symbolic_point());
  CHECK(pqO.image_of(tmplO, F.id("xib1")) == F.S("xib1") - F.S("yb1") * F.S("al4"));
  CHECK(pqO.image_of(tmplO, F.id("xib3")) == F.S("xib3") - F.S("yb1") * F.S("al5"));
  CHECK(pqO.image_of(tmplO, F.id("xb4")) == F.S("xb4") + F.S("yb1") * F.S("a1"));
  CHECK(pqO.image_of(tmplO, F.id("xb5")) == F.S("xb5") + F.S("yb1") * F.S("a3"));
  CHECK(pqO.image_of(tmplO, pqO.t()) ==
        F.S("t") - F.S("a1") * F.S("x1o") - F.S("a2") * F.S("x2o") - F.S("a3") * F.S("x3o"));
  CHECK(pqO.image_of(tmplO, pqO.tau()) ==
        F.S("tau") - F.S("a3") * F.S("xib3") - F.S("al4") * F.S("xb4") -
            F.S("al6") * F.S("xb6o") - F.S("be") * F.S("yb1") -
            F.half() * F.S("yb1") * F.S("a1") * F.S("al4") +
            F.half() * F.S("yb1") * F.S("a3") * F.S("al5"));
  CHECK(action_checks(pqO).ok());

  OrbitGeometry orbM(F.M, OrbitCase::Mixed33);
  Prequantization pqM(orbM, F.qp);
  auto tmplM = pqM.action(F.G().symbolic_point());
  CHECK(pqM.image_of(tmplM, F.id("x1")) == F.S("x1") - F.S("y0") * F.S("a2"));
  CHECK(pqM.image_of(tmplM, F.id("x2")) == F.S("x2") + F.S("y0") * F.S("a1"));
  CHECK(pqM.image_of(tmplM, F.id("xb5")) == F.S("xb5") + F.S("yb1") * F.S("a3"));
  CHECK(pqM.image_of(tmplM, F.id("xib1")) == F.S("xib1") - F.S("yb1") * F.S("al4"));
  CHECK(pqM.image_of(tmplM, F.id("xi5")) == F.S("xi5") + F.S("y0") * F.S("al5"));
  CHECK(pqM.image_of(tmplM, F.id("xi6")) == F.S("xi6") - F.S("y0") * F.S("al6"));
  CHECK(pqM.image_of(tmplM, pqM.t()) ==
        F.S("t") - F.S("a2") * F.S("x2") - F.S("a3") * F.S("x3o") - F.S("b") * F.S("y0") +
            F.half() * F.S("al5") * F.S("xi5") + F.half() * F.S("al6") * F.S("xi6") -
            F.half() * F.S("y0") * F.S("a1") * F.S("a2"));
  CHECK(pqM.image_of(tmplM, pqM.tau()) ==
        F.S("tau") - F.S("a3") * (-(inverse(F.S("y0")) * F.S("yb1") * F.S("xi5"))) -
            F.S("al4") * (inverse(F.S("y0")) * (F.S("so") + F.S("yb1") * F.S("x2"))) -
            F.S("al6") * F.S("xb6o") - F.S("be") * F.S("yb1") -
            F.half() * F.S("yb1") * F.S("a1") * F.S("al4") +
            F.half() * F.S("yb1") * F.S("a3") * F.S("al5"));
  CHECK(action_checks(pqM).ok());
}

TEST_CASE("the point family solution space is the bare equivariant line") {
  QFix F;
  OrbitGeometry orb(F.M, OrbitCase::Point);
  Prequantization pq(orb, F.qp);
  auto fams = polarizations(orb);
  REQUIRE(fams.size() == 1);
  PolarizedSolution sol = polarized_solve(pq, fams[0].variants[0]);
  CHECK(sol.foliation.empty());
  CHECK(sol.horizontal.empty());
  CHECK(sol.invariants.empty());
  CHECK(sol.dressing.is_zero());
  Certificate cert = solution_checks(pq, sol);
  CHECK(cert.ok());
  CHECK(cert.entries.size() == 2);
}

TEST_CASE("even family solutions carry the displayed dressing") {
  QFix F;
  OrbitGeometry orb(F.M, OrbitCase::Even22);
  Prequantization pq(orb, F.qp);
  auto fams = polarizations(orb);
  REQUIRE(fams.size() == 1);
  for (size_t k = 0; k < fams[0].variants.size(); ++k) {
    int eps = fams[0].variants[k].eps;
    CAPTURE(eps);
    SuperScalar e = num(F.ctx, eps);
    PolarizedSolution sol = polarized_solve(pq, F.slice01(fams[0], k));

    REQUIRE(sol.foliation.size() == 2);
    CHECK(sol.foliation[0] == chart_dir(orb.chart(), F.ctx, "x1"));
    SuperVectorField oddrow = chart_dir(orb.chart(), F.ctx, "xi5");
    oddrow.set(F.id("xi6"), e);
    CHECK(sol.foliation[1] == oddrow);

    CHECK(sol.horizontal[0].get(pq.t()).is_zero());
    CHECK(sol.horizontal[0].get(pq.tau()).is_zero());
    CHECK(sol.horizontal[1].get(pq.t()) ==
          -(F.half() * inverse(F.S("y0")) * (F.S("xi5") - e * F.S("xi6"))));
    CHECK(sol.horizontal[1].get(pq.tau()).is_zero());

    REQUIRE(sol.invariants.size() == 2);
    CHECK(sol.invariants[0] == F.S("x2"));
    CHECK(sol.invariants[1] == F.S("xi5") - e * F.S("xi6"));

    CHECK(sol.constraints[0].is_zero());
    CHECK(sol.constraints[1] == F.i(-1, 2) * inverse(F.S("y0") * F.S("hb")) *
                                    (F.S("xi5") - e * F.S("xi6")));
    CHECK(sol.dressing ==
          F.i(-eps, 2) * inverse(F.S("y0") * F.S("hb")) * F.S("xi5") * F.S("xi6"));

    Certificate cert = solution_checks(pq, sol);
    CHECK(cert.ok());
    CHECK(cert.entries.size() == 6);
  }
}

TEST_CASE("odd family solutions carry the displayed dressings") {
  QFix F;
  OrbitGeometry orb(F.M, OrbitCase::Odd22);
  Prequantization pq(orb, F.qp);
  auto fams = polarizations(orb);
  REQUIRE(fams.size() == 3);

  // four even directions: both even chart coordinates are swept out
  PolarizedSolution wide = polarized_solve(pq, fams[0].variants[0]);
  REQUIRE(wide.foliation.size() == 2);
  CHECK(wide.foliation[0] == chart_dir(orb.chart(), F.ctx, "xb4"));
  CHECK(wide.foliation[1] == chart_dir(orb.chart(), F.ctx, "xb5"));
  CHECK(wide.horizontal[0].get(pq.tau()) == inverse(F.S("yb1")) * F.S("xib1"));
  CHECK(wide.horizontal[1].get(pq.tau()).is_zero());
  CHECK(wide.invariants[0] == F.S("xib1"));
  CHECK(wide.invariants[1] == F.S("xib3"));
  CHECK(wide.constraints[0] ==
        F.i() * inverse(F.S("yb1")) * F.S("xib1") * F.S("kp"));
  CHECK(wide.dressing ==
        F.i(-1, 1) * inverse(F.S("yb1")) * F.S("xb4") * F.S("xib1") * F.S("kp"));
  CHECK(solution_checks(pq, wide).ok());

  // four odd directions: both odd chart coordinates are swept out
  PolarizedSolution deep = polarized_solve(pq, fams[1].variants[0]);
  REQUIRE(deep.foliation.size() == 2);
  CHECK(deep.foliation[0] == chart_dir(orb.chart(), F.ctx, "xib1"));
  CHECK(deep.foliation[1] == chart_dir(orb.chart(), F.ctx, "xib3"));
  CHECK(deep.horizontal[0].get(pq.tau()).is_zero());
  CHECK(deep.horizontal[1].get(pq.tau()) == -(inverse(F.S("yb1")) * F.S("xb5")));
  CHECK(deep.invariants[0] == F.S("xb4"));
  CHECK(deep.invariants[1] == F.S("xb5"));
  CHECK(deep.dressing ==
        F.i() * inverse(F.S("yb1")) * F.S("xib3") * F.S("xb5") * F.S("kp"));
  CHECK(solution_checks(pq, deep).ok());

  // the balanced slice mixes one direction of each parity and needs no
  // dressing at all
  PolarizedSolution flat = polarized_solve(pq, F.slice01(fams[2], 0));
  REQUIRE(flat.foliation.size() == 2);
  CHECK(flat.foliation[0] == chart_dir(orb.chart(), F.ctx, "xb5"));
  CHECK(flat.foliation[1] == chart_dir(orb.chart(), F.ctx, "xib1"));
  CHECK(flat.horizontal[0].get(pq.tau()).is_zero());
  CHECK(flat.horizontal[1].get(pq.tau()).is_zero());
  CHECK(flat.invariants[0] == F.S("xb4"));
  CHECK(flat.invariants[1] == F.S("xib3"));
  CHECK(flat.dressing.is_zero());
  CHECK(solution_checks(pq, flat).ok());
}

TEST_CASE("mixed family solutions carry the displayed dressings") {
  QFix F;
  OrbitGeometry orb(F.M, OrbitCase::Mixed33);
  Prequantization pq(orb, F.qp);
  auto fams = polarizations(orb);
  REQUIRE(fams.size() == 2);

  PolarizedSolution wide = polarized_solve(pq, fams[0].variants[0]);
  REQUIRE(wide.foliation.size() == 3);
  CHECK(wide.foliation[0] == chart_dir(orb.chart(), F.ctx, "x1"));
  CHECK(wide.foliation[1] == chart_dir(orb.chart(), F.ctx, "xb5"));
  CHECK(wide.foliation[2] == chart_dir(orb.chart(), F.ctx, "xib1"));
  for (const SuperVectorField& Y : wide.horizontal) {
    CHECK(Y.get(pq.t()).is_zero());
    CHECK(Y.get(pq.tau()).is_zero());
  }
  CHECK(wide.invariants[0] == F.S("x2"));
  CHECK(wide.invariants[1] == F.S("xi5"));
  CHECK(wide.invariants[2] == F.S("xi6"));
  CHECK(wide.dressing.is_zero());
  Certificate certW = solution_checks(pq, wide);
  CHECK(certW.ok());
  CHECK(certW.entries.size() == 8);

  for (size_t k = 0; k < fams[1].variants.size(); ++k) {
    int eps = fams[1].variants[k].eps;
    CAPTURE(eps);
    SuperScalar e = num(F.ctx, eps);
    PolarizedSolution sol = polarized_solve(pq, fams[1].variants[k]);
    REQUIRE(sol.foliation.size() == 3);
    CHECK(sol.foliation[0] == chart_dir(orb.chart(), F.ctx, "x1"));
    CHECK(sol.foliation[1] == chart_dir(orb.chart(), F.ctx, "xib1"));
    SuperVectorField oddrow = chart_dir(orb.chart(), F.ctx, "xi5");
    oddrow.set(F.id("xi6"), -e);
    CHECK(sol.foliation[2] == oddrow);

    CHECK(sol.horizontal[2].get(pq.t()) ==
          -(F.half() * inverse(F.S("y0")) * (F.S("xi5") + e * F.S("xi6"))));
    CHECK(sol.horizontal[2].get(pq.tau()) == inverse(F.S("y0")) * F.S("xb5"));
    CHECK(sol.constraints[2] ==
          F.i(-1, 2) * inverse(F.S("y0") * F.S("hb")) * (F.S("xi5") + e * F.S("xi6")) +
              F.i() * inverse(F.S("y0")) * F.S("xb5") * F.S("kp"));

    CHECK(sol.invariants[0] == F.S("x2"));
    CHECK(sol.invariants[1] == F.S("xb5"));
    CHECK(sol.invariants[2] == F.S("xi5") + e * F.S("xi6"));

    CHECK(sol.dressing ==
          F.i(eps, 2) * inverse(F.S("y0") * F.S("hb")) * F.S("xi5") * F.S("xi6") +
              F.i(-1, 1) * inverse(F.S("y0")) * F.S("xb5") * F.S("xi5") * F.S("kp"));
    CHECK(solution_checks(pq, sol).ok());
  }
}

TEST_CASE("ill-posed polarization data is rejected") {
  QFix F;
  OrbitGeometry orb(F.M, OrbitCase::Even22);
  Prequantization pq(orb, F.qp);

  // a bare odd direction forces its own coordinate into the phase source
  PolarizationVariant bare{0, {F.G().basis_elem(1), F.G().basis_elem(4)}};
  CHECK_THROWS_WITH_AS(polarized_solve(pq, bare),
                       "no polynomial antiderivative along xi5", kernel_error);

  // two rows falling onto the same pivot cannot be straightened
  PolarizationVariant doubled{
      0, {F.G().basis_elem(1), F.elem({{0, F.one()}, {1, F.one()}})}};
  CHECK_THROWS_WITH_AS(polarized_solve(pq, doubled),
                       "the polarization foliation is not triangular", kernel_error);
}

TEST_CASE("the point family representation is the displayed character") {
  QFix F;
  OrbitGeometry orb(F.M, OrbitCase::Point);
  Prequantization pq(orb, F.qp);
  auto fams = polarizations(orb);
  PolarizedSolution sol = polarized_solve(pq, fams[0].variants[0]);
  VariableChange vc = reduced_variables(pq, sol);
  CHECK(vc.vars.empty());

  InducedRep rep(pq, sol, vc);
  SuperScalar expect =
      F.i() * inverse(F.S("hb")) *
          (F.S("a1") * F.S("x1o") + F.S("a2") * F.S("x2o") + F.S("a3") * F.S("x3o")) +
      F.i() * (F.S("al4") * F.S("xb4o") + F.S("al5") * F.S("xb5o") +
               F.S("al6") * F.S("xb6o")) *
          F.S("kp");
  CHECK(rep.orbit_exponent() == expect);
  CHECK(rep.multiplier_exponent() == expect);
  Certificate cert = rep_checks(rep);
  CHECK(cert.ok());
  CHECK(cert.entries.size() == 6);
  CHECK(rep.central_character(6).is_zero());
  CHECK(rep.central_character(7).is_zero());
}

TEST_CASE("the even family representation matches the display") {
  QFix F;
  OrbitGeometry orb(F.M, OrbitCase::Even22);
  Prequantization pq(orb, F.qp);
  auto fams = polarizations(orb);
  for (size_t k = 0; k < fams[0].variants.size(); ++k) {
    int eps = fams[0].variants[k].eps;
    CAPTURE(eps);
    SuperScalar e = num(F.ctx, eps);
    PolarizedSolution sol = polarized_solve(pq, F.slice01(fams[0], k));

    VariableChange vc = reduced_variables(pq, sol);
    REQUIRE(vc.vars.size() == 2);
    CHECK(F.ctx.name(vc.vars[0]) == "z1");
    CHECK(F.ctx.name(vc.vars[1]) == "zeta");
    CHECK(vc.to_orbit.at(F.id("z1")) == inverse(F.S("y0")) * (F.S("x2") - F.S("x2o")));
    CHECK(vc.to_orbit.at(F.id("zeta")) ==
          inverse(F.S("y0")) * (F.S("xi5") - e * F.S("xi6")));

    InducedRep rep(pq, sol, vc);
    CHECK(rep.shift_template(F.id("z1")) == F.S("z1") - F.S("a1"));
    CHECK(rep.shift_template(F.id("zeta")) ==
          F.S("zeta") - (F.S("al5") + e * F.S("al6")));

    SuperScalar iyh = F.i() * F.S("y0") * inverse(F.S("hb"));
    SuperScalar ih = F.i() * inverse(F.S("hb"));
    SuperScalar expect =
        iyh * (F.S("a2") * F.S("z1") -
               F.half() * (F.S("al5") - e * F.S("al6")) * F.S("zeta")) +
        ih * (F.S("a2") * F.S("x2o") + F.S("a3") * F.S("x3o")) +
        iyh * (F.S("b") - F.half() * F.S("a1") * F.S("a2") +
               F.half(eps) * F.S("al5") * F.S("al6")) +
        F.i() * (F.S("al4") * F.S("xb4o") + F.S("al5") * F.S("xb5o") +
                 F.S("al6") * F.S("xb6o")) *
            F.S("kp");
    CHECK(rep.multiplier_exponent() == expect);

    Certificate cert = rep_checks(rep);
    CHECK(cert.ok());
    CHECK(cert.entries.size() == 6);
    CHECK(rep.central_character(6) == F.i(-1, 1) * F.S("y0") * inverse(F.S("hb")));
    CHECK(rep.central_character(7).is_zero());

    // anchoring the variable at the raw coordinate drops exactly the
    // base-point term from the multiplier
    VariableChange flat = reduced_variables(pq, sol, false);
    CHECK(flat.to_orbit.at(F.id("z1")) == inverse(F.S("y0")) * F.S("x2"));
    InducedRep plain(pq, sol, flat);
    CHECK(plain.multiplier_exponent() == expect - ih * F.S("a2") * F.S("x2o"));
    CHECK(rep_checks(plain).ok());
  }
}

TEST_CASE("the odd family representations match the displays") {
  QFix F;
  OrbitGeometry orb(F.M, OrbitCase::Odd22);
  Prequantization pq(orb, F.qp);
  auto fams = polarizations(orb);
  SuperScalar ih = F.i() * inverse(F.S("hb"));
  SuperScalar base = ih * (F.S("a1") * F.S("x1o") + F.S("a2") * F.S("x2o") +
                           F.S("a3") * F.S("x3o"));

  // four even directions
  {
    PolarizedSolution sol = polarized_solve(pq, fams[0].variants[0]);
    CHECK(sol.invariants.size() == 2);
    SuperScalar first =
        base + F.i() * (F.S("a1") * F.S("xib1") + F.S("a3") * F.S("xib3") +
                        F.S("al6") * F.S("xb6o") + F.S("be") * F.S("yb1") +
                        F.half() * F.S("yb1") * F.S("a1") * F.S("al4") +
                        F.half() * F.S("yb1") * F.S("a3") * F.S("al5")) *
                   F.S("kp");
    VariableChange vc = reduced_variables(pq, sol);
    CHECK(F.ctx.name(vc.vars[0]) == "zeta4");
    CHECK(F.ctx.name(vc.vars[1]) == "zeta5");
    CHECK(vc.to_orbit.at(F.id("zeta4")) == -(inverse(F.S("yb1")) * F.S("xib1")));
    CHECK(vc.to_orbit.at(F.id("zeta5")) == -(inverse(F.S("yb1")) * F.S("xib3")));
    InducedRep rep(pq, sol, vc);
    CHECK(rep.orbit_exponent() == first);
    CHECK(rep.shift_template(F.id("zeta4")) == F.S("zeta4") - F.S("al4"));
    CHECK(rep.shift_template(F.id("zeta5")) == F.S("zeta5") - F.S("al5"));
    SuperScalar expect =
        F.i(-1, 1) * (F.S("a1") * F.S("zeta4") + F.S("a3") * F.S("zeta5")) *
            F.S("yb1") * F.S("kp") +
        base + F.i() * F.S("al6") * F.S("xb6o") * F.S("kp") +
        F.i() * (F.S("be") + F.half() * F.S("a1") * F.S("al4") +
                 F.half() * F.S("a3") * F.S("al5")) *
            F.S("yb1") * F.S("kp");
    CHECK(rep.multiplier_exponent() == expect);
    CHECK(rep_checks(rep).ok());
    CHECK(rep.central_character(6).is_zero());
    CHECK(rep.central_character(7) == F.i(-1, 1) * F.S("yb1") * F.S("kp"));
  }

  // four odd directions
  {
    PolarizedSolution sol = polarized_solve(pq, fams[1].variants[0]);
    SuperScalar first =
        base + F.i() * (F.S("al4") * F.S("xb4") + F.S("al5") * F.S("xb5") +
                        F.S("al6") * F.S("xb6o") + F.S("be") * F.S("yb1") -
                        F.half() * F.S("yb1") * F.S("a1") * F.S("al4") -
                        F.half() * F.S("yb1") * F.S("a3") * F.S("al5")) *
                   F.S("kp");
    VariableChange vc = reduced_variables(pq, sol);
    CHECK(F.ctx.name(vc.vars[0]) == "zb1");
    CHECK(F.ctx.name(vc.vars[1]) == "zb3");
    CHECK(vc.to_orbit.at(F.id("zb1")) ==
          inverse(F.S("yb1")) * (F.S("xb4") - F.S("xb4o")));
    CHECK(vc.to_orbit.at(F.id("zb3")) ==
          inverse(F.S("yb1")) * (F.S("xb5") - F.S("xb5o")));
    InducedRep rep(pq, sol, vc);
    CHECK(rep.orbit_exponent() == first);
    CHECK(rep.shift_template(F.id("zb1")) == F.S("zb1") - F.S("a1"));
    CHECK(rep.shift_template(F.id("zb3")) == F.S("zb3") - F.S("a3"));
    SuperScalar expect =
        base +
        F.i() * (F.S("al4") * F.S("zb1") + F.S("al5") * F.S("zb3")) * F.S("yb1") *
            F.S("kp") +
        F.i() * (F.S("al4") * F.S("xb4o") + F.S("al5") * F.S("xb5o") +
                 F.S("al6") * F.S("xb6o")) *
            F.S("kp") +
        F.i() * (F.S("be") - F.half() * F.S("a1") * F.S("al4") -
                 F.half() * F.S("a3") * F.S("al5")) *
            F.S("yb1") * F.S("kp");
    CHECK(rep.multiplier_exponent() == expect);
    CHECK(rep_checks(rep).ok());
    CHECK(rep.central_character(7) == F.i(-1, 1) * F.S("yb1") * F.S("kp"));

    // anchoring both variables at the raw coordinates drops both base terms
    VariableChange flat = reduced_variables(pq, sol, false);
    InducedRep plain(pq, sol, flat);
    CHECK(plain.multiplier_exponent() ==
          expect - F.i() * (F.S("al4") * F.S("xb4o") + F.S("al5") * F.S("xb5o")) *
                       F.S("kp"));
  }

  // the balanced slice
  {
    PolarizedSolution sol = polarized_solve(pq, F.slice01(fams[2], 0));
    VariableChange vc = reduced_variables(pq, sol);
    CHECK(F.ctx.name(vc.vars[0]) == "zb1");
    CHECK(F.ctx.name(vc.vars[1]) == "zeta5");
    InducedRep rep(pq, sol, vc);
    CHECK(rep.shift_template(F.id("zb1")) == F.S("zb1") - F.S("a1"));
    CHECK(rep.shift_template(F.id("zeta5")) == F.S("zeta5") - F.S("al5"));
    SuperScalar expect =
        F.i() * (F.S("al4") * F.S("zb1") - F.S("a3") * F.S("zeta5")) * F.S("yb1") *
            F.S("kp") +
        base +
        F.i() * (F.S("al4") * F.S("xb4o") + F.S("al6") * F.S("xb6o")) * F.S("kp") +
        F.i() * (F.S("be") - F.half() * F.S("a1") * F.S("al4") +
                 F.half() * F.S("a3") * F.S("al5")) *
            F.S("yb1") * F.S("kp");
    CHECK(rep.multiplier_exponent() == expect);
    CHECK(rep_checks(rep).ok());

    VariableChange flat = reduced_variables(pq, sol, false);
    InducedRep plain(pq, sol, flat);
    CHECK(plain.multiplier_exponent() ==
          expect - F.i() * F.S("al4") * F.S("xb4o") * F.S("kp"));
  }
}

TEST_CASE("the mixed family representations match the displays") {
  QFix F;
  OrbitGeometry orb(F.M, OrbitCase::Mixed33);
  Prequantization pq(orb, F.qp);
  auto fams = polarizations(orb);
  SuperScalar ih = F.i() * inverse(F.S("hb"));
  SuperScalar iyh = F.i() * F.S("y0") * inverse(F.S("hb"));

  // the wide slice: three even variables
  {
    PolarizedSolution sol = polarized_solve(pq, fams[0].variants[0]);
    VariableChange vc = reduced_variables(pq, sol);
    REQUIRE(vc.vars.size() == 3);
    CHECK(F.ctx.name(vc.vars[0]) == "z1");
    CHECK(F.ctx.name(vc.vars[1]) == "zeta5");
    CHECK(F.ctx.name(vc.vars[2]) == "zeta6");
    CHECK(vc.to_orbit.at(F.id("z1")) == inverse(F.S("y0")) * (F.S("x2") - F.S("x2o")));
    CHECK(vc.to_orbit.at(F.id("zeta5")) == inverse(F.S("y0")) * F.S("xi5"));
    CHECK(vc.to_orbit.at(F.id("zeta6")) == -(inverse(F.S("y0")) * F.S("xi6")));

    InducedRep rep(pq, sol, vc);
    CHECK(rep.shift_template(F.id("z1")) == F.S("z1") - F.S("a1"));
    CHECK(rep.shift_template(F.id("zeta5")) == F.S("zeta5") - F.S("al5"));
    CHECK(rep.shift_template(F.id("zeta6")) == F.S("zeta6") - F.S("al6"));

    SuperScalar seen_base4 = inverse(F.S("y0")) * (F.S("so") + F.S("yb1") * F.S("x2o"));
    SuperScalar expect =
        ih * (F.S("a2") * F.S("x2o") + F.S("a3") * F.S("x3o")) +
        F.i() * (F.S("al4") * seen_base4 + F.S("al6") * F.S("xb6o")) * F.S("kp") +
        iyh * (F.S("a2") * F.S("z1") - F.half() * F.S("al5") * F.S("zeta5") +
               F.half() * F.S("al6") * F.S("zeta6") + F.S("b") -
               F.half() * F.S("a1") * F.S("a2")) +
        F.i() * (-(F.S("a3") * F.S("zeta5")) + F.S("al4") * F.S("z1") + F.S("be") -
                 F.half() * F.S("a1") * F.S("al4") +
                 F.half() * F.S("a3") * F.S("al5")) *
            F.S("yb1") * F.S("kp");
    CHECK(rep.multiplier_exponent() == expect);
    CHECK(rep_checks(rep).ok());
    CHECK(rep.central_character(6) == F.i(-1, 1) * F.S("y0") * inverse(F.S("hb")));
    CHECK(rep.central_character(7) == F.i(-1, 1) * F.S("yb1") * F.S("kp"));

    // the uncentered variable trades the even base term for a dependence
    // on the invariant label alone
    VariableChange flat = reduced_variables(pq, sol, false);
    InducedRep plain(pq, sol, flat);
    SuperScalar expect_flat =
        ih * F.S("a3") * F.S("x3o") +
        F.i() * (F.S("al4") * inverse(F.S("y0")) * F.S("so") +
                 F.S("al6") * F.S("xb6o")) *
            F.S("kp") +
        iyh * (F.S("a2") * F.S("z1") - F.half() * F.S("al5") * F.S("zeta5") +
               F.half() * F.S("al6") * F.S("zeta6") + F.S("b") -
               F.half() * F.S("a1") * F.S("a2")) +
        F.i() * (-(F.S("a3") * F.S("zeta5")) + F.S("al4") * F.S("z1") + F.S("be") -
                 F.half() * F.S("a1") * F.S("al4") +
                 F.half() * F.S("a3") * F.S("al5")) *
            F.S("yb1") * F.S("kp");
    CHECK(plain.multiplier_exponent() == expect_flat);
    CHECK(rep_checks(plain).ok());
  }

  // the sign slices: two even variables and one odd combination
  for (size_t k = 0; k < fams[1].variants.size(); ++k) {
    int eps = fams[1].variants[k].eps;
    CAPTURE(eps);
    SuperScalar e = num(F.ctx, eps);
    PolarizedSolution sol = polarized_solve(pq, fams[1].variants[k]);
    VariableChange vc = reduced_variables(pq, sol);
    REQUIRE(vc.vars.size() == 3);
    CHECK(F.ctx.name(vc.vars[0]) == "z1");
    CHECK(F.ctx.name(vc.vars[1]) == "zb3");
    CHECK(F.ctx.name(vc.vars[2]) == "zeta");
    CHECK(vc.to_orbit.at(F.id("zb3")) ==
          inverse(F.S("yb1")) * (F.S("xb5") - F.S("xb5o")));
    CHECK(vc.to_orbit.at(F.id("zeta")) ==
          inverse(F.S("y0")) * (F.S("xi5") + e * F.S("xi6")));

    InducedRep rep(pq, sol, vc);
    CHECK(rep.shift_template(F.id("z1")) == F.S("z1") - F.S("a1"));
    CHECK(rep.shift_template(F.id("zb3")) == F.S("zb3") - F.S("a3"));
    CHECK(rep.shift_template(F.id("zeta")) ==
          F.S("zeta") - (F.S("al5") - e * F.S("al6")));

    SuperScalar seen_base4 = inverse(F.S("y0")) * (F.S("so") + F.S("yb1") * F.S("x2o"));
    SuperScalar expect =
        iyh * (F.S("a2") * F.S("z1") -
               F.half() * (F.S("al5") + e * F.S("al6")) * F.S("zeta")) +
        F.i() * (F.S("al4") * F.S("z1") + F.S("al5") * F.S("zb3")) * F.S("yb1") *
            F.S("kp") +
        ih * (F.S("a2") * F.S("x2o") + F.S("a3") * F.S("x3o")) +
        F.i() * (F.S("al4") * seen_base4 + F.S("al5") * F.S("xb5o") +
                 F.S("al6") * F.S("xb6o")) *
            F.S("kp") +
        iyh * (F.S("b") - F.half() * F.S("a1") * F.S("a2") -
               F.half(eps) * F.S("al5") * F.S("al6")) +
        F.i() * (F.S("be") - F.half() * F.S("a1") * F.S("al4") -
                 F.half() * F.S("a3") * F.S("al5")) *
            F.S("yb1") * F.S("kp");
    CHECK(rep.multiplier_exponent() == expect);
    Certificate cert = rep_checks(rep);
    CHECK(cert.ok());
    CHECK(cert.entries.size() == 6);
    CHECK(rep.central_character(6) == F.i(-1, 1) * F.S("y0") * inverse(F.S("hb")));
    CHECK(rep.central_character(7) == F.i(-1, 1) * F.S("yb1") * F.S("kp"));

    // uncentered variables: the even base terms disappear and the odd
    // central pairing sees the invariant label alone
    VariableChange flat = reduced_variables(pq, sol, false);
    InducedRep plain(pq, sol, flat);
    CHECK(plain.multiplier_exponent() ==
          expect - ih * F.S("a2") * F.S("x2o") -
              F.i() * (F.S("al4") * inverse(F.S("y0")) * F.S("yb1") * F.S("x2o") +
                       F.S("al5") * F.S("xb5o")) *
                  F.S("kp"));
  }
}

TEST_CASE("variable changes that do not close are rejected") {
  QFix F;
  OrbitGeometry orb(F.M, OrbitCase::Even22);
  Prequantization pq(orb, F.qp);
  auto fams = polarizations(orb);
  PolarizedSolution sol = polarized_solve(pq, F.slice01(fams[0], 0));
  VariableChange vc = reduced_variables(pq, sol);

  // a quadratic variable picks up coordinate-dependent shifts
  VariableChange crooked;
  crooked.vars = {F.id("z1")};
  crooked.to_orbit[F.id("z1")] = inverse(F.S("y0")) * F.S("x2") * F.S("x2");
  CHECK_THROWS_WITH_AS(InducedRep(pq, sol, crooked),
                       "the action does not act affinely on the reduced variables",
                       kernel_error);

  // dropping one variable leaves coordinates the multiplier cannot shed
  VariableChange partial;
  partial.vars = {vc.vars[0]};
  partial.to_orbit[vc.vars[0]] = vc.to_orbit.at(vc.vars[0]);
  CHECK_THROWS_WITH_AS(InducedRep(pq, sol, partial),
                       "the multiplier does not reduce to the new variables",
                       kernel_error);
}
