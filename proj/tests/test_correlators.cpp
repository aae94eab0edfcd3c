#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <twtail/correlators.hpp>
#include <twtail/laurent.hpp>

using namespace twtail;

namespace {

XPoly xp(std::initializer_list<std::pair<int, Rat>> terms) {
  XPoly p;
  for (const auto& [e, c] : terms) p += XPoly::term(c, e);
  return p;
}

const XPoly X = XPoly::x();
const XPoly one(Rat(1));

RatFn printed_omega_1_1() {
  // (X-1)/2 [1/(z-1) + 1/(z+1)] + (2-X)/z - 2 alpha/(alpha z - 1)
  XPoly half_xm1 = (X - one) * rat(1, 2);
  RatFn r(MPoly::constant(1, half_xm1), {{Factor::zm1(0), 1}});
  r += RatFn(MPoly::constant(1, half_xm1), {{Factor::zp1(0), 1}});
  r += RatFn(MPoly::constant(1, XPoly(Rat(2)) - X), {{Factor::z(0), 1}});
  r -= RatFn(MPoly::variable(1, 1) * Rat(2), {{Factor::azm1(0), 1}});
  return r;
}

RatFn printed_omega_2_0() {
  return RatFn(MPoly::constant(2, X), {{Factor::zzm1(0, 1), 2}});
}

RatFn printed_omega_1_2() {
  MPoly a = MPoly::variable(1, 1);
  MPoly c1 = MPoly::constant(1, Rat(1));
  RatFn r(1);
  // 2 alpha^3 (1 - X) / ((alpha-1)^2 (alpha+1)^2 (alpha z - 1)^2)
  r += RatFn(MPoly::variable(1, 1, 3) * ((one - X) * Rat(2)),
             {{Factor::am1(), 2}, {Factor::ap1(), 2}, {Factor::azm1(0), 2}});
  // (5X^2 - 9X + 5)/(16 (z-1)^4) and its mirror with a minus sign
  XPoly q595 = xp({{2, rat(5, 16)}, {1, rat(-9, 16)}, {0, rat(5, 16)}});
  r += RatFn(MPoly::constant(1, q595), {{Factor::zm1(0), 4}});
  r -= RatFn(MPoly::constant(1, q595), {{Factor::zp1(0), 4}});
  // [X^2 (alpha-1) + (9 alpha + 7)(1 - X)]/(16 (alpha-1)(z-1)^3)
  {
    MPoly n = (a - c1) * XPoly::term(rat(1, 16), 2);
    MPoly m = a * Rat(9) + c1 * Rat(7);
    n += m * ((one - X) * rat(1, 16));
    r += RatFn(std::move(n), {{Factor::am1(), 1}, {Factor::zm1(0), 3}});
  }
  // [(X - X^2)(alpha-1)^2 + 7 alpha^2 + 18 alpha + 7]/(32 (alpha-1)^2 (z-1)^2)
  {
    MPoly n = (a - c1) * (a - c1) * ((X - X * X) * rat(1, 32));
    n += (MPoly::variable(1, 1, 2) * Rat(7) + a * Rat(18) + c1 * Rat(7)) *
         XPoly(rat(1, 32));
    r += RatFn(std::move(n), {{Factor::am1(), 2}, {Factor::zm1(0), 2}});
  }
  // [X^2 (alpha+1) + (9 alpha - 7)(1 - X)]/(16 (alpha+1)(z+1)^3)
  {
    MPoly n = (a + c1) * XPoly::term(rat(1, 16), 2);
    MPoly m = a * Rat(9) - c1 * Rat(7);
    n += m * ((one - X) * rat(1, 16));
    r += RatFn(std::move(n), {{Factor::ap1(), 1}, {Factor::zp1(0), 3}});
  }
  // [(X^2 - X)(alpha+1)^2 - 7 alpha^2 + 18 alpha - 7]/(32 (alpha+1)^2 (z+1)^2)
  {
    MPoly n = (a + c1) * (a + c1) * ((X * X - X) * rat(1, 32));
    n += (MPoly::variable(1, 1, 2) * Rat(-7) + a * Rat(18) - c1 * Rat(7)) *
         XPoly(rat(1, 32));
    r += RatFn(std::move(n), {{Factor::ap1(), 2}, {Factor::zp1(0), 2}});
  }
  return r;
}

RatFn printed_omega_2_1_tail();  // the two terms surviving at X = 1

RatFn printed_omega_2_1() {
  XPoly xx1 = X * X - X;
  RatFn r(2);
  r += RatFn(MPoly::constant(2, xx1 * rat(1, 2)),
             {{Factor::zm1(0), 3}, {Factor::zm1(1), 2}});
  r -= RatFn(MPoly::constant(2, xx1 * rat(1, 2)),
             {{Factor::zp1(0), 3}, {Factor::zp1(1), 2}});
  r += RatFn(MPoly::variable(2, 1, 2) * (xx1 * Rat(2)),
             {{Factor::zzm1(0, 1), 3},
              {Factor::zm1(1), 2},
              {Factor::zp1(1), 2}});
  {
    MPoly n = MPoly::variable(2, 1, 2) +
              MPoly::variable(2, 1, 4) * Rat(3);
    r += RatFn(n * xx1, {{Factor::zzm1(0, 1), 2},
                         {Factor::zm1(1), 3},
                         {Factor::zp1(1), 3}});
  }
  return r + printed_omega_2_1_tail();
}

RatFn printed_omega_2_1_tail() {
  // (1/2) X (1+alpha)/(1-alpha) / ((z1-1)^2 (z2-1)^2) + mirror
  MPoly a = MPoly::variable(2, 2);
  MPoly c1 = MPoly::constant(2, Rat(1));
  RatFn r(2);
  r -= RatFn((a + c1) * (X * rat(1, 2)),
             {{Factor::am1(), 1}, {Factor::zm1(0), 2}, {Factor::zm1(1), 2}});
  r -= RatFn((a - c1) * (X * rat(1, 2)),
             {{Factor::ap1(), 1}, {Factor::zp1(0), 2}, {Factor::zp1(1), 2}});
  return r;
}

RatFn printed_omega_3_0() {
  MPoly z1 = MPoly::variable(3, 0), z2 = MPoly::variable(3, 1),
        z3 = MPoly::variable(3, 2);
  MPoly c1 = MPoly::constant(3, Rat(1));
  MPoly n = (c1 + z1 * z2 + z2 * z3 + z3 * z1) * (z1 + z2 + z3 + z1 * z2 * z3);
  n *= X * X * Rat(2);
  FactorMap den;
  for (int i = 0; i < 3; ++i) {
    den[Factor::zm1(i)] = 2;
    den[Factor::zp1(i)] = 2;
  }
  return RatFn(std::move(n), std::move(den));
}

}  // namespace

TEST_CASE("seed correlator") {
  RatFn w = seed_omega_1_0();
  CHECK(w.eval({rat(2)}, rat(3), rat(1)) == rat(3, 8));
  RatFn wall = wall_restriction(w);
  // (alpha^2 - 1)/alpha^3
  RatFn want(Factor::am1().poly(0) * Factor::ap1().poly(0),
             {{Factor::alpha(), 3}});
  CHECK(wall == want);
}

TEST_CASE("first recursion layer matches printed forms") {
  CorrTable t;
  CHECK(t.get(1, 1) == printed_omega_1_1());
  CHECK(t.get(2, 0) == printed_omega_2_0());
}

TEST_CASE("second recursion layer matches printed forms") {
  CorrTable t;
  CHECK(t.get(1, 2) == printed_omega_1_2());
  CHECK(t.get(2, 1) == printed_omega_2_1());
  CHECK(t.get(3, 0) == printed_omega_3_0());
}

TEST_CASE("correlators are symmetric") {
  CorrTable t;
  t.build(4);
  for (const auto& [nk, w] : t.entries()) CHECK(is_symmetric(w));
}

TEST_CASE("X degree bound") {
  CorrTable t;
  t.build(4);
  for (const auto& [nk, w] : t.entries()) {
    if (nk == std::pair{1, 0}) continue;
    CHECK(w.num().max_x_degree() <= nk.first + nk.second - 1);
  }
}

TEST_CASE("collapse at beta = 2") {
  // at X = 1 every (1-X) / (X^2-X) term dies; omega_2^[1] keeps only its
  // wall terms
  CorrTable t;
  RatFn got = t.get(2, 1).substitute_x(rat(1));
  CHECK(got == printed_omega_2_1_tail().substitute_x(rat(1)));
}

TEST_CASE("wall restriction of omega_1_1") {
  CorrTable t;
  RatFn wall = wall_restriction(t.get(1, 1));
  // (X-1)/2 [1/(a-1) + 1/(a+1)] + (2-X)/a - 2a/((a-1)(a+1))
  XPoly half_xm1 = (X - one) * rat(1, 2);
  RatFn want(MPoly::constant(0, half_xm1), {{Factor::am1(), 1}});
  want += RatFn(MPoly::constant(0, half_xm1), {{Factor::ap1(), 1}});
  want += RatFn(MPoly::constant(0, XPoly(Rat(2)) - X), {{Factor::alpha(), 1}});
  want -= RatFn(MPoly::variable(0, 0) * Rat(2),
                {{Factor::am1(), 1}, {Factor::ap1(), 1}});
  CHECK(wall == want);
}

TEST_CASE("wall restriction of omega_1_2 leading pole") {
  CorrTable t;
  RatFn wall = wall_restriction(t.get(1, 2));
  LaurentSeries s = laurent_expand(wall, rat(1), 0);
  CHECK(s.order() == -4);
  CHECK(s.coeff(-4) ==
        xp({{2, rat(5, 16)}, {1, rat(-27, 16)}, {0, rat(39, 16)}}));
}

TEST_CASE("build_table layer contents") {
  CorrTable t;
  t.build(2);
  CHECK(t.entries().size() == 3);
  CHECK(t.has(1, 0));
  CHECK(t.has(1, 1));
  CHECK(t.has(2, 0));
}
