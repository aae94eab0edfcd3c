#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <twtail/partfrac.hpp>

#include <random>

using namespace twtail;

TEST_CASE("laurent expansion of a simple pole") {
  // 1/(a-1) at center 1: eps^-1
  RatFn f(MPoly::constant(0, Rat(1)), {{Factor::am1(), 1}});
  LaurentSeries s = laurent_expand(f, rat(1), 3);
  CHECK(s.order() == -1);
  CHECK(s.coeff(-1) == XPoly(Rat(1)));
  CHECK(s.coeff(0).is_zero());
  CHECK(s.coeff(3).is_zero());
}

TEST_CASE("laurent expansion with a unit factor") {
  // 1/(a (a-1)^2) at 1: 1/(1+eps) * eps^-2 = eps^-2 - eps^-1 + 1 - eps ...
  RatFn f(MPoly::constant(0, Rat(1)),
          {{Factor::alpha(), 1}, {Factor::am1(), 2}});
  LaurentSeries s = laurent_expand(f, rat(1), 2);
  CHECK(s.order() == -2);
  CHECK(s.coeff(-2) == XPoly(Rat(1)));
  CHECK(s.coeff(-1) == XPoly(Rat(-1)));
  CHECK(s.coeff(0) == XPoly(Rat(1)));
  CHECK(s.coeff(1) == XPoly(Rat(-1)));
  CHECK(s.coeff(2) == XPoly(Rat(1)));
}

TEST_CASE("laurent expansion of a polynomial recentered") {
  // a^2 at center 2: 4 + 4 eps + eps^2
  RatFn f = RatFn::from_poly(MPoly::variable(0, 0, 2));
  LaurentSeries s = laurent_expand(f, rat(2), 5);
  CHECK(s.coeff(0) == XPoly(Rat(4)));
  CHECK(s.coeff(1) == XPoly(Rat(4)));
  CHECK(s.coeff(2) == XPoly(Rat(1)));
  CHECK(s.coeff(3).is_zero());
}

TEST_CASE("laurent product matches expansion of product") {
  RatFn f(MPoly::variable(0, 0) + MPoly::constant(0, Rat(3)),
          {{Factor::am1(), 1}});
  RatFn g(MPoly::constant(0, Rat(2)),
          {{Factor::alpha(), 2}, {Factor::ap1(), 1}});
  LaurentSeries sf = laurent_expand(f, rat(1), 6);
  LaurentSeries sg = laurent_expand(g, rat(1), 6);
  LaurentSeries direct = laurent_expand(f * g, rat(1), 4);
  LaurentSeries prod = series_mul(sf, sg);
  for (int e = direct.lo; e <= std::min(direct.hi, prod.hi); ++e)
    CHECK(direct.coeff(e) == prod.coeff(e));
}

static RatFn random_alpha_fn(std::mt19937& rng) {
  std::uniform_int_distribution<int> coef(-5, 5), deg(0, 4), exp(0, 2);
  MPoly num(0);
  int d = deg(rng);
  for (int k = 0; k <= d; ++k) {
    int c = coef(rng);
    if (c) { Mono m; m.set(0, k); num.add_term(m, XPoly::term(rat(c), exp(rng) - 1)); }
  }
  FactorMap den;
  for (const Factor& f :
       {Factor::alpha(), Factor::am1(), Factor::ap1(), Factor::a2p1()}) {
    int e = exp(rng);
    if (e) den[f] = e;
  }
  return RatFn(std::move(num), std::move(den));
}

TEST_CASE("partial fractions round trip on random inputs") {
  std::mt19937 rng(12345);
  for (int iter = 0; iter < 1000; ++iter) {
    RatFn f = random_alpha_fn(rng);
    PartialFractions pf = partial_fractions(f);
    CHECK(pf_reassemble(pf) == f);
  }
}

TEST_CASE("partial fractions on a known example") {
  // (3a+1)/(a(a-1)) = -1/a + 4/(a-1)
  MPoly n = MPoly::variable(0, 0);
  n *= Rat(3);
  n += MPoly::constant(0, Rat(1));
  RatFn f(std::move(n), {{Factor::alpha(), 1}, {Factor::am1(), 1}});
  PartialFractions pf = partial_fractions(f);
  CHECK(pf.poly.empty());
  CHECK(pf.quad.empty());
  CHECK(pf.lin.at(Factor::alpha())[0] == XPoly(Rat(-1)));
  CHECK(pf.lin.at(Factor::am1())[0] == XPoly(Rat(4)));
}

TEST_CASE("antiderivative differentiates back") {
  // derivatives of decaying rational functions are exactly the integrable
  // case, so build those and round trip
  std::mt19937 rng(777);
  std::uniform_int_distribution<int> coef(-5, 5), exp(0, 2);
  int done = 0;
  while (done < 200) {
    FactorMap den;
    for (const Factor& f :
         {Factor::alpha(), Factor::am1(), Factor::ap1(), Factor::a2p1()}) {
      int e = exp(rng);
      if (e) den[f] = e;
    }
    if (den.empty()) continue;
    int dd = 0;
    for (const auto& [f, e] : den)
      dd += e * (f.kind == FactorKind::A2P1 ? 2 : 1);
    MPoly num(0);
    for (int k = 0; k < dd; ++k) {
      int c = coef(rng);
      if (c) { Mono m; m.set(0, k); num.add_term(m, XPoly::term(rat(c), exp(rng) - 1)); }
    }
    RatFn g(std::move(num), std::move(den));
    if (g.is_zero()) continue;
    RatFn f = g.derivative(0);
    RatFn back = pf_antiderivative_vanishing_at_inf(partial_fractions(f));
    CHECK(back == g);
    ++done;
  }
}

TEST_CASE("antiderivative rejects log terms") {
  RatFn f(MPoly::constant(0, Rat(1)), {{Factor::am1(), 1}});
  CHECK_THROWS_AS(pf_antiderivative_vanishing_at_inf(partial_fractions(f)),
                  LogTermPresent);
  RatFn g = RatFn::from_poly(MPoly::variable(0, 0));
  CHECK_THROWS_AS(pf_antiderivative_vanishing_at_inf(partial_fractions(g)),
                  LogTermPresent);
  RatFn h(MPoly::constant(0, Rat(1)), {{Factor::a2p1(), 1}});
  CHECK_THROWS_AS(pf_antiderivative_vanishing_at_inf(partial_fractions(h)),
                  LogTermPresent);
}

TEST_CASE("antiderivative of a decaying function") {
  // int_a^inf dt/t^2 = 1/a, so the vanishing antiderivative of 1/a^2 is -1/a
  RatFn f(MPoly::constant(0, Rat(1)), {{Factor::alpha(), 2}});
  RatFn g = pf_antiderivative_vanishing_at_inf(partial_fractions(f));
  RatFn want(MPoly::constant(0, Rat(-1)), {{Factor::alpha(), 1}});
  CHECK(g == want);
  // quadratic pole: int a/(a^2+1)^2 = -1/(2(a^2+1))
  RatFn h(MPoly::variable(0, 0), {{Factor::a2p1(), 2}});
  RatFn gh = pf_antiderivative_vanishing_at_inf(partial_fractions(h));
  CHECK(gh.derivative(0) == h);
}
