#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <twtail/ratfn.hpp>

using namespace twtail;

TEST_CASE("rational parsing and formatting") {
  CHECK(rat_to_string(rat_from_string("3/6")) == "1/2");
  CHECK(rat_to_string(rat_from_string("-7")) == "-7");
  CHECK(rat_from_string("-3.25") == rat(-13, 4));
  CHECK(rat_pow(rat(2, 3), -2) == rat(9, 4));
  CHECK(rat_pow(rat(5), 0) == 1);
}

TEST_CASE("bernoulli numbers") {
  CHECK(bernoulli(0) == 1);
  CHECK(bernoulli(1) == rat(-1, 2));
  CHECK(bernoulli(2) == rat(1, 6));
  CHECK(bernoulli(3) == 0);
  CHECK(bernoulli(4) == rat(-1, 30));
  CHECK(bernoulli(12) == rat(-691, 2730));
}

TEST_CASE("xpoly arithmetic and eval") {
  XPoly p = XPoly::term(rat(1, 2), 1) + XPoly(rat(3, 4));
  CHECK(p.eval(rat(2)) == rat(7, 4));
  XPoly q = p * p;
  CHECK(q.coeff(2) == rat(1, 4));
  CHECK(q.coeff(1) == rat(3, 4));
  CHECK(q.coeff(0) == rat(9, 16));
  CHECK((p - p).is_zero());
  CHECK(XPoly::x(-1).eval(rat(1, 3)) == 3);
}

TEST_CASE("xpoly dyadic split") {
  XPoly p = XPoly::term(rat(1, 2), 1) + XPoly(rat(3, 4));
  auto [v, b] = p.dyadic_split();
  CHECK(v == -2);
  REQUIRE(b.size() == 2);
  CHECK(b[0].first == 0);
  CHECK(b[0].second == 3);
  CHECK(b[1].first == 1);
  CHECK(b[1].second == 2);
  XPoly odd = XPoly(rat(12));
  auto [v2, b2] = odd.dyadic_split();
  CHECK(v2 == 2);
  CHECK(b2[0].second == 3);
}

TEST_CASE("mpoly multiply and exact division") {
  // (z1 - 1)(z1 + 1) = z1^2 - 1, then divide back
  MPoly zm1 = Factor::zm1(0).poly(1);
  MPoly zp1 = Factor::zp1(0).poly(1);
  MPoly prod = zm1 * zp1;
  CHECK(prod.degree_in(0) == 2);
  auto q = prod.try_divide(zm1);
  REQUIRE(q.has_value());
  CHECK(*q == zp1);
  auto bad = prod.try_divide(Factor::z(0).poly(1));
  CHECK(!bad.has_value());
}

TEST_CASE("mpoly derivative") {
  // d/dz (alpha z^2) = 2 alpha z
  MPoly p = MPoly::variable(1, 1) * MPoly::variable(1, 0, 2);
  MPoly d = p.derivative(0);
  MPoly want = MPoly::variable(1, 1) * MPoly::variable(1, 0);
  want *= Rat(2);
  CHECK(d == want);
}

static RatFn one_over(int nz, const Factor& f, int e = 1) {
  return RatFn(MPoly::constant(nz, Rat(1)), {{f, e}});
}

TEST_CASE("ratfn add with pole merging") {
  // 1/(z-1) + 1/(z+1) = 2z/((z-1)(z+1))
  RatFn s = one_over(1, Factor::zm1(0)) + one_over(1, Factor::zp1(0));
  MPoly want_num = MPoly::variable(1, 0);
  want_num *= Rat(2);
  CHECK(s.num() == want_num);
  FactorMap want_den{{Factor::zm1(0), 1}, {Factor::zp1(0), 1}};
  CHECK(s.den() == want_den);
}

TEST_CASE("ratfn multiply cancels shared factors") {
  // X/(z1 z2 - 1)^2 * (z1 z2 - 1) = X/(z1 z2 - 1)
  RatFn a(MPoly::constant(2, XPoly::x()), {{Factor::zzm1(0, 1), 2}});
  RatFn b = RatFn::from_poly(Factor::zzm1(0, 1).poly(2));
  RatFn p = a * b;
  CHECK(p.num() == MPoly::constant(2, XPoly::x()));
  FactorMap want{{Factor::zzm1(0, 1), 1}};
  CHECK(p.den() == want);
}

TEST_CASE("ratfn reduction is canonical") {
  // (z^2 - 1)/((z-1)^2 (z+1)) reduces to 1/(z-1)
  MPoly num = Factor::zm1(0).poly(1) * Factor::zp1(0).poly(1);
  RatFn r(num, {{Factor::zm1(0), 2}, {Factor::zp1(0), 1}});
  CHECK(r == one_over(1, Factor::zm1(0)));
}

TEST_CASE("ratfn derivative") {
  // d/dz 1/z = -1/z^2
  RatFn d = one_over(1, Factor::z(0)).derivative(0);
  RatFn want(MPoly::constant(1, Rat(-1)), {{Factor::z(0), 2}});
  CHECK(d == want);
  // d/dz 1/(alpha z - 1) = -alpha/(alpha z - 1)^2
  RatFn d2 = one_over(1, Factor::azm1(0)).derivative(0);
  RatFn want2(-MPoly::variable(1, 1), {{Factor::azm1(0), 2}});
  CHECK(d2 == want2);
  // d/dalpha 1/(alpha z - 1) = -z/(alpha z - 1)^2
  RatFn d3 = one_over(1, Factor::azm1(0)).derivative(1);
  RatFn want3(-MPoly::variable(1, 0), {{Factor::azm1(0), 2}});
  CHECK(d3 == want3);
}

TEST_CASE("ratfn derivative leibniz spot check") {
  RatFn f = one_over(1, Factor::zm1(0)) + RatFn::variable(1, 1, 2);
  RatFn g(MPoly::variable(1, 0), {{Factor::azm1(0), 1}});
  RatFn lhs = (f * g).derivative(0);
  RatFn rhs = f.derivative(0) * g + f * g.derivative(0);
  CHECK(lhs == rhs);
}

TEST_CASE("ratfn substitution") {
  // (1/z - 1/z^3) at z = 2 -> 3/8
  RatFn w = one_over(1, Factor::z(0)) - one_over(1, Factor::z(0), 3);
  RatFn at2 = w.substitute_z_rat(0, rat(2)).compacted();
  CHECK(at2 == RatFn::constant(0, rat(3, 8)));
  // 1/(alpha z - 1) at z = alpha -> 1/((alpha-1)(alpha+1))
  RatFn g = one_over(1, Factor::azm1(0)).substitute_z_to_alpha(0).compacted();
  RatFn wantg(MPoly::constant(0, Rat(1)),
              {{Factor::am1(), 1}, {Factor::ap1(), 1}});
  CHECK(g == wantg);
  // 1/(z1 z2 - 1) at z1 = z2 -> 1/((z2-1)(z2+1))
  RatFn h = one_over(2, Factor::zzm1(0, 1)).substitute_z_to_z(0, 1);
  RatFn wanth(MPoly::constant(2, Rat(1)),
              {{Factor::zm1(1), 1}, {Factor::zp1(1), 1}});
  CHECK(h == wanth);
}

TEST_CASE("ratfn exact numeric eval") {
  RatFn f(MPoly::variable(2, 2) * MPoly::constant(2, XPoly::x()),
          {{Factor::zzm1(0, 1), 1}, {Factor::am1(), 1}});
  // X*alpha/((z1 z2 - 1)(alpha - 1)) at z=(2,3), alpha=3, X=1/2
  Rat v = f.eval({rat(2), rat(3)}, rat(3), rat(1, 2));
  CHECK(v == rat(3, 20));
  CHECK_THROWS_AS(f.eval({rat(1), rat(1)}, rat(3), rat(1, 2)), PoleHit);
}

TEST_CASE("ratfn pole hit on substitution") {
  CHECK_THROWS_AS(one_over(1, Factor::zm1(0)).substitute_z_rat(0, rat(1)),
                  PoleHit);
}

TEST_CASE("ratfn divided numerator") {
  // (z^2 - 1)/(z - alpha substituted form): divide numerator by (z-1)
  MPoly num = Factor::zm1(0).poly(1) * Factor::zp1(0).poly(1);
  RatFn r(num, {{Factor::z(0), 1}});
  RatFn q = r.divided_numerator(Factor::zm1(0).poly(1), "test");
  CHECK(q.num() == Factor::zp1(0).poly(1));
  CHECK_THROWS_AS(q.divided_numerator(Factor::zm1(0).poly(1), "test"),
                  NoncancellingSingularity);
}
