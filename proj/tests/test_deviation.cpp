#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <twtail/deviation.hpp>

#include <cmath>

using namespace twtail;

namespace {

XPoly xpc(std::vector<std::pair<int, Rat>> v) {
  XPoly p;
  for (auto& [e, c] : v) p += XPoly::term(c, e);
  return p;
}

// c(X) / (alpha^2 - 1)^j
RatFn sym_term(const XPoly& c, int j) {
  return RatFn(MPoly::constant(0, c),
               {{Factor::am1(), j}, {Factor::ap1(), j}});
}

}  // namespace

TEST_CASE("bernoulli terms") {
  CHECK(bernoulli_term(1) == XPoly::term(rat(-1, 12), 1));
  CHECK(bernoulli_term(2).is_zero());
  CHECK(bernoulli_term(3) == XPoly::term(rat(1, 360), 3));
  CHECK(bernoulli_term(5) == XPoly::term(rat(-1, 1260), 5));
}

TEST_CASE("order-N closed form matches the rate") {
  auto [orderN, orderOne] = closed_forms_low_orders();
  // vanishes at the edge alpha = 1
  CHECK(fabsl(closed_form_eval_ld(orderN, 1.0L, 1.0L)) < 1e-17L);
  // a = 3, t = 1: rate = 3 sqrt(5)/4 + ln((3 - sqrt(5))/2)
  long double alpha = (3 + sqrtl(5)) / 2;
  long double rate = 3 * sqrtl(5) / 4 + logl((3 - sqrtl(5)) / 2);
  CHECK(fabsl(rate - 0.714634L) < 1e-4L);  // quadrature cross-check
  for (long double beta : {1.0L, 2.0L, 4.0L}) {
    long double v = closed_form_eval_ld(orderN, alpha, 2 / beta);
    CHECK(fabsl(v + beta * rate) < 1e-15L);
  }
}

TEST_CASE("closed-form derivatives reproduce the correlator data") {
  auto [orderN, orderOne] = closed_forms_low_orders();
  // d/dalpha orderN = -(beta/2) (alpha^2-1)^2 / alpha^3, beta/2 = 1/X
  MPoly num(0);
  Mono a4, a2;
  a4.set(0, 4);
  a2.set(0, 2);
  num.add_term(a4, XPoly::term(Rat(-1), -1));
  num.add_term(a2, XPoly::term(Rat(2), -1));
  num.add_term(Mono(), XPoly::term(Rat(-1), -1));
  RatFn expected(std::move(num), {{Factor::alpha(), 3}});
  CHECK(closed_form_derivative(orderN) == expected);
  // spec spot value: d(rate)/dalpha at alpha = 2 is 9/16
  Rat v = expected.eval({}, Rat(2), Rat(1));
  CHECK(v == rat(-9, 8));  // -beta * 9/16 at beta = 2

  // d/dalpha orderOne = beta * wall-restricted omega_1^{[1]}
  CorrTable t;
  RatFn wall = wall_restriction(t.get(1, 1));
  CHECK(closed_form_derivative(orderOne) == wall * XPoly::term(Rat(2), -1));
}

TEST_CASE("first correction integral matches the printed display") {
  CorrTable t;
  RatFn g2 = integrate_correction(2, t);
  RatFn expected = sym_term(xpc({{2, -5}, {1, 27}, {0, -39}}) / Rat(6), 3) +
                   sym_term(xpc({{2, -3}, {1, 19}, {0, -33}}) / Rat(4), 2) +
                   sym_term(xpc({{1, 1}, {0, -4}}) / Rat(2), 1);
  CHECK(g2 == expected);
  // evaluated at X = 1 (beta = 2), alpha = sqrt(2): -17/6 - 17/4 - 3/2
  long double v = ratfn_eval_alpha_ld(g2, sqrtl(2.0L), 1.0L);
  CHECK(fabsl(v + 103.0L / 12) < 1e-15L);
}

TEST_CASE("second correction integral matches the printed display") {
  CorrTable t;
  RatFn g3 = integrate_correction(3, t);
  RatFn expected =
      sym_term(xpc({{3, -10}, {2, 73}, {1, -191}, {0, 180}}) / Rat(2), 6) +
      sym_term(xpc({{3, -25}, {2, 187}, {1, -507}, {0, 501}}) / Rat(2), 5) +
      sym_term(xpc({{3, -80}, {2, 627}, {1, -1807}, {0, 1926}}) / Rat(8), 4) +
      sym_term(xpc({{3, -15}, {2, 133}, {1, -438}, {0, 539}}) / Rat(6), 3) +
      sym_term(xpc({{2, 3}, {1, -20}, {0, 38}}) / Rat(4), 2);
  CHECK(g3 == expected);
}

TEST_CASE("third correction integral matches the printed display") {
  CorrTable t;
  RatFn g4 = integrate_correction(4, t);
  RatFn expected =
      sym_term(xpc({{4, -1105}, {3, 9720}, {2, -34557}, {1, 59238},
                    {0, -41433}}) /
                   Rat(18),
               9) +
      sym_term(xpc({{4, -985}, {3, 8724}, {2, -31389}, {1, 54786},
                    {0, -39273}}) /
                   Rat(4),
               8) +
      sym_term(xpc({{4, -767}, {3, 6871}, {2, -25157}, {1, 45003},
                    {0, -33321}}) /
                   Rat(2),
               7) +
      sym_term(xpc({{4, -3443}, {3, 31476}, {2, -118455}, {1, 219640},
                    {0, -170091}}) /
                   Rat(12),
               6) +
      sym_term(xpc({{4, -1014}, {3, 9660}, {2, -38180}, {1, 75015},
                    {0, -62150}}) /
                   Rat(10),
               5) +
      sym_term(xpc({{4, -105}, {3, 1120}, {2, -4953}, {1, 10902},
                    {0, -10153}}) /
                   Rat(8),
               4) +
      sym_term(xpc({{3, 15}, {2, -128}, {1, 412}, {0, -506}}) / Rat(6), 3);
  CHECK(g4 == expected);
}

TEST_CASE("correction integrals are even in alpha") {
  CorrTable t;
  for (int k = 2; k <= 4; ++k) {
    RatFn g = integrate_correction(k, t);
    for (Rat a : {rat(3, 2), rat(7, 3), rat(-5, 2)}) {
      CHECK(g.eval({}, a, rat(5, 7)) == g.eval({}, -a, rat(5, 7)));
    }
  }
}

TEST_CASE("assembled expansion wiring") {
  CorrTable t;
  DeviationExpansion e = assemble_deviation(3, t);
  CHECK(e.corrections.size() == 3);
  CHECK(e.corrections[0].first == XPoly::term(rat(-1, 12), 1));
  CHECK(e.corrections[0].second == integrate_correction(2, t));
  CHECK(e.corrections[1].first.is_zero());
  CHECK(e.corrections[1].second == integrate_correction(3, t));
}

TEST_CASE("density evaluation") {
  CorrTable t;
  DeviationExpansion e = assemble_deviation(2, t);
  // order 0 at N = 10, beta = 2, t = 1, a = 3: the exponent's N-part is
  // -2 N * rate
  long double rate = 3 * sqrtl(5) / 4 + logl((3 - sqrtl(5)) / 2);
  auto d0 = eval_density(10, 2.0L, 1.0L, 3.0L, 0, e);
  long double alpha = (3 + sqrtl(5)) / 2;
  long double order_one = closed_form_eval_ld(e.orderOne, alpha, 1.0L);
  long double log_pref = lgammal(1.0L) - logl(2 * 3.14159265358979323846L);
  CHECK(fabsl(logl(d0.value) - (-20 * rate + order_one + log_pref)) <
        1e-12L);
  // successive orders shrink the recorded last term
  auto d1 = eval_density(10, 2.0L, 1.0L, 3.0L, 1, e);
  auto d2 = eval_density(10, 2.0L, 1.0L, 3.0L, 2, e);
  CHECK(d1.last_term < d0.last_term);
  CHECK(d2.last_term < d1.last_term);
  // the density decays monotonically in a in the far tail
  long double prev = 1;
  for (long double a = 3; a < 6; a += 0.5L) {
    long double v = eval_density(12, 1.0L, 1.0L, a, 2, e).value;
    CHECK(v < prev);
    prev = v;
  }
  CHECK_THROWS_AS(eval_density(10, 2.0L, 1.0L, 1.9L, 0, e), OutsideRegime);
  CHECK_THROWS_AS(eval_density(10, 2.0L, 1.0L, 3.0L, 5, e),
                  std::invalid_argument);
}

TEST_CASE("gamma evaluation accuracy") {
  CHECK(fabsl(gamma_eval(1.0L) - 1.0L) < 1e-15L);
  CHECK(fabsl(gamma_eval(0.5L) - sqrtl(3.14159265358979323846L)) <
        1e-14L);
  CHECK(fabsl(gamma_eval(10.0L) - 362880.0L) < 1e-6L);
  // reflection-style spot check at 1e-3: Gamma(x) ~ 1/x - gamma_E
  long double g = gamma_eval(0.001L);
  CHECK(fabsl(g - 999.423772484595L) / g < 1e-12L);
}

TEST_CASE("exact prefactor approaches the Stirling form") {
  for (long double beta : {1.0L, 2.0L, 4.0L}) {
    for (int order : {2, 4}) {
      long double err[3];
      int i = 0;
      for (long long N : {20, 40, 80})
        err[i++] = fabsl(log_prefactor_exact(N, beta) -
                              log_prefactor_stirling(N, beta, order));
      // truncation error is O(N^{-(order+1)}): halving N scales it by
      // 2^{order+1} up to the next correction
      long double lo = powl(2.0L, order), hi = powl(2.0L, order + 2);
      CHECK(err[0] / err[1] > lo);
      CHECK(err[0] / err[1] < hi);
      CHECK(err[1] / err[2] > lo);
      CHECK(err[1] / err[2] < hi);
    }
  }
}
