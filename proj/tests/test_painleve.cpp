#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <twtail/painleve.hpp>

using namespace twtail;

TEST_CASE("decaying Painleve II series coefficients") {
  GradedAsySeries q = q_series(4);
  const Grade& g = q.at(1);
  CHECK(g.gamma == rat(1, 4));
  CHECK(g.piHalf == 1);
  CHECK(g.c[0] == rat(1, 2));  // Airy normalization 1/(2 sqrt(pi))
  CHECK(g.c[1] / g.c[0] == rat(-5, 48));
  CHECK(g.c[2] / g.c[0] == rat(385, 4608));
}

TEST_CASE("series solves its second-order equation at the leading grade") {
  GradedAsySeries q = q_series(8);
  GradedAsySeries resid =
      gs_sub(gs_derivative(gs_derivative(q)), gs_mul_spow(q, Rat(1)));
  // every trusted coefficient of q'' - s q cancels
  CHECK(resid.g.empty());
}

TEST_CASE("integrated series match the printed displays") {
  GradedAsySeries Iq = gs_integrate(q_series(8));
  const Grade& gq = Iq.at(1);
  CHECK(gq.gamma == rat(3, 4));
  CHECK(gq.c[0] == rat(1, 2));
  CHECK(gq.c[1] / gq.c[0] == rat(-41, 48));
  CHECK(gq.c[2] / gq.c[0] == rat(9241, 4608));
  CHECK(gq.c[3] / gq.c[0] == rat(-5075225, 663552));
  CHECK(gq.c[4] / gq.c[0] == rat(5153008945LL, 127401984LL));
  CHECK(gq.c[5] / gq.c[0] == rat(-1674966309205LL, 6115295232LL));
  CHECK(gq.c[6] / gq.c[0] == rat(3985569631633205LL, 1761205026816LL));

  GradedAsySeries IR = gs_integrate(r_series(8));
  const Grade& gr = IR.at(2);
  CHECK(gr.gamma == rat(3, 2));
  CHECK(gr.piHalf == 2);
  CHECK(gr.c[0] == rat(1, 16));
  CHECK(gr.c[1] / gr.c[0] == rat(-35, 24));
  CHECK(gr.c[2] / gr.c[0] == rat(3745, 1152));
  CHECK(gr.c[3] / gr.c[0] == rat(-805805, 82944));
  CHECK(gr.c[4] / gr.c[0] == rat(289554265LL, 7962624LL));
  CHECK(gr.c[5] / gr.c[0] == rat(-31241084875LL, 191102976LL));
  CHECK(gr.c[6] / gr.c[0] == rat(23604769513325LL, 27518828544LL));
}

TEST_CASE("both definitions of the auxiliary integral agree") {
  // (q')^2 - s q^2 - q^4 vs int_s^infty q^2, at the leading grade
  GradedAsySeries q = q_series(8);
  GradedAsySeries dq = gs_derivative(q);
  GradedAsySeries alg = gs_sub(gs_mul(dq, dq, 2),
                               gs_mul_spow(gs_mul(q, q, 2), Rat(1)));
  GradedAsySeries integral = r_series(8);
  const Grade& a = alg.at(2);
  const Grade& b = integral.at(2);
  CHECK(a.gamma == b.gamma);
  int n = std::min(a.trusted, b.trusted);
  CHECK(n >= 6);
  for (int j = 0; j < n; ++j) CHECK(a.c[j] == b.c[j]);
}

TEST_CASE("integration and differentiation are mutually inverse") {
  GradedAsySeries q = q_series(8);
  GradedAsySeries back = gs_scale(gs_derivative(gs_integrate(q)), Rat(-1));
  const Grade& a = q.at(1);
  const Grade& b = back.at(1);
  CHECK(a.gamma == b.gamma);
  int n = std::min(a.trusted, b.trusted);
  CHECK(n >= 8);
  for (int j = 0; j < n; ++j) CHECK(a.c[j] == b.c[j]);
}

TEST_CASE("leading tail data of the three classical laws") {
  // beta = 1: grade 1, 1/(4 sqrt(pi)) s^{-3/4}
  GradedAsySeries f1 = f_beta_series(1, 6, 2);
  CHECK(f1.at(1).gamma == rat(3, 4));
  CHECK(f1.at(1).piHalf == 1);
  CHECK(f1.at(1).c[0] == rat(1, 4));
  CHECK(f1.at(1).c[1] / f1.at(1).c[0] == rat(-41, 48));
  // beta = 2: grade 2, 1/(16 pi) s^{-3/2}
  GradedAsySeries f2 = f_beta_series(2, 6, 2);
  CHECK(f2.at(2).gamma == rat(3, 2));
  CHECK(f2.at(2).piHalf == 2);
  CHECK(f2.at(2).c[0] == rat(1, 16));
  CHECK(f2.at(2).c[1] / f2.at(2).c[0] == rat(-35, 24));
  // beta = 4: the s^{-3/2} leader cancels exactly, leaving 1/(512 pi) s^{-3}
  GradedAsySeries f4 = f_beta_series(4, 6, 2);
  CHECK(f4.at(4).gamma == Rat(3));
  CHECK(f4.at(4).piHalf == 2);
  CHECK(f4.at(4).c[0] == rat(1, 512));
  CHECK(f4.at(4).c[1] / f4.at(4).c[0] == rat(-143, 48));
}

TEST_CASE("oracle agrees with the loop-equation tail through order 3") {
  CorrTable t;
  std::vector<BreveEntry> entries;
  for (int m = 1; m <= 3; ++m) entries.push_back(breve_extract(m, t));
  TailExpansion te = assemble_tail(3, entries);
  for (int beta : {1, 2, 4}) {
    OracleReport rep = cross_validate(te, beta, 3);
    CHECK(rep.rate_ok);
    CHECK(rep.power_ok);
    CHECK(rep.prefactor_ok);
    CHECK(rep.first_mismatch == -1);
    CHECK(rep.coeffs.size() == 3);
    CHECK(rep.ok());
  }
}
