#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <twtail/tail.hpp>

#include <cmath>

using namespace twtail;

namespace {

XPoly xpc(std::vector<std::pair<int, Rat>> v) {
  XPoly p;
  for (auto& [e, c] : v) p += XPoly::term(c, e);
  return p;
}

}  // namespace

TEST_CASE("edge extraction reproduces the first three entries") {
  CorrTable t;
  BreveEntry b1 = breve_extract(1, t);
  CHECK(b1.p == 3);
  CHECK(b1.poly == xpc({{2, -5}, {1, 27}, {0, -39}}));
  BreveEntry b2 = breve_extract(2, t);
  CHECK(b2.p == 5);
  CHECK(b2.poly ==
        xpc({{3, -30}, {2, 219}, {1, -573}, {0, 540}}));
  BreveEntry b3 = breve_extract(3, t);
  CHECK(b3.p == 9);
  CHECK(b3.poly ==
        xpc({{4, -1105}, {3, 9720}, {2, -34557}, {1, 59238}, {0, -41433}}));
}

TEST_CASE("triangular transform reproduces the exponent polynomials") {
  CorrTable t;
  std::vector<BreveEntry> entries;
  for (int m = 1; m <= 3; ++m) entries.push_back(breve_extract(m, t));
  std::vector<XPoly> R = breve_to_R(entries);
  REQUIRE(R.size() == 3);
  // first entry reduces to poly/24 - (3/4) X
  CHECK(R[0] == entries[0].poly / Rat(24) - XPoly::term(rat(3, 4), 1));
  CHECK(R[0] == xpc({{2, rat(-5, 24)}, {1, rat(9, 24)}, {0, rat(-39, 24)}}));
  CHECK(R[1] == xpc({{2, rat(55, 64)}, {1, rat(-95, 64)}, {0, rat(180, 64)}}));
  CHECK(R[2] == xpc({{4, rat(-1105, 4608)},
                     {3, rat(3240, 4608)},
                     {2, rat(-23325, 4608)},
                     {1, rat(34938, 4608)},
                     {0, rat(-41433, 4608)}}));
}

TEST_CASE("expanded series matches the classical beta coefficients") {
  CorrTable t;
  std::vector<BreveEntry> entries;
  for (int m = 1; m <= 3; ++m) entries.push_back(breve_extract(m, t));
  TailExpansion te = assemble_tail(3, entries);
  // beta = 2 (X = 1)
  CHECK(te.complementExpanded[0].eval(Rat(1)) == rat(-35, 24));
  CHECK(te.complementExpanded[1].eval(Rat(1)) == rat(3745, 1152));
  CHECK(te.complementExpanded[2].eval(Rat(1)) == rat(-805805, 82944));
  // composite structure of the second coefficient
  Rat c1 = te.complementExponent[0].eval(Rat(1));
  Rat c2 = te.complementExponent[1].eval(Rat(1));
  CHECK(te.complementExpanded[1].eval(Rat(1)) == c2 + c1 * c1 / Rat(2));
  // beta = 1 (X = 2)
  CHECK(te.complementExpanded[0].eval(Rat(2)) == rat(-41, 48));
  CHECK(te.complementExpanded[1].eval(Rat(2)) == rat(9241, 4608));
  CHECK(te.complementExpanded[2].eval(Rat(2)) == rat(-5075225, 663552));
  // beta = 4 (X = 1/2)
  CHECK(te.complementExpanded[0].eval(rat(1, 2)) == rat(-143, 48));
  CHECK(te.complementExpanded[1].eval(rat(1, 2)) == rat(41509, 4608));
  CHECK(te.complementExpanded[2].eval(rat(1, 2)) == rat(-20443229, 663552));
}

TEST_CASE("formal exp and log are mutually inverse") {
  CorrTable t;
  std::vector<BreveEntry> entries;
  for (int m = 1; m <= 3; ++m) entries.push_back(breve_extract(m, t));
  TailExpansion te = assemble_tail(3, entries);
  std::vector<XPoly> back = formal_log(te.complementExpanded);
  REQUIRE(back.size() == te.complementExponent.size());
  for (std::size_t i = 0; i < back.size(); ++i)
    CHECK(back[i] == te.complementExponent[i]);
  back = formal_log(te.densityExpanded);
  for (std::size_t i = 0; i < back.size(); ++i)
    CHECK(back[i] == te.densityExponent[i]);
}

TEST_CASE("density series is minus the derivative of the complement") {
  CorrTable t;
  std::vector<BreveEntry> entries;
  for (int m = 1; m <= 3; ++m) entries.push_back(breve_extract(m, t));
  TailExpansion te = assemble_tail(3, entries);
  // -d/ds of C s^{-3beta/4} e^{-2beta s^{3/2}/3} E(w), w = s^{-3/2}, equals
  // the density prefactor times E(w) [1 + (3/4) w + sum_m (3m/4) R_m w^{m+1}]
  std::vector<XPoly> rhs(te.order);  // rhs[k-1] = coefficient of w^k
  rhs[0] = XPoly(rat(3, 4));
  for (int k = 2; k <= te.order; ++k)
    rhs[k - 1] = te.R[k - 2] * rat(3 * (k - 1), 4);
  for (int m = 1; m <= te.order; ++m) {
    XPoly v = te.complementExpanded[m - 1] + rhs[m - 1];
    for (int k = 1; k < m; ++k)
      v += te.complementExpanded[m - k - 1] * rhs[k - 1];
    CHECK(te.densityExpanded[m - 1] == v);
  }
}

TEST_CASE("numeric tail evaluation") {
  CorrTable t;
  std::vector<BreveEntry> entries;
  for (int m = 1; m <= 3; ++m) entries.push_back(breve_extract(m, t));
  TailExpansion te = assemble_tail(3, entries);
  // beta = 2, s = 4, order 3 complement
  long double ref = expl(-32.0L / 3) / (128 * 3.14159265358979323846L) *
                    (1 - 35.0L / (24 * 8) + 3745.0L / (1152 * 64) -
                     805805.0L / (82944.0L * 512));
  auto v = eval_tail(4.0L, 2.0L, 3, te, TailKind::complement);
  CHECK(fabsl(v.value - ref) / ref < 1e-15L);
  CHECK(fabsl(v.value / 4.9e-8L - 1) < 0.05L);
  CHECK(v.last_term > 0);
  // order 0 strips the series
  auto v0 = eval_tail(4.0L, 2.0L, 0, te, TailKind::complement);
  CHECK(fabsl(v0.value - expl(-32.0L / 3) /
                             (128 * 3.14159265358979323846L)) /
            v0.value <
        1e-15L);
  // decay in s at the expected rate
  auto w1 = eval_tail(9.0L, 2.0L, 3, te, TailKind::complement);
  auto w2 = eval_tail(16.0L, 2.0L, 3, te, TailKind::complement);
  CHECK(w2.value < w1.value);
  CHECK(w1.value < v.value);
  // density prefactor identity at beta = 2: Gamma(2)/(64 pi) s^{-1} e^{...}
  auto d = eval_tail(4.0L, 2.0L, 0, te, TailKind::density);
  long double dref = expl(-32.0L / 3) / (32 * 3.14159265358979323846L);
  CHECK(fabsl(d.value - dref) / dref < 1e-15L);
  CHECK_THROWS_AS(eval_tail(-1.0L, 2.0L, 0, te, TailKind::complement),
                  NonPositiveS);
  CHECK_THROWS_AS(eval_tail(1.0L, 2.0L, 9, te, TailKind::complement),
                  std::invalid_argument);
}
