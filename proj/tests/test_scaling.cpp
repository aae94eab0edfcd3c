#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <twtail/scaling.hpp>

using namespace twtail;

TEST_CASE("edge scaling collapses the deviation expansion onto the tail") {
  CorrTable t;
  DeviationExpansion de = assemble_deviation(3, t);
  std::vector<BreveEntry> entries;
  for (int m = 1; m <= 3; ++m) entries.push_back(breve_extract(m, t));
  TailExpansion te = assemble_tail(3, entries);
  ScalingReport rep = double_scaling_check(de, te);
  CHECK(rep.rate_ok);
  CHECK(rep.log_u_cancels);
  CHECK(rep.log_s_ok);
  CHECK(rep.prefactor_ok);
  CHECK(rep.exponent_ok);
  CHECK(rep.residual_ok);
  CHECK(rep.ok());
}

TEST_CASE("tampered tail data is detected") {
  CorrTable t;
  DeviationExpansion de = assemble_deviation(2, t);
  std::vector<BreveEntry> entries;
  for (int m = 1; m <= 2; ++m) entries.push_back(breve_extract(m, t));
  TailExpansion te = assemble_tail(2, entries);
  te.densityExponent[0] += XPoly(Rat(1));
  ScalingReport rep = double_scaling_check(de, te);
  CHECK(!rep.exponent_ok);
  CHECK(!rep.ok());
}
