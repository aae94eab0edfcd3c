#ifndef TWTAIL_PAINLEVE_HPP
#define TWTAIL_PAINLEVE_HPP

#include <twtail/tail.hpp>

#include <map>
#include <vector>

namespace twtail {

struct Mismatch : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// One exponential grade of an asymptotic series:
//   e^{-g (2/3) s^{3/2}} * pi^{-piHalf/2} * sum_j c[j] s^{-gamma - 3j/2}
// Only the first `trusted` coefficients are meaningful.
struct Grade {
  Rat gamma;
  int piHalf = 0;
  std::vector<Rat> c;
  int trusted = 0;
};

// Series graded by powers of e^{-(2/3) s^{3/2}}; grade 0 is reserved for the
// exact constant term.
struct GradedAsySeries {
  std::map<int, Grade> g;

  bool has(int grade) const { return g.count(grade) != 0; }
  const Grade& at(int grade) const { return g.at(grade); }
};

GradedAsySeries gs_const(const Rat& v);
GradedAsySeries gs_add(const GradedAsySeries& a, const GradedAsySeries& b);
GradedAsySeries gs_sub(const GradedAsySeries& a, const GradedAsySeries& b);
GradedAsySeries gs_scale(const GradedAsySeries& a, const Rat& v);
GradedAsySeries gs_mul(const GradedAsySeries& a, const GradedAsySeries& b,
                       int maxGrade);
// multiply by s^p
GradedAsySeries gs_mul_spow(const GradedAsySeries& a, const Rat& p);
GradedAsySeries gs_derivative(const GradedAsySeries& a);
// int_s^infty; input must have no grade-0 part
GradedAsySeries gs_integrate(const GradedAsySeries& a);
// exp of a series with grades >= 1 only
GradedAsySeries gs_exp(const GradedAsySeries& a, int maxGrade);
// s -> 2^{2/3} s; every grade g goes to 2g and -2 gamma/3 must be an integer
GradedAsySeries gs_rescale2(const GradedAsySeries& a);

// Airy-normalized decaying Painleve II solution as a single grade-1 series
// with J+1 coefficients, from the formal grade-1 ODE q'' = s q.
GradedAsySeries q_series(int J);
// R(s) = int_s^infty q^2(t) dt
GradedAsySeries r_series(int J);

// 1 - TW_beta for beta in {1, 2, 4}, through exponential grade maxGrade
// (after the beta = 4 argument rescaling).
GradedAsySeries f_beta_series(int beta, int J, int maxGrade = 4);

struct OracleReport {
  bool rate_ok = false;       // leading exponential grade
  bool power_ok = false;      // s power
  bool prefactor_ok = false;  // rational * pi^{-k/2} constant
  std::vector<std::pair<Rat, Rat>> coeffs;  // (oracle, tail) per order
  int first_mismatch = -1;                  // -1 when everything agrees
  bool ok() const {
    return rate_ok && power_ok && prefactor_ok && first_mismatch < 0;
  }
};

OracleReport cross_validate(const TailExpansion& te, int beta, int M);

}  // namespace twtail

#endif
