#ifndef TWTAIL_TAIL_HPP
#define TWTAIL_TAIL_HPP

#include <twtail/correlators.hpp>
#include <twtail/laurent.hpp>

#include <vector>

namespace twtail {

struct WrongPoleOrder : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NonDyadicDenominator : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NonPositiveS : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Leading edge data of the wall-restricted one-point function at order m+1:
// near alpha = 1 it behaves as -poly(X) / (2^{p+1} (alpha-1)^{3m+1}), with
// poly integer-coefficient of odd content and degree <= m+1.
struct BreveEntry {
  int m = 0;
  int p = 0;
  XPoly poly;
};

// All data of the right-tail expansion through order M.
//   complement: C(beta) s^{-3beta/4} e^{-2beta s^{3/2}/3}
//               * exp[sum_m exponent[m-1](X) s^{-3m/2}]
//   density:    same shape with the density prefactor and s^{1/2-3beta/4}
// expanded[] holds the coefficients of the exponentiated series.
struct TailExpansion {
  int order = 0;
  std::vector<BreveEntry> entries;
  std::vector<XPoly> R;  // exponent polynomials, degree <= m+1
  std::vector<XPoly> complementExponent;
  std::vector<XPoly> densityExponent;
  std::vector<XPoly> complementExpanded;
  std::vector<XPoly> densityExpanded;
};

// Substitutes z = alpha, expands at alpha = 1, checks the pole order is
// exactly 3m+1, and splits the leading coefficient dyadically.
BreveEntry breve_extract(int m, CorrTable& table);

// Solves the triangular partition system turning the edge polynomials into
// the exponent polynomials of the complement series; entries must cover
// m = 1..M contiguously.
std::vector<XPoly> breve_to_R(const std::vector<BreveEntry>& entries);

TailExpansion assemble_tail(int M, const std::vector<BreveEntry>& entries);

// exp of sum_{m>=1} c[m-1] w^m as 1 + sum_{m>=1} e[m-1] w^m, and its inverse.
std::vector<XPoly> formal_exp(const std::vector<XPoly>& c);
std::vector<XPoly> formal_log(const std::vector<XPoly>& e);

enum class TailKind { complement, density };

struct TailValue {
  long double value;
  long double last_term;  // relative magnitude of the last included term
};

TailValue eval_tail(long double s, long double beta, int order,
                    const TailExpansion& te, TailKind kind);

}  // namespace twtail

#endif
