#ifndef TWTAIL_DEVIATION_HPP
#define TWTAIL_DEVIATION_HPP

#include <twtail/correlators.hpp>
#include <twtail/partfrac.hpp>

#include <utility>
#include <vector>

namespace twtail {

struct Divergent : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct OutsideRegime : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Symbolic closed form in alpha: a rational part plus a sum of
// coeff(X) * ln(arg(alpha)) terms with monic squarefree arguments.
struct ClosedForm {
  RatFn rationalPart;                          // nz == 0
  std::vector<std::pair<XPoly, MPoly>> logTerms;  // (coefficient, argument)
};

// Large-deviation expansion of the density of the maximal eigenvalue to the
// right of the edge: orderN is the coefficient of N in the log-density,
// orderOne the N^0 part, and corrections[m-1] holds the two pieces of the
// N^{-m} coefficient (Bernoulli term in X and the integrated correlator
// correction in alpha).
struct DeviationExpansion {
  int order = 0;
  ClosedForm orderN;
  ClosedForm orderOne;
  std::vector<std::pair<XPoly, RatFn>> corrections;
};

// -int_alpha^inf of the wall-restricted one-point correlator at order k,
// computed exactly via partial fractions and term-wise antiderivatives.
RatFn integrate_correction(int k, CorrTable& table);

// The N^1 and N^0 closed forms of the log-density in alpha space (t-free;
// the a <-> alpha conversion restores t at the numeric interface).
std::pair<ClosedForm, ClosedForm> closed_forms_low_orders();

// -B_{m+1}/(m(m+1)) * X^m
XPoly bernoulli_term(int m);

DeviationExpansion assemble_deviation(int order, CorrTable& table);

// Exact derivative in alpha of a closed form (log arguments must factor
// over the allowed alpha factors).
RatFn closed_form_derivative(const ClosedForm& cf);

// Numeric evaluation helpers (long double precision).
long double rat_ld(const Rat& r);
long double xpoly_eval_ld(const XPoly& p, long double x);
long double ratfn_eval_alpha_ld(const RatFn& f, long double alpha,
                                long double x);
long double closed_form_eval_ld(const ClosedForm& cf, long double alpha,
                                long double x);

// Gamma function with at least 1e-12 relative accuracy on [1e-3, 1e4].
long double gamma_eval(long double x);

struct DensityValue {
  long double value;      // truncated density
  long double last_term;  // magnitude of the last included log-term
};

// Evaluates the truncated expansion of the density at a > 2 sqrt(t).
DensityValue eval_density(long long N, long double beta, long double t,
                          long double a, int order,
                          const DeviationExpansion& exp);

// Log of the Selberg-exact N-dependent constant at t = 1 (with the rate's
// integration constant e^{-N beta/2} folded in) and of its Stirling form
// with Bernoulli corrections through the given order. Their difference
// decays as N^{-(order+1)} for even order.
long double log_prefactor_exact(long long N, long double beta);
long double log_prefactor_stirling(long long N, long double beta, int order);

}  // namespace twtail

#endif
