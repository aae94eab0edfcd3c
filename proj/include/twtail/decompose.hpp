#ifndef TWTAIL_DECOMPOSE_HPP
#define TWTAIL_DECOMPOSE_HPP

#include <twtail/ratfn.hpp>

#include <vector>

namespace twtail {

// Degree data for one correlator, after splitting it into partial fraction
// terms and counting denominator exponents of the tracked factors alpha-1,
// z_i-1, alpha z_i-1 and z_i z_j-1 (poles at z_i = 0, -1 and alpha = 0, -1
// do not count towards the degree).
struct DegreeReport {
  int n = 0;
  int k = 0;
  int degree = 0;         // max tracked-factor degree over the split terms
  int xDegree = 0;        // max power of X among terms attaining `degree`
  int termCount = 0;      // number of split terms
  bool splitComplete = true;  // false if some joint pole pair had no
                              // in-algebra split; degree is then only an
                              // upper bound
  int diagPoleOrder = 0;  // pole order at alpha = 1 of the full diagonal
  int diagXDegree = 0;    // max power of X in its leading Laurent coefficient
};

// Splits f into partial fraction terms, variable by variable: whenever two
// denominator factors share their leading variable and their resultant in it
// stays inside the allowed factor set, the term is split along the Bezout
// identity. Summing the returned terms gives back f.
std::vector<RatFn> pf_split(const RatFn& f);

// Substitutes z_i = alpha for every variable, leaving a univariate function
// of alpha.
RatFn diagonal_restriction(const RatFn& f);

DegreeReport analyze_degree(int n, int k, const RatFn& omega);

}  // namespace twtail

#endif
