#ifndef TWTAIL_MC_HPP
#define TWTAIL_MC_HPP

#include <twtail/deviation.hpp>

#include <cstdint>
#include <stdexcept>
#include <vector>

namespace twtail {

struct RegimeTooRare : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// xoshiro256++ 1.0 (Blackman & Vigna), state filled by splitmix64.
// sub(seed, index) gives the deterministic per-sample substream, keyed by
// the sample index so results do not depend on the thread count.
struct Rng {
  uint64_t s[4];
  explicit Rng(uint64_t seed);
  static Rng sub(uint64_t seed, uint64_t index);
  uint64_t next();
  double uniform();          // (0, 1)
  double normal();           // standard normal, polar method
  double gamma(double shape);  // unit scale, Marsaglia-Tsang
  double chi(double dof);      // sqrt of Gamma(dof/2, scale 2)

 private:
  bool haveSpare = false;
  double spare = 0;
};

// Symmetric tridiagonal matrix: diag has N entries, offdiag N-1.
struct TridiagMatrix {
  std::vector<double> diag;
  std::vector<double> offdiag;
};

struct TailEstimate {
  double pHat = 0;
  double stdErr = 0;  // sqrt(pHat (1 - pHat) / nSamples)
  long long nSamples = 0;
  uint64_t seed = 0;
  long long N = 0;
  double beta = 0, t = 0, a = 0;
};

struct DeviationComparison {
  TailEstimate estimate;
  double predicted = 0;    // integral of the truncated density over [a, inf)
  double ratio = 0;        // pHat / predicted
  double uncertainty = 0;  // relative: statistical + truncation proxy
};

// Tridiagonal realization of the Gaussian beta-ensemble, scaled so the
// limiting spectral edge sits at 2 sqrt(t): Gaussian diagonal of variance
// (2/beta)(t/N), off-diagonals chi_{beta(N-1)}, ..., chi_beta times
// sqrt(t/(N beta)).
TridiagMatrix sample_tridiag(long long N, double beta, double t, Rng& rng);

// Number of eigenvalues below x, by the negative-pivot count of the shifted
// LDL^T recursion; zero pivots are nudged to -DBL_MIN.
int sturm_count(const TridiagMatrix& m, double x);

// Largest eigenvalue by bisection on sturm_count within Gershgorin bounds.
double lambda_max(const TridiagMatrix& m, double tol);

// All eigenvalues in ascending order, each by bisection to tol.
std::vector<double> all_eigenvalues(const TridiagMatrix& m, double tol);

TailEstimate estimate_tail(long long N, double beta, double t, double a,
                           long long nSamples, uint64_t seed, int threads = 1);

// Integral over [a, inf) of the truncated large-deviation density, by
// adaptive Simpson quadrature on a window wide enough for the tail to be
// negligible.
double predicted_tail(long long N, long double beta, long double t,
                      long double a, int order, const DeviationExpansion& exp);

// Throws RegimeTooRare when predicted * nSamples < 100.
DeviationComparison compare_deviation(long long N, double beta, double t,
                                      double a, long long nSamples, int order,
                                      uint64_t seed,
                                      const DeviationExpansion& exp,
                                      int threads = 1);

}  // namespace twtail

#endif
