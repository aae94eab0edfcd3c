#ifndef TWTAIL_CORRELATORS_HPP
#define TWTAIL_CORRELATORS_HPP

#include <twtail/ratfn.hpp>

#include <map>
#include <utility>

namespace twtail {

struct MissingDependency : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// omega_1^[0](z) = 1/z - 1/z^3
RatFn seed_omega_1_0();

// x'(z) = (z^2 - 1)/z^2 as a rational function with z = variable `var`
RatFn xprime(int nz, int var);
RatFn inv_xprime(int nz, int var);

// Table of correlator expansion coefficients, built by the triangular
// recursion on n + k.
class CorrTable {
 public:
  // computes (n,k) and everything it depends on, memoized
  const RatFn& get(int n, int k);
  // computes every (n,k) with n >= 1, k >= 0, n + k <= maxLayer
  void build(int maxLayer);
  int max_layer() const { return maxLayer_; }
  bool has(int n, int k) const { return tab_.count({n, k}) != 0; }
  const std::map<std::pair<int, int>, RatFn>& entries() const { return tab_; }
  void insert(int n, int k, RatFn v) { tab_[{n, k}] = std::move(v); }

 private:
  RatFn compute(int n, int k);
  std::map<std::pair<int, int>, RatFn> tab_;
  int maxLayer_ = 0;
};

// One recursion step; table must already hold all lower layers.
RatFn sd_step(int n, int k, CorrTable& table);

// z = alpha substitution for a one-variable correlator; result in alpha only.
RatFn wall_restriction(const RatFn& omega1);

// true if f is invariant under every transposition of its z variables
bool is_symmetric(const RatFn& f);

}  // namespace twtail

#endif
