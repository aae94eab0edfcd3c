#ifndef TWTAIL_SCALING_HPP
#define TWTAIL_SCALING_HPP

#include <twtail/deviation.hpp>
#include <twtail/tail.hpp>

namespace twtail {

struct ResidualNPower : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Outcome of substituting the edge scaling a = sqrt(t)(2 + N^{-2/3} s),
// i.e. alpha = 1 + eps with eps^2/alpha = N^{-2/3} s, into the deviation
// expansion and collecting powers of N and s with symbolic beta.
struct ScalingReport {
  bool rate_ok = false;        // exponential rate -(2 beta/3) s^{3/2}
  bool log_u_cancels = false;  // ln N coefficient vanishes identically
  bool log_s_ok = false;       // s power 1/2 - 3 beta/4 (density form)
  bool prefactor_ok = false;   // complement constant Gamma(beta/2)/((4 beta)^{beta/2} 2 pi)
  bool exponent_ok = false;    // s^{-3m/2} coefficients match the tail series
  bool residual_ok = false;    // nothing grows with N after the rescaling
  bool ok() const {
    return rate_ok && log_u_cancels && log_s_ok && prefactor_ok &&
           exponent_ok && residual_ok;
  }
};

ScalingReport double_scaling_check(const DeviationExpansion& de,
                                   const TailExpansion& te);

}  // namespace twtail

#endif
