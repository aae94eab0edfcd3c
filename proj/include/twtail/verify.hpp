#ifndef TWTAIL_VERIFY_HPP
#define TWTAIL_VERIFY_HPP

#include <twtail/correlators.hpp>

#include <string>
#include <vector>

namespace twtail {

struct VerifyItem {
  std::string name;
  bool pass = false;
};

inline bool all_pass(const std::vector<VerifyItem>& items) {
  for (const auto& it : items)
    if (!it.pass) return false;
  return true;
}

// Re-derives the frozen reference formulas: five low-order correlators,
// three correction integrals, three edge polynomials with their pole data,
// three exponent polynomials, and the expanded tail coefficients for
// beta in {1, 2, 4} through order tailOrder (1..6).
std::vector<VerifyItem> verify_paper(CorrTable& table, int tailOrder);

// Independent Airy/Painleve oracle: the two integrated series displays and
// the coefficient-by-coefficient comparison against the tail expansion for
// beta in {1, 2, 4} through the given order.
std::vector<VerifyItem> verify_painleve(CorrTable& table, int order);

// Symbolic-beta double-scaling check of the deviation expansion against the
// tail series.
std::vector<VerifyItem> verify_scaling(CorrTable& table, int order);

}  // namespace twtail

#endif
