#ifndef TWTAIL_FLAT_HPP
#define TWTAIL_FLAT_HPP

#include <twtail/poly.hpp>

#include <algorithm>
#include <deque>
#include <optional>
#include <utility>
#include <vector>

namespace twtail {

// Flat polynomial working form: terms sorted by monomial. The hot paths
// (summation over a common denominator, canonical reduction) run on this
// representation to avoid per-term map churn.
using FlatTerms = std::vector<std::pair<Mono, XPoly>>;

// c_hi * x^hi + c_lo * x^lo with hi > lo in the monomial order; c_lo == 0
// encodes a plain monomial. Every denominator factor and every divisor used
// by the recursion has this shape.
struct Binomial {
  Mono hi;
  Rat c_hi;
  Mono lo;
  Rat c_lo;
};

inline FlatTerms flat_from(const MPoly& p) {
  FlatTerms v;
  v.reserve(p.terms().size());
  for (const auto& [m, c] : p.terms()) v.emplace_back(m, c);
  return v;
}

// sort by monomial, merge duplicates, drop zeros
inline void flat_normalize(FlatTerms& v) {
  std::sort(v.begin(), v.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::size_t out = 0;
  for (std::size_t i = 0; i < v.size();) {
    Mono m = v[i].first;
    XPoly c = std::move(v[i].second);
    for (++i; i < v.size() && v[i].first == m; ++i) c += v[i].second;
    if (!c.is_zero()) v[out++] = {m, std::move(c)};
  }
  v.resize(out);
}

// Multiplication by a binomial as a merge of two shifted streams. Shifting
// every monomial by the same exponent vector preserves the sort order.
inline FlatTerms flat_mul_bin(FlatTerms&& v, const Binomial& b) {
  if (b.c_lo == 0) {
    for (auto& [m, c] : v) {
      m = Mono::from_bits(m.bits() + b.hi.bits());
      if (b.c_hi != 1) c *= b.c_hi;
    }
    return std::move(v);
  }
  FlatTerms r;
  r.reserve(v.size() * 2);
  const std::uint64_t dh = b.hi.bits(), dl = b.lo.bits();
  std::size_t i = 0, j = 0;  // i: hi stream (lags), j: lo stream
  while (i < v.size() || j < v.size()) {
    const std::uint64_t ki = i < v.size() ? v[i].first.bits() + dh : ~0ull;
    const std::uint64_t kj = j < v.size() ? v[j].first.bits() + dl : ~0ull;
    if (ki < kj) {
      XPoly c = std::move(v[i].second);  // last use of slot i (i <= j)
      if (b.c_hi != 1) c *= b.c_hi;
      r.emplace_back(Mono::from_bits(ki), std::move(c));
      ++i;
    } else if (kj < ki) {
      XPoly c = v[j].second;
      c *= b.c_lo;
      r.emplace_back(Mono::from_bits(kj), std::move(c));
      ++j;
    } else {
      XPoly c = v[j].second;
      c *= b.c_lo;
      XPoly ch = std::move(v[i].second);
      if (b.c_hi != 1) ch *= b.c_hi;
      c += ch;
      if (!c.is_zero()) r.emplace_back(Mono::from_bits(ki), std::move(c));
      ++i;
      ++j;
    }
  }
  return r;
}

// Exact division by a binomial via synthetic division, sweeping terms in
// descending order with a queue of pending remainder contributions (their
// keys are generated in descending order too, so no resorting is needed).
// Returns nullopt when the division leaves a remainder. Non-destructive.
inline std::optional<FlatTerms> flat_divide_bin(const FlatTerms& v,
                                                const Binomial& b) {
  if (b.c_lo == 0) {
    FlatTerms r;
    r.reserve(v.size());
    for (const auto& [m, c] : v) {
      if (!b.hi.divides(m)) return std::nullopt;
      XPoly cc = c;
      if (b.c_hi != 1) cc /= b.c_hi;
      r.emplace_back(Mono::from_bits(m.bits() - b.hi.bits()), std::move(cc));
    }
    return r;
  }
  FlatTerms q;  // built descending, reversed at the end
  q.reserve(v.size());
  std::deque<std::pair<std::uint64_t, XPoly>> pend;
  const std::uint64_t dh = b.hi.bits(), dl = b.lo.bits();
  std::size_t i = v.size();
  while (i > 0 || !pend.empty()) {
    const bool hv = i > 0, hp = !pend.empty();
    const std::uint64_t kv = hv ? v[i - 1].first.bits() : 0;
    const std::uint64_t kp = hp ? pend.front().first : 0;
    std::uint64_t k;
    XPoly c;
    if (hv && (!hp || kv > kp)) {
      k = kv;
      c = v[--i].second;
    } else if (hp && (!hv || kp > kv)) {
      k = kp;
      c = std::move(pend.front().second);
      pend.pop_front();
    } else {
      k = kv;
      c = v[--i].second;
      c += pend.front().second;
      pend.pop_front();
    }
    if (c.is_zero()) continue;
    Mono m = Mono::from_bits(k);
    if (!b.hi.divides(m)) return std::nullopt;
    if (b.c_hi != 1) c /= b.c_hi;
    const std::uint64_t kq = k - dh;
    XPoly pc = c;
    pc *= -b.c_lo;
    pend.emplace_back(kq + dl, std::move(pc));
    q.emplace_back(Mono::from_bits(kq), std::move(c));
  }
  std::reverse(q.begin(), q.end());
  return q;
}

// Recognizes a one- or two-term polynomial with constant coefficients.
inline std::optional<Binomial> as_binomial(const MPoly& p) {
  const auto& t = p.terms();
  if (t.empty() || t.size() > 2) return std::nullopt;
  for (const auto& [m, c] : t)
    if (!c.is_constant()) return std::nullopt;
  auto lead = std::prev(t.end());
  Binomial b{lead->first, lead->second.coeff(0), Mono(), Rat(0)};
  if (t.size() == 2) {
    b.lo = t.begin()->first;
    b.c_lo = t.begin()->second.coeff(0);
  }
  return b;
}

}  // namespace twtail

#endif
