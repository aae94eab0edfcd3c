#ifndef TWTAIL_LAURENT_HPP
#define TWTAIL_LAURENT_HPP

#include <twtail/ratfn.hpp>

#include <map>

namespace twtail {

// Truncated Laurent series in eps = alpha - center. Exponents in [lo, hi]
// are trusted; anything outside hi is unknown, anything below lo is zero.
struct LaurentSeries {
  Rat center;
  int lo = 0;
  int hi = -1;
  std::map<int, XPoly> c;

  bool is_zero() const { return c.empty(); }
  XPoly coeff(int e) const {
    auto it = c.find(e);
    return it == c.end() ? XPoly() : it->second;
  }
  // Lowest exponent with a nonzero coefficient.
  int order() const {
    if (c.empty()) throw std::invalid_argument("order of zero series");
    return c.begin()->first;
  }
  void set(int e, const XPoly& v) {
    if (v.is_zero())
      c.erase(e);
    else
      c[e] = v;
  }
};

inline LaurentSeries series_add(const LaurentSeries& a,
                                const LaurentSeries& b) {
  if (a.center != b.center) throw std::invalid_argument("mixed centers");
  LaurentSeries r;
  r.center = a.center;
  r.lo = std::min(a.lo, b.lo);
  r.hi = std::min(a.hi, b.hi);
  for (const auto& [e, v] : a.c)
    if (e <= r.hi) r.set(e, v);
  for (const auto& [e, v] : b.c)
    if (e <= r.hi) r.set(e, r.coeff(e) + v);
  return r;
}

inline LaurentSeries series_mul(const LaurentSeries& a,
                                const LaurentSeries& b) {
  if (a.center != b.center) throw std::invalid_argument("mixed centers");
  LaurentSeries r;
  r.center = a.center;
  r.lo = a.lo + b.lo;
  r.hi = std::min(a.lo + b.hi, b.lo + a.hi);
  for (const auto& [ea, va] : a.c)
    for (const auto& [eb, vb] : b.c) {
      int e = ea + eb;
      if (e <= r.hi) r.set(e, r.coeff(e) + va * vb);
    }
  return r;
}

// Expands a univariate (alpha only) rational function at alpha = center,
// keeping exponents of (alpha - center) up to `hi` inclusive.
inline LaurentSeries laurent_expand(const RatFn& f, const Rat& center,
                                    int hi) {
  if (f.nz() != 0) throw std::invalid_argument("laurent_expand needs nz == 0");
  LaurentSeries out;
  out.center = center;
  out.hi = hi;
  if (f.is_zero()) return out;

  // numerator coefficients in alpha
  int nd = f.num().degree_in(0);
  std::vector<XPoly> n(nd + 1);
  for (const auto& [m, c] : f.num().terms()) n[m[0]] = c;
  // shift to powers of eps via binomial expansion
  std::vector<XPoly> ns(nd + 1);
  for (int j = 0; j <= nd; ++j) {
    if (n[j].is_zero()) continue;
    Rat binom(1);
    for (int k = 0; k <= j; ++k) {
      // C(j,k) * center^(j-k)
      ns[k] += n[j] * (binom * rat_pow(center, j - k));
      binom *= Rat(j - k);
      binom /= Rat(k + 1);
    }
  }

  // denominator: pull out the eps-valuation, invert the unit part
  int pole = 0;
  std::vector<Rat> unit{Rat(1)};
  auto mul_unit = [&](const std::vector<Rat>& g) {
    std::vector<Rat> r(unit.size() + g.size() - 1, Rat(0));
    for (std::size_t i = 0; i < unit.size(); ++i)
      for (std::size_t j = 0; j < g.size(); ++j) r[i + j] += unit[i] * g[j];
    unit = std::move(r);
  };
  for (const auto& [fac, e] : f.den()) {
    // factor polynomial in eps
    std::vector<Rat> g;
    switch (fac.kind) {
      case FactorKind::Alpha:
        g = {center, Rat(1)};
        break;
      case FactorKind::AM1:
        g = {center - 1, Rat(1)};
        break;
      case FactorKind::AP1:
        g = {center + 1, Rat(1)};
        break;
      case FactorKind::A2P1:
        g = {center * center + 1, Rat(2) * center, Rat(1)};
        break;
      default:
        throw std::invalid_argument("non-alpha factor in laurent_expand");
    }
    int v = 0;
    while (!g.empty() && g.front() == 0) {
      g.erase(g.begin());
      ++v;
    }
    if (g.empty()) throw std::logic_error("zero factor");
    pole += v * e;
    for (int k = 0; k < e; ++k) mul_unit(g);
  }

  int len = hi + pole + 1;  // needed eps-degree of numerator * unit inverse
  if (len <= 0) {
    out.lo = -pole;
    return out;
  }
  std::vector<Rat> inv(len, Rat(0));
  inv[0] = Rat(1) / unit[0];
  for (int k = 1; k < len; ++k) {
    Rat acc(0);
    for (int j = 1; j <= k && j < static_cast<int>(unit.size()); ++j)
      acc += unit[j] * inv[k - j];
    inv[k] = -acc / unit[0];
  }
  out.lo = -pole;
  for (int k = 0; k < len; ++k) {
    XPoly v;
    for (int j = 0; j <= k && j <= nd; ++j)
      if (!ns[j].is_zero() && inv[k - j] != 0) v += ns[j] * inv[k - j];
    out.set(k - pole, v);
  }
  return out;
}

}  // namespace twtail

#endif
