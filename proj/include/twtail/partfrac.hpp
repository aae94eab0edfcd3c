#ifndef TWTAIL_PARTFRAC_HPP
#define TWTAIL_PARTFRAC_HPP

#include <twtail/laurent.hpp>

namespace twtail {

struct LogTermPresent : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Partial fraction decomposition of a univariate (alpha only) rational
// function over the allowed factor set.
struct PartialFractions {
  std::vector<XPoly> poly;  // poly[k] multiplies alpha^k
  // linear factors: lin[f][j-1] multiplies 1/f^j
  std::map<Factor, std::vector<XPoly>> lin;
  // quad[j-1] = (A, B) for (A*alpha + B)/(alpha^2+1)^j
  std::vector<std::pair<XPoly, XPoly>> quad;
};

inline Rat factor_root(const Factor& f) {
  switch (f.kind) {
    case FactorKind::Alpha:
      return Rat(0);
    case FactorKind::AM1:
      return Rat(1);
    case FactorKind::AP1:
      return Rat(-1);
    default:
      throw std::invalid_argument("factor has no rational root");
  }
}

inline RatFn pf_reassemble(const PartialFractions& pf) {
  RatFn out(0);
  for (std::size_t k = 0; k < pf.poly.size(); ++k)
    out += RatFn::from_poly(MPoly::variable(0, 0, k) * pf.poly[k]);
  for (const auto& [f, cs] : pf.lin)
    for (std::size_t j = 0; j < cs.size(); ++j)
      out += RatFn(MPoly::constant(0, cs[j]),
                   {{f, static_cast<int>(j) + 1}});
  for (std::size_t j = 0; j < pf.quad.size(); ++j) {
    MPoly n = MPoly::variable(0, 0) * pf.quad[j].first +
              MPoly::constant(0, pf.quad[j].second);
    out += RatFn(std::move(n), {{Factor::a2p1(), static_cast<int>(j) + 1}});
  }
  return out;
}

inline PartialFractions partial_fractions(const RatFn& f) {
  if (f.nz() != 0) throw std::invalid_argument("partial_fractions needs nz == 0");
  PartialFractions pf;
  RatFn rem = f;
  for (const auto& [fac, e] : f.den()) {
    if (fac.kind == FactorKind::A2P1) continue;
    Rat r = factor_root(fac);
    LaurentSeries s = laurent_expand(f, r, -1);
    std::vector<XPoly> cs(e);
    RatFn principal(0);
    for (int j = 1; j <= e; ++j) {
      cs[j - 1] = s.coeff(-j);
      if (!cs[j - 1].is_zero())
        principal += RatFn(MPoly::constant(0, cs[j - 1]), {{fac, j}});
    }
    pf.lin[fac] = std::move(cs);
    rem -= principal;
  }
  // only (alpha^2+1)^e may remain in the denominator
  int equad = 0;
  for (const auto& [fac, e] : rem.den()) {
    if (fac.kind != FactorKind::A2P1)
      throw std::logic_error("linear principal parts did not cancel");
    equad = e;
  }
  // u-adic digits of the numerator, u = alpha^2 + 1
  int nd = rem.num().degree_in(0);
  std::vector<XPoly> n(nd + 1);
  for (const auto& [m, c] : rem.num().terms()) n[m[0]] = c;
  std::vector<std::pair<XPoly, XPoly>> digits;  // (A, B) pairs, low first
  while (static_cast<int>(n.size()) > 2) {
    // divide by alpha^2 + 1
    std::vector<XPoly> q(n.size() - 2);
    for (int k = static_cast<int>(n.size()) - 1; k >= 2; --k) {
      q[k - 2] = n[k];
      n[k - 2] -= n[k];
      n[k] = XPoly();
    }
    digits.emplace_back(n.size() > 1 ? n[1] : XPoly(), n[0]);
    n = std::move(q);
  }
  digits.emplace_back(n.size() > 1 ? n[1] : XPoly(), n.empty() ? XPoly() : n[0]);
  // digits[j] multiplies u^(j - equad)
  pf.quad.assign(equad, {XPoly(), XPoly()});
  std::vector<std::pair<XPoly, XPoly>> poly_digits;
  for (std::size_t j = 0; j < digits.size(); ++j) {
    int p = static_cast<int>(j) - equad;
    if (p < 0) {
      pf.quad[-p - 1] = digits[j];
    } else {
      poly_digits.push_back(digits[j]);
    }
  }
  while (!pf.quad.empty() && pf.quad.back().first.is_zero() &&
         pf.quad.back().second.is_zero())
    pf.quad.pop_back();
  // expand the u-polynomial part back into powers of alpha
  std::vector<XPoly> poly;
  std::vector<Rat> upow{Rat(1)};  // coefficients of u^k in alpha
  for (const auto& [A, B] : poly_digits) {
    std::size_t need = upow.size() + 1;
    if (poly.size() < need + 1) poly.resize(need + 1);
    for (std::size_t i = 0; i < upow.size(); ++i) {
      if (upow[i] == 0) continue;
      poly[i] += B * upow[i];
      poly[i + 1] += A * upow[i];
    }
    // upow *= (alpha^2 + 1)
    std::vector<Rat> next(upow.size() + 2, Rat(0));
    for (std::size_t i = 0; i < upow.size(); ++i) {
      next[i] += upow[i];
      next[i + 2] += upow[i];
    }
    upow = std::move(next);
  }
  while (!poly.empty() && poly.back().is_zero()) poly.pop_back();
  pf.poly = std::move(poly);
  return pf;
}

// Antiderivative with value 0 at alpha = +infinity. Requires every term to
// decay: no polynomial part, no simple poles (they would integrate to logs
// or arctans).
inline RatFn pf_antiderivative_vanishing_at_inf(const PartialFractions& pf) {
  if (!pf.poly.empty())
    throw LogTermPresent("polynomial part does not vanish");
  RatFn out(0);
  for (const auto& [f, cs] : pf.lin) {
    for (std::size_t j0 = 0; j0 < cs.size(); ++j0) {
      int j = static_cast<int>(j0) + 1;
      if (cs[j0].is_zero()) continue;
      if (j == 1)
        throw LogTermPresent("simple pole at " + f.label());
      out += RatFn(MPoly::constant(0, cs[j0] * Rat(-1) / Rat(j - 1)),
                   {{f, j - 1}});
    }
  }
  // (A alpha + B)/u^j, u = alpha^2+1, by the standard reduction; the B piece
  // pushes a remainder down one pole order, which may cancel there
  auto quad = pf.quad;
  for (int j = static_cast<int>(quad.size()); j >= 1; --j) {
    XPoly A = quad[j - 1].first;
    XPoly B = quad[j - 1].second;
    if (j == 1) {
      // int 1/u is arctan, int alpha/u is (1/2) log u
      if (!B.is_zero() || !A.is_zero())
        throw LogTermPresent("non-rational antiderivative at a^2+1");
      continue;
    }
    if (!A.is_zero())
      out += RatFn(MPoly::constant(0, A * Rat(-1) / Rat(2 * (j - 1))),
                   {{Factor::a2p1(), j - 1}});
    if (!B.is_zero()) {
      // int 1/u^j = alpha/(2(j-1)u^(j-1)) + (2j-3)/(2(j-1)) int 1/u^(j-1)
      out += RatFn(MPoly::variable(0, 0) * (B / Rat(2 * (j - 1))),
                   {{Factor::a2p1(), j - 1}});
      quad[j - 2].second += B * Rat(2 * j - 3) / Rat(2 * (j - 1));
    }
  }
  return out;
}

}  // namespace twtail

#endif
