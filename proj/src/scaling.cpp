#include <twtail/scaling.hpp>
#include <twtail/laurent.hpp>

namespace twtail {

namespace {

using XSeries = std::vector<XPoly>;  // index = power of eps (or w)

XSeries xs_mul(const XSeries& a, const XSeries& b, int L) {
  XSeries r(L + 1);
  for (int i = 0; i <= L && i < static_cast<int>(a.size()); ++i) {
    if (a[i].is_zero()) continue;
    for (int j = 0; i + j <= L && j < static_cast<int>(b.size()); ++j)
      if (!b[j].is_zero()) r[i + j] += a[i] * b[j];
  }
  return r;
}

// log(1 + h) with h[0] = 0, through order L
XSeries log1p_series(const XSeries& h, int L) {
  XSeries out(L + 1), pw = h;
  for (int n = 1; n <= L; ++n) {
    Rat c = rat((n % 2) ? 1 : -1, n);
    for (int k = 0; k <= L && k < static_cast<int>(pw.size()); ++k)
      if (!pw[k].is_zero()) out[k] += pw[k] * c;
    if (n < L) pw = xs_mul(pw, h, L);
  }
  return out;
}

// alpha = 1 + eps substituted into a univariate polynomial in alpha
XSeries poly_shift1(const MPoly& p) {
  int nd = p.degree_in(0);
  XSeries out(nd + 1);
  for (const auto& [m, c] : p.terms()) {
    int j = m[0];
    Rat binom(1);
    for (int k = 0; k <= j; ++k) {
      out[k] += c * binom;
      binom *= Rat(j - k);
      binom /= Rat(k + 1);
    }
  }
  while (!out.empty() && out.back().is_zero()) out.pop_back();
  return out;
}

// Closed form at alpha = 1 + eps: a ln(eps) piece, a ln(2) piece, and a
// regular power series in eps.
struct CFExpansion {
  XPoly lnEps;
  XPoly ln2;
  XSeries reg;
};

CFExpansion expand_closed_form(const ClosedForm& cf, int L) {
  CFExpansion out;
  out.reg.assign(L + 1, XPoly());
  if (!cf.rationalPart.is_zero()) {
    LaurentSeries s = laurent_expand(cf.rationalPart, Rat(1), L);
    if (!s.is_zero() && s.order() < 0)
      throw std::invalid_argument("closed form has a pole at the edge");
    for (int e = 0; e <= L; ++e) out.reg[e] += s.coeff(e);
  }
  for (const auto& [coeff, arg] : cf.logTerms) {
    XSeries u = poly_shift1(arg);
    int v = 0;
    while (v < static_cast<int>(u.size()) && u[v].is_zero()) ++v;
    if (v == static_cast<int>(u.size()))
      throw std::invalid_argument("vanishing log argument");
    u.erase(u.begin(), u.begin() + v);
    out.lnEps += coeff * Rat(v);
    Rat c0;
    if (u[0] == XPoly(Rat(1))) {
      c0 = Rat(1);
    } else if (u[0] == XPoly(Rat(2))) {
      c0 = Rat(2);
      out.ln2 += coeff;
    } else {
      throw std::invalid_argument("unsupported log argument unit");
    }
    XSeries h(L + 1);
    for (int k = 1; k <= L && k < static_cast<int>(u.size()); ++k)
      h[k] = u[k] / c0;
    XSeries lg = log1p_series(h, L);
    for (int k = 0; k <= L; ++k)
      if (!lg[k].is_zero()) out.reg[k] += coeff * lg[k];
  }
  return out;
}

// eps(w) with eps^2 = w^2 (1 + eps), eps = w + O(w^2); index = power of w
std::vector<Rat> eps_series(int L) {
  std::vector<Rat> e(L + 1, Rat(0));
  for (int pass = 0; pass <= L; ++pass) {
    // g = sqrt(1 + e)
    std::vector<Rat> g(L + 1, Rat(0));
    g[0] = Rat(1);
    for (int k = 1; k <= L; ++k) {
      Rat acc = e[k];
      for (int i = 1; i < k; ++i) acc -= g[i] * g[k - i];
      g[k] = acc / Rat(2);
    }
    for (int k = L; k >= 1; --k) e[k] = g[k - 1];
    e[0] = Rat(0);
  }
  return e;
}

}  // namespace

ScalingReport double_scaling_check(const DeviationExpansion& de,
                                   const TailExpansion& te) {
  ScalingReport rep;
  const int L = 6;
  const XPoly one(Rat(1));
  const XPoly Xinv = XPoly::term(Rat(1), -1);

  // N^1 term: the closed form must vanish to third order at the edge and
  // open with -(4/3) X^{-1} eps^3, i.e. -(2 beta / 3) s^{3/2} after the
  // substitution eps = w sqrt(1 + eps), w = N^{-1/3} sqrt(s)
  CFExpansion fN = expand_closed_form(de.orderN, L);
  std::vector<Rat> eps = eps_series(L);
  XSeries d(L + 1);
  {
    std::vector<Rat> pw(L + 1, Rat(0));
    pw[0] = Rat(1);  // eps^0
    for (int j = 0; j <= L; ++j) {
      if (j < static_cast<int>(fN.reg.size()) && !fN.reg[j].is_zero())
        for (int k = 0; k <= L; ++k)
          if (pw[k] != 0) d[k] += fN.reg[j] * pw[k];
      // pw *= eps
      std::vector<Rat> next(L + 1, Rat(0));
      for (int a = 0; a <= L; ++a) {
        if (pw[a] == 0) continue;
        for (int b = 1; a + b <= L; ++b) next[a + b] += pw[a] * eps[b];
      }
      pw = std::move(next);
    }
  }
  rep.rate_ok = fN.lnEps.is_zero() && d[0].is_zero() && d[1].is_zero() &&
                d[2].is_zero() && d[3] == XPoly::term(rat(-4, 3), -1);

  // N^0 term and prefactor bookkeeping, collected over the symbol basis
  // {ln Gamma(beta/2), ln X, ln 2, ln pi, ln t, ln u, ln s}, u = N^{-1/3}
  CFExpansion f0 = expand_closed_form(de.orderOne, L);
  // ln u: +2 from the N^{-2/3} density rescaling, -3(1 - X^{-1}) from the
  // N^{1-beta/2} prefactor, plus the ln(eps) content of the N^0 term
  XPoly lnu = XPoly(Rat(2)) - (one - Xinv) * Rat(3) + f0.lnEps;
  rep.log_u_cancels = lnu.is_zero();
  // ln s carries half the ln(eps) coefficient
  XPoly lns = f0.lnEps / Rat(2);
  rep.log_s_ok = (lns == XPoly(rat(1, 2)) - Xinv * rat(3, 2));

  // constants: prefactor (1 - beta/2) ln(beta/2) + ln Gamma(beta/2)
  // - ln(2 pi) - (1/2) ln t, the (1/2) ln t from sqrt(t), and the ln 2
  // content of the N^0 term; then divide by beta for the complement
  XPoly cGamma = one;
  XPoly cLnX = -(one - Xinv);       // ln(beta/2) = -ln X
  XPoly cLn2 = f0.ln2 - one;        // -ln(2 pi) contributes -ln 2
  XPoly cLnPi = -one;
  XPoly cLnT = XPoly(rat(-1, 2)) + XPoly(rat(1, 2));
  // complement = density / beta: subtract ln beta = ln 2 - ln X
  XPoly compLnX = cLnX + one;
  XPoly compLn2 = cLn2 - one;
  // target: ln[Gamma(beta/2)] + X^{-1} ln X - (3 X^{-1} + 1) ln 2 - ln pi
  rep.prefactor_ok = (cGamma == one) && (compLnX == Xinv) &&
                     (compLn2 == -(Xinv * Rat(3) + one)) &&
                     (cLnPi == -one) && cLnT.is_zero();

  // N^{-m} corrections: beta G_{m+1}(alpha) must open with a pole of order
  // exactly 3m whose coefficient reproduces the tail exponent data; deeper
  // poles would leave a growing power of N
  int M = std::min(de.order, te.order);
  rep.exponent_ok = true;
  rep.residual_ok = rep.rate_ok;
  for (int m = 1; m <= M; ++m) {
    const RatFn& g = de.corrections[m - 1].second;
    LaurentSeries s = laurent_expand(g, Rat(1), -1);
    if (s.is_zero() || s.order() != -3 * m) {
      rep.residual_ok = false;
      rep.exponent_ok = false;
      continue;
    }
    // N^{-m} beta L eps^{-3m} -> 2 X^{-1} L s^{-3m/2}
    XPoly got = s.coeff(-3 * m).shifted(-1) * Rat(2);
    if (!(got == te.densityExponent[m - 1])) rep.exponent_ok = false;
  }
  return rep;
}

}  // namespace twtail
