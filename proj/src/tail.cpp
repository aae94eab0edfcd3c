#include <twtail/tail.hpp>
#include <twtail/deviation.hpp>

#include <cmath>
#include <numbers>

namespace twtail {

BreveEntry breve_extract(int m, CorrTable& table) {
  if (m < 1) throw std::invalid_argument("breve_extract needs m >= 1");
  // z = alpha first, then alpha -> 1: the wall pole contributes to the
  // leading coefficient and the other order of operations would lose it
  RatFn wall = wall_restriction(table.get(1, m + 1));
  LaurentSeries s = laurent_expand(wall, Rat(1), -1);
  int want = -(3 * m + 1);
  if (s.is_zero() || s.order() != want)
    throw WrongPoleOrder("pole order at the edge is " +
                         std::to_string(s.is_zero() ? 0 : -s.order()) +
                         ", expected " + std::to_string(-want));
  // leading = 2^v * B with B of integer odd content; leading = -poly/2^{p+1}
  XPoly leading = s.coeff(want);
  long v;
  std::vector<std::pair<int, Int>> b;
  try {
    std::tie(v, b) = leading.dyadic_split();
  } catch (const std::domain_error& e) {
    throw NonDyadicDenominator(e.what());
  }
  BreveEntry out;
  out.m = m;
  out.p = static_cast<int>(-v - 1);
  if (out.p < 1) throw NonDyadicDenominator("dyadic weight is not positive");
  for (const auto& [e, c] : b) out.poly += XPoly::term(-Rat(c), e);
  return out;
}

namespace {

// Calls fn(mult) for every partition of m, mult[i-1] = multiplicity of part i.
template <typename F>
void for_partitions(int m, int maxPart, std::vector<int>& mult, F&& fn) {
  if (m == 0) {
    fn(mult);
    return;
  }
  for (int i = std::min(m, maxPart); i >= 1; --i) {
    ++mult[i - 1];
    for_partitions(m - i, i, mult, fn);
    --mult[i - 1];
  }
}

Rat factorial(int n) {
  Rat r(1);
  for (int i = 2; i <= n; ++i) r *= Rat(i);
  return r;
}

}  // namespace

std::vector<XPoly> breve_to_R(const std::vector<BreveEntry>& entries) {
  std::vector<XPoly> R;
  for (std::size_t i = 0; i < entries.size(); ++i) {
    const BreveEntry& e = entries[i];
    int m = static_cast<int>(i) + 1;
    if (e.m != m)
      throw std::invalid_argument("entries must cover m = 1..M in order");
    XPoly rm = e.poly / (rat_pow(Rat(2), e.p) * Rat(3 * m));
    // partition sum: for each {m_i} with sum i*m_i = m, add
    //   X * (tot-1)!/prod(m_i!) * (-3/4)^tot * prod_{i>=2} [(i-1) R_{i-1}]^{m_i}
    // (the i = 1 factor is 1 by convention)
    std::vector<int> mult(m, 0);
    for_partitions(m, m, mult, [&](const std::vector<int>& mu) {
      int tot = 0;
      Rat denom(1);
      for (int part = 1; part <= m; ++part) {
        tot += mu[part - 1];
        denom *= factorial(mu[part - 1]);
      }
      Rat c = factorial(tot - 1) / denom * rat_pow(rat(-3, 4), tot);
      XPoly term = XPoly::term(c, 1);
      for (int part = 2; part <= m; ++part)
        for (int j = 0; j < mu[part - 1]; ++j)
          term *= R[part - 2] * Rat(part - 1);
      rm += term;
    });
    R.push_back(std::move(rm));
  }
  return R;
}

std::vector<XPoly> formal_exp(const std::vector<XPoly>& c) {
  std::vector<XPoly> e(c.size());
  for (std::size_t m = 1; m <= c.size(); ++m) {
    XPoly acc = c[m - 1] * Rat(static_cast<long>(m));  // j = m term, e_0 = 1
    for (std::size_t j = 1; j < m; ++j)
      acc += c[j - 1] * Rat(static_cast<long>(j)) * e[m - j - 1];
    e[m - 1] = acc / Rat(static_cast<long>(m));
  }
  return e;
}

std::vector<XPoly> formal_log(const std::vector<XPoly>& e) {
  std::vector<XPoly> c(e.size());
  for (std::size_t m = 1; m <= e.size(); ++m) {
    XPoly acc = e[m - 1] * Rat(static_cast<long>(m));
    for (std::size_t j = 1; j < m; ++j)
      acc -= c[j - 1] * Rat(static_cast<long>(j)) * e[m - j - 1];
    c[m - 1] = acc / Rat(static_cast<long>(m));
  }
  return c;
}

TailExpansion assemble_tail(int M, const std::vector<BreveEntry>& entries) {
  if (M < 0 || M > static_cast<int>(entries.size()))
    throw std::invalid_argument("order exceeds the available entries");
  TailExpansion te;
  te.order = M;
  te.entries.assign(entries.begin(), entries.begin() + M);
  te.R = breve_to_R(te.entries);
  for (int m = 1; m <= M; ++m) {
    // beta/2 = X^{-1}
    te.complementExponent.push_back(te.R[m - 1].shifted(-1));
    te.densityExponent.push_back(
        (te.entries[m - 1].poly /
         (rat_pow(Rat(2), te.entries[m - 1].p) * Rat(3 * m)))
            .shifted(-1));
  }
  te.complementExpanded = formal_exp(te.complementExponent);
  te.densityExpanded = formal_exp(te.densityExponent);
  return te;
}

TailValue eval_tail(long double s, long double beta, int order,
                    const TailExpansion& te, TailKind kind) {
  if (!(s > 0)) throw NonPositiveS("s must be positive");
  if (!(beta > 0)) throw std::invalid_argument("beta must be positive");
  if (order < 0 || order > te.order)
    throw std::invalid_argument("order exceeds the assembled expansion");
  const long double X = 2 / beta;
  const long double halfb = beta / 2;
  long double log_pref, power;
  const std::vector<XPoly>* coeffs;
  if (kind == TailKind::complement) {
    log_pref = lgammal(halfb) - halfb * logl(4 * beta) -
               logl(2 * std::numbers::pi_v<long double>);
    power = -3 * beta / 4;
    coeffs = &te.complementExpanded;
  } else {
    log_pref = lgammal(1 + halfb) - halfb * logl(4 * beta) -
               logl(std::numbers::pi_v<long double>);
    power = 0.5L - 3 * beta / 4;
    coeffs = &te.densityExpanded;
  }
  long double series = 1, last = 1;
  for (int m = 1; m <= order; ++m) {
    long double term =
        xpoly_eval_ld((*coeffs)[m - 1], X) * powl(s, -1.5L * m);
    series += term;
    last = fabsl(term);
  }
  long double v = expl(log_pref + power * logl(s) -
                       2 * beta / 3 * powl(s, 1.5L)) *
                  series;
  return {v, last};
}

}  // namespace twtail
