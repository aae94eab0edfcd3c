#include <twtail/deviation.hpp>

#include <cmath>
#include <numbers>

namespace twtail {

RatFn integrate_correction(int k, CorrTable& table) {
  if (k < 2) throw std::invalid_argument("correction order starts at k = 2");
  RatFn wall = wall_restriction(table.get(1, k));
  PartialFractions pf = partial_fractions(wall);
  if (!pf.poly.empty())
    throw Divergent("correction integrand does not decay at infinity");
  return pf_antiderivative_vanishing_at_inf(pf);
}

std::pair<ClosedForm, ClosedForm> closed_forms_low_orders() {
  // coefficient of N: -beta[(alpha^2 - alpha^-2)/4 - ln alpha], beta = 2/X
  ClosedForm orderN;
  {
    MPoly num(0);
    Mono a4;
    a4.set(0, 4);
    num.add_term(a4, XPoly::term(rat(-1, 2), -1));
    num.add_term(Mono(), XPoly::term(rat(1, 2), -1));
    orderN.rationalPart = RatFn(std::move(num), {{Factor::alpha(), 2}});
    orderN.logTerms.emplace_back(XPoly::term(rat(2), -1),
                                 MPoly::variable(0, 0));
  }
  // N^0 term: (1 - 3 beta/2) ln(alpha^2 - 1) + (2 beta - 2) ln alpha
  ClosedForm orderOne;
  {
    orderOne.rationalPart = RatFn(0);
    XPoly c1 = XPoly(Rat(1)) + XPoly::term(Rat(-3), -1);
    MPoly arg1 = MPoly::variable(0, 0, 2) + MPoly::constant(0, Rat(-1));
    orderOne.logTerms.emplace_back(std::move(c1), std::move(arg1));
    XPoly c2 = XPoly::term(Rat(4), -1) + XPoly(Rat(-2));
    orderOne.logTerms.emplace_back(std::move(c2), MPoly::variable(0, 0));
  }
  return {std::move(orderN), std::move(orderOne)};
}

XPoly bernoulli_term(int m) {
  if (m < 1) throw std::invalid_argument("bernoulli_term needs m >= 1");
  Rat c = -bernoulli(m + 1) / Rat(static_cast<long>(m) * (m + 1));
  return XPoly::term(c, m);
}

DeviationExpansion assemble_deviation(int order, CorrTable& table) {
  if (order < 0) throw std::invalid_argument("negative expansion order");
  DeviationExpansion e;
  e.order = order;
  std::tie(e.orderN, e.orderOne) = closed_forms_low_orders();
  for (int m = 1; m <= order; ++m)
    e.corrections.emplace_back(bernoulli_term(m),
                               integrate_correction(m + 1, table));
  return e;
}

RatFn closed_form_derivative(const ClosedForm& cf) {
  RatFn out = cf.rationalPart.derivative(0);
  for (const auto& [coeff, arg] : cf.logTerms) {
    // d/dalpha [c ln g] = c g'/g; g must factor over the allowed set
    FactorMap fm;
    MPoly rem = arg;
    for (const Factor& f :
         {Factor::alpha(), Factor::am1(), Factor::ap1(), Factor::a2p1()}) {
      while (true) {
        auto q = rem.try_divide(f.poly(0));
        if (!q) break;
        rem = std::move(*q);
        fm[f] += 1;
      }
    }
    if (!(rem == MPoly::constant(0, Rat(1))))
      throw std::invalid_argument("log argument outside the factor set");
    out += RatFn(arg.derivative(0) * coeff, fm);
  }
  return out;
}

long double rat_ld(const Rat& r) {
  return static_cast<long double>(r.get_num().get_d()) /
         static_cast<long double>(r.get_den().get_d());
}

long double xpoly_eval_ld(const XPoly& p, long double x) {
  long double s = 0;
  for (const auto& [e, c] : p.items()) s += rat_ld(c) * powl(x, e);
  return s;
}

long double ratfn_eval_alpha_ld(const RatFn& f, long double alpha,
                                long double x) {
  if (f.nz() != 0)
    throw std::invalid_argument("numeric evaluation needs nz == 0");
  long double num = 0;
  for (const auto& [m, c] : f.num().terms())
    num += xpoly_eval_ld(c, x) * powl(alpha, m[0]);
  long double den = 1;
  for (const auto& [fac, e] : f.den()) {
    long double v;
    switch (fac.kind) {
      case FactorKind::Alpha:
        v = alpha;
        break;
      case FactorKind::AM1:
        v = alpha - 1;
        break;
      case FactorKind::AP1:
        v = alpha + 1;
        break;
      case FactorKind::A2P1:
        v = alpha * alpha + 1;
        break;
      default:
        throw std::invalid_argument("z factor in alpha-only function");
    }
    den *= powl(v, e);
  }
  return num / den;
}

long double closed_form_eval_ld(const ClosedForm& cf, long double alpha,
                                long double x) {
  long double s = cf.rationalPart.is_zero()
                      ? 0
                      : ratfn_eval_alpha_ld(cf.rationalPart, alpha, x);
  for (const auto& [coeff, arg] : cf.logTerms) {
    long double g = 0;
    for (const auto& [m, c] : arg.terms())
      g += xpoly_eval_ld(c, x) * powl(alpha, m[0]);
    s += xpoly_eval_ld(coeff, x) * logl(g);
  }
  return s;
}

long double gamma_eval(long double x) {
  if (!(x > 0)) throw std::invalid_argument("gamma_eval needs x > 0");
  return expl(lgammal(x));
}

DensityValue eval_density(long long N, long double beta, long double t,
                          long double a, int order,
                          const DeviationExpansion& exp) {
  if (N < 2) throw std::invalid_argument("N >= 2 required");
  if (!(beta > 0) || !(t > 0))
    throw std::invalid_argument("beta and t must be positive");
  if (!(a > 2 * sqrtl(t)))
    throw OutsideRegime("a must lie strictly right of the edge 2 sqrt(t)");
  if (order < 0 || order > static_cast<int>(exp.corrections.size()))
    throw std::invalid_argument("order exceeds the assembled expansion");
  const long double X = 2 / beta;
  const long double alpha = (a + sqrtl(a * a - 4 * t)) / (2 * sqrtl(t));
  const long double log_pref =
      (1 - beta / 2) * (logl(static_cast<long double>(N)) + logl(beta / 2)) +
      lgammal(beta / 2) - logl(2 * std::numbers::pi_v<long double>) -
      0.5L * logl(t);
  long double e = static_cast<long double>(N) *
                      closed_form_eval_ld(exp.orderN, alpha, X) +
                  closed_form_eval_ld(exp.orderOne, alpha, X);
  long double last = fabsl(closed_form_eval_ld(exp.orderOne, alpha, X));
  for (int m = 1; m <= order; ++m) {
    long double term =
        powl(static_cast<long double>(N), -m) *
        (xpoly_eval_ld(exp.corrections[m - 1].first, X) +
         beta * ratfn_eval_alpha_ld(exp.corrections[m - 1].second, alpha, X));
    e += term;
    last = fabsl(term);
  }
  return {expl(log_pref + e), last};
}

long double log_prefactor_exact(long long N, long double beta) {
  const long double x = static_cast<long double>(N) * beta / 2;
  return lgammal(beta / 2) -
         0.5L * logl(2 * std::numbers::pi_v<long double>) - lgammal(1 + x) +
         (x + (3 - beta) / 2) * logl(x) - x;
}

long double log_prefactor_stirling(long long N, long double beta, int order) {
  const long double X = 2 / beta;
  long double s = (1 - beta / 2) *
                      (logl(static_cast<long double>(N)) + logl(beta / 2)) +
                  lgammal(beta / 2) -
                  logl(2 * std::numbers::pi_v<long double>);
  for (int m = 1; m <= order; ++m)
    s += powl(static_cast<long double>(N), -m) *
         xpoly_eval_ld(bernoulli_term(m), X);
  return s;
}

}  // namespace twtail
