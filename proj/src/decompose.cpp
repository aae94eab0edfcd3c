#include <twtail/decompose.hpp>
#include <twtail/laurent.hpp>

#include <optional>

namespace twtail {

namespace {

// variable owning a factor: the z index it is expanded in, or -1 for
// alpha-only factors
int owner(const Factor& f) {
  switch (f.kind) {
    case FactorKind::Z:
    case FactorKind::ZM1:
    case FactorKind::ZP1:
    case FactorKind::AZM1:
    case FactorKind::ZMA:
      return f.i;
    case FactorKind::ZZM1:
    case FactorKind::ZMZ:
      return f.i;  // canonical i < j
    default:
      return -1;
  }
}

bool tracked(const Factor& f) {
  switch (f.kind) {
    case FactorKind::ZM1:
    case FactorKind::AZM1:
    case FactorKind::ZZM1:
    case FactorKind::AM1:
      return true;
    default:
      return false;
  }
}

// Bezout data for two factors sharing their owner variable:
// u*B - v*A = cScale * prod(cFacs)
struct SplitRule {
  MPoly u, v;
  Rat cScale;
  std::vector<Factor> cFacs;
};

std::optional<SplitRule> split_rule(const Factor& A, const Factor& B,
                                    int nz) {
  const int a = nz;
  MPoly one = MPoly::constant(nz, Rat(1));
  MPoly al = MPoly::variable(nz, a);
  auto zv = [nz](int j) { return MPoly::variable(nz, j); };
  switch (A.kind) {
    case FactorKind::Z:
      switch (B.kind) {
        case FactorKind::ZM1:
          return SplitRule{one, one, Rat(-1), {}};
        case FactorKind::ZP1:
          return SplitRule{one, one, Rat(1), {}};
        case FactorKind::AZM1:
          return SplitRule{one, al, Rat(-1), {}};
        case FactorKind::ZZM1:
          return SplitRule{one, zv(B.j), Rat(-1), {}};
        case FactorKind::ZMA:
          return SplitRule{one, one, Rat(-1), {Factor::alpha()}};
        case FactorKind::ZMZ:
          return SplitRule{one, one, Rat(-1), {Factor::z(B.j)}};
        default:
          return {};
      }
    case FactorKind::ZM1:
      switch (B.kind) {
        case FactorKind::ZP1:
          return SplitRule{one, one, Rat(2), {}};
        case FactorKind::AZM1:
          return SplitRule{one, al, Rat(1), {Factor::am1()}};
        case FactorKind::ZZM1:
          return SplitRule{one, zv(B.j), Rat(1), {Factor::zm1(B.j)}};
        case FactorKind::ZMA:
          return SplitRule{one, one, Rat(-1), {Factor::am1()}};
        case FactorKind::ZMZ:
          return SplitRule{one, one, Rat(-1), {Factor::zm1(B.j)}};
        default:
          return {};
      }
    case FactorKind::ZP1:
      switch (B.kind) {
        case FactorKind::AZM1:
          return SplitRule{one, al, Rat(-1), {Factor::ap1()}};
        case FactorKind::ZZM1:
          return SplitRule{one, zv(B.j), Rat(-1), {Factor::zp1(B.j)}};
        case FactorKind::ZMA:
          return SplitRule{one, one, Rat(-1), {Factor::ap1()}};
        case FactorKind::ZMZ:
          return SplitRule{one, one, Rat(-1), {Factor::zp1(B.j)}};
        default:
          return {};
      }
    case FactorKind::AZM1:
      switch (B.kind) {
        case FactorKind::ZZM1:
          return SplitRule{al, zv(B.j), Rat(1), {Factor::zma(B.j)}};
        case FactorKind::ZMA:
          return SplitRule{al, one, Rat(-1),
                           {Factor::am1(), Factor::ap1()}};
        case FactorKind::ZMZ:
          return SplitRule{al, one, Rat(-1), {Factor::azm1(B.j)}};
        default:
          return {};
      }
    case FactorKind::ZZM1:
      switch (B.kind) {
        case FactorKind::ZZM1:
          // map order guarantees A.j < B.j
          return SplitRule{zv(A.j), zv(B.j), Rat(-1),
                           {Factor::zmz(A.j, B.j)}};
        case FactorKind::ZMA:
          return SplitRule{zv(A.j), one, Rat(-1), {Factor::azm1(A.j)}};
        case FactorKind::ZMZ:
          if (A.j == B.j)
            return SplitRule{zv(A.j), one, Rat(-1),
                             {Factor::zm1(A.j), Factor::zp1(A.j)}};
          return SplitRule{zv(A.j), one, Rat(-1), {Factor::zzm1(A.j, B.j)}};
        default:
          return {};
      }
    case FactorKind::ZMA:
      if (B.kind == FactorKind::ZMZ)
        return SplitRule{one, one, Rat(-1), {Factor::zma(B.j)}};
      return {};
    case FactorKind::ZMZ:
      if (B.kind == FactorKind::ZMZ)
        return SplitRule{one, one, Rat(1), {Factor::zmz(A.j, B.j)}};
      return {};
    default:
      return {};
  }
}

// one split of f along the pair (A, B); pushes the two children
void apply_split(const RatFn& f, const Factor& A, const Factor& B,
                 const SplitRule& r, std::vector<RatFn>& out) {
  const int nz = f.nz();
  // the rule is an identity in the polynomial ring; check it
  MPoly c = MPoly::constant(nz, r.cScale);
  for (const Factor& g : r.cFacs) c *= g.poly(nz);
  if (r.u * B.poly(nz) - r.v * A.poly(nz) != c)
    throw std::logic_error("bad split rule");
  Rat inv = Rat(1) / r.cScale;
  RatFn t1 = f * RatFn::from_poly(r.u);
  t1.mul_factor(B, 1);
  t1 *= inv;
  for (const Factor& g : r.cFacs) t1.mul_factor(g, -1);
  RatFn t2 = f * RatFn::from_poly(r.v);
  t2.mul_factor(A, 1);
  t2 *= inv;
  for (const Factor& g : r.cFacs) t2.mul_factor(g, -1);
  if (!t1.is_zero()) out.push_back(std::move(t1));
  t2 = -t2;
  if (!t2.is_zero()) out.push_back(std::move(t2));
}

// find a splittable same-owner pair in the denominator of f at variable v
bool split_at(const RatFn& f, int v, std::vector<RatFn>& out) {
  std::vector<Factor> mine;
  for (const auto& [fac, e] : f.den())
    if (owner(fac) == v) mine.push_back(fac);
  for (std::size_t i = 0; i < mine.size(); ++i)
    for (std::size_t j = i + 1; j < mine.size(); ++j) {
      auto r = split_rule(mine[i], mine[j], f.nz());
      if (r) {
        apply_split(f, mine[i], mine[j], *r, out);
        return true;
      }
    }
  return false;
}

// merge key: only the z-owned part of the denominator, so that the alpha
// content of each coefficient recombines into a single rational function
FactorMap z_part(const RatFn& t) {
  FactorMap key;
  for (const auto& [f, e] : t.den())
    if (owner(f) >= 0) key[f] = e;
  return key;
}

// Reduces a term to a proper fraction in z_v: with F = c z_v - r in the
// denominator and the numerator N of degree D in z_v, write
// c^D N = R + Q F with R free of z_v, splitting off the quotient with one
// power of F fewer. c is a unit factor (1, alpha or z_j), so c^D moves into
// the denominator.
bool divide_at(const RatFn& t, int v, std::vector<RatFn>& out) {
  const int nz = t.nz();
  if (t.num().degree_in(v) == 0) return false;
  const Factor* chosen = nullptr;
  for (const auto& [f, e] : t.den())
    if (owner(f) == v) {
      chosen = &f;
      break;
    }
  if (!chosen) return false;
  const Factor F = *chosen;
  int cvar = -1;  // variable of the leading unit c, or -1 for c = 1
  int rvar = -1;  // variable of the root monomial, or -1 for a constant
  Rat r;
  switch (F.kind) {
    case FactorKind::Z:
      r = Rat(0);
      break;
    case FactorKind::ZM1:
      r = Rat(1);
      break;
    case FactorKind::ZP1:
      r = Rat(-1);
      break;
    case FactorKind::AZM1:
      cvar = nz;
      r = Rat(1);
      break;
    case FactorKind::ZZM1:
      cvar = F.j;
      r = Rat(1);
      break;
    case FactorKind::ZMA:
      rvar = nz;
      r = Rat(1);
      break;
    case FactorKind::ZMZ:
      rvar = F.j;
      r = Rat(1);
      break;
    default:
      return false;
  }
  std::vector<MPoly> nd = t.num().coeffs_in(v);
  const int D = static_cast<int>(nd.size()) - 1;
  MPoly R(nz);
  Rat rp(1);
  for (int d = 0; d <= D; ++d) {
    if (!nd[d].is_zero() && rp != 0) {
      MPoly part = nd[d] * MPoly::constant(nz, rp);
      if (rvar >= 0 && d > 0) part *= MPoly::variable(nz, rvar, d);
      if (cvar >= 0 && D - d > 0) part *= MPoly::variable(nz, cvar, D - d);
      R += part;
    }
    rp *= r;
  }
  MPoly scaled = t.num();
  if (cvar >= 0) scaled *= MPoly::variable(nz, cvar, D);
  MPoly diff = scaled - R;
  FactorMap dr = t.den();
  if (cvar >= 0) {
    Factor cf = cvar == nz ? Factor::alpha() : Factor::z(cvar);
    dr[cf] += D;
  }
  if (!R.is_zero()) out.push_back(RatFn(std::move(R), FactorMap(dr)));
  if (!diff.is_zero()) {
    auto q = flat_divide_bin(flat_from(diff), factor_binomial(F, nz));
    if (!q) throw std::logic_error("inexact synthetic division");
    FactorMap dq = dr;
    if (--dq[F] == 0) dq.erase(F);
    RatFn qt(MPoly::from_sorted(nz, std::move(*q)), std::move(dq));
    if (!qt.is_zero()) out.push_back(std::move(qt));
  }
  return true;
}

std::vector<RatFn> merge_by_denominator(std::vector<RatFn> terms) {
  std::map<FactorMap, std::vector<RatFn>> groups;
  for (auto& t : terms) groups[z_part(t)].push_back(std::move(t));
  std::vector<RatFn> out;
  for (auto& [den, grp] : groups) {
    RatFn s = grp.size() == 1 ? std::move(grp.front()) : RatFn::sum(grp);
    if (!s.is_zero()) out.push_back(std::move(s));
  }
  return out;
}

int term_degree(const RatFn& t) {
  int d = 0;
  for (const auto& [f, e] : t.den())
    if (tracked(f)) d += e;
  return d;
}

int term_x_degree(const RatFn& t) {
  int b = 0;
  bool first = true;
  for (const auto& [m, c] : t.num().terms()) {
    int e = c.max_exp();
    if (first || e > b) b = e;
    first = false;
  }
  return b;
}

}  // namespace

std::vector<RatFn> pf_split(const RatFn& f) {
  std::vector<RatFn> terms{f};
  for (int v = 0; v < f.nz(); ++v) {
    // merge after every round: splitting without recombining doubles the
    // term count per step
    bool changed = true;
    while (changed) {
      changed = false;
      std::vector<RatFn> next;
      for (const RatFn& t : terms) {
        if (divide_at(t, v, next) || split_at(t, v, next))
          changed = true;
        else
          next.push_back(t);
      }
      terms = merge_by_denominator(std::move(next));
    }
  }
  return terms;
}

RatFn diagonal_restriction(const RatFn& f) {
  RatFn r = f;
  for (int i = f.nz() - 1; i >= 0; --i) r = r.substitute_z_to_alpha(i);
  return r.compacted();
}

DegreeReport analyze_degree(int n, int k, const RatFn& omega) {
  DegreeReport rep;
  rep.n = n;
  rep.k = k;
  std::vector<RatFn> terms = pf_split(omega);
  rep.termCount = static_cast<int>(terms.size());
  for (const auto& t : terms) {
    // leftover same-owner pairs (no in-algebra Bezout cofactor) make the
    // joint count an upper bound only
    std::map<int, int> kinds;
    for (const auto& [f, e] : t.den())
      if (owner(f) >= 0) ++kinds[owner(f)];
    for (const auto& [v, cnt] : kinds)
      if (cnt > 1) rep.splitComplete = false;
    int d = term_degree(t);
    if (d > rep.degree) {
      rep.degree = d;
      rep.xDegree = term_x_degree(t);
    } else if (d == rep.degree) {
      rep.xDegree = std::max(rep.xDegree, term_x_degree(t));
    }
  }
  LaurentSeries s = laurent_expand(diagonal_restriction(omega), Rat(1), 0);
  if (!s.is_zero() && s.order() < 0) {
    rep.diagPoleOrder = -s.order();
    rep.diagXDegree = s.coeff(s.order()).max_exp();
  }
  return rep;
}

}  // namespace twtail
