#ifndef TWTAIL_RATFN_HPP
#define TWTAIL_RATFN_HPP

#include <twtail/flat.hpp>
#include <twtail/poly.hpp>

#include <map>
#include <stdexcept>
#include <string>
#include <tuple>

namespace twtail {

struct PoleHit : std::runtime_error {
  using std::runtime_error::runtime_error;
};
struct NoncancellingSingularity : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// The denominator factors the correlators can ever acquire. The pole at
// z = alpha^{-1} is stored as the polynomial alpha*z - 1.
enum class FactorKind : int {
  Z = 0,     // z_i
  ZM1 = 1,   // z_i - 1
  ZP1 = 2,   // z_i + 1
  AZM1 = 3,  // alpha*z_i - 1
  ZZM1 = 4,  // z_i*z_j - 1, i < j
  Alpha = 5,
  AM1 = 6,   // alpha - 1
  AP1 = 7,   // alpha + 1
  A2P1 = 8,  // alpha^2 + 1
  // the two kinds below arise only as intermediate denominators of the
  // partial fraction degree decomposition, never in correlators themselves
  ZMA = 9,  // z_i - alpha
  ZMZ = 10,  // z_i - z_j, i < j
};

struct Factor {
  FactorKind kind;
  int i = -1;  // z index (0-based), or -1 for alpha-only factors
  int j = -1;  // second z index for ZZM1

  auto key() const { return std::tuple(static_cast<int>(kind), i, j); }
  bool operator<(const Factor& o) const { return key() < o.key(); }
  bool operator==(const Factor& o) const { return key() == o.key(); }

  static Factor z(int i) { return {FactorKind::Z, i}; }
  static Factor zm1(int i) { return {FactorKind::ZM1, i}; }
  static Factor zp1(int i) { return {FactorKind::ZP1, i}; }
  static Factor azm1(int i) { return {FactorKind::AZM1, i}; }
  static Factor zzm1(int i, int j) {
    if (i == j) throw std::invalid_argument("zzm1 needs distinct indices");
    if (i > j) std::swap(i, j);
    return {FactorKind::ZZM1, i, j};
  }
  static Factor zma(int i) { return {FactorKind::ZMA, i}; }
  static Factor zmz(int i, int j) {
    if (i == j) throw std::invalid_argument("zmz needs distinct indices");
    if (i > j) std::swap(i, j);
    return {FactorKind::ZMZ, i, j};
  }
  static Factor alpha() { return {FactorKind::Alpha}; }
  static Factor am1() { return {FactorKind::AM1}; }
  static Factor ap1() { return {FactorKind::AP1}; }
  static Factor a2p1() { return {FactorKind::A2P1}; }

  bool involves_z(int idx) const {
    if (i == idx) return true;
    return (kind == FactorKind::ZZM1 || kind == FactorKind::ZMZ) && j == idx;
  }
  bool involves_alpha() const {
    switch (kind) {
      case FactorKind::ZMA:
      case FactorKind::AZM1:
      case FactorKind::Alpha:
      case FactorKind::AM1:
      case FactorKind::AP1:
      case FactorKind::A2P1:
        return true;
      default:
        return false;
    }
  }

  MPoly poly(int nz) const {
    const int a = nz;
    MPoly p(nz);
    switch (kind) {
      case FactorKind::Z:
        return MPoly::variable(nz, i);
      case FactorKind::ZM1:
        p = MPoly::variable(nz, i);
        p += MPoly::constant(nz, Rat(-1));
        return p;
      case FactorKind::ZP1:
        p = MPoly::variable(nz, i);
        p += MPoly::constant(nz, Rat(1));
        return p;
      case FactorKind::AZM1:
        p = MPoly::variable(nz, a) * MPoly::variable(nz, i);
        p += MPoly::constant(nz, Rat(-1));
        return p;
      case FactorKind::ZZM1:
        p = MPoly::variable(nz, i) * MPoly::variable(nz, j);
        p += MPoly::constant(nz, Rat(-1));
        return p;
      case FactorKind::Alpha:
        return MPoly::variable(nz, a);
      case FactorKind::AM1:
        p = MPoly::variable(nz, a);
        p += MPoly::constant(nz, Rat(-1));
        return p;
      case FactorKind::AP1:
        p = MPoly::variable(nz, a);
        p += MPoly::constant(nz, Rat(1));
        return p;
      case FactorKind::A2P1:
        p = MPoly::variable(nz, a, 2);
        p += MPoly::constant(nz, Rat(1));
        return p;
      case FactorKind::ZMA:
        p = MPoly::variable(nz, i);
        p -= MPoly::variable(nz, a);
        return p;
      case FactorKind::ZMZ:
        p = MPoly::variable(nz, i);
        p -= MPoly::variable(nz, j);
        return p;
    }
    throw std::logic_error("bad factor kind");
  }

  std::string label() const {
    auto zi = [](int k) { return "z" + std::to_string(k + 1); };
    switch (kind) {
      case FactorKind::Z:
        return zi(i);
      case FactorKind::ZM1:
        return zi(i) + "-1";
      case FactorKind::ZP1:
        return zi(i) + "+1";
      case FactorKind::AZM1:
        return "a*" + zi(i) + "-1";
      case FactorKind::ZZM1:
        return zi(i) + "*" + zi(j) + "-1";
      case FactorKind::Alpha:
        return "a";
      case FactorKind::AM1:
        return "a-1";
      case FactorKind::AP1:
        return "a+1";
      case FactorKind::A2P1:
        return "a^2+1";
      case FactorKind::ZMA:
        return zi(i) + "-a";
      case FactorKind::ZMZ:
        return zi(i) + "-" + zi(j);
    }
    return "?";
  }
};

using FactorMap = std::map<Factor, int>;

// Every allowed factor is a binomial with unit leading coefficient.
inline Binomial factor_binomial(const Factor& f, int nz) {
  const int a = nz;
  Mono hi;
  Rat clo(0);
  switch (f.kind) {
    case FactorKind::Z:
      hi.set(f.i, 1);
      break;
    case FactorKind::ZM1:
      hi.set(f.i, 1);
      clo = -1;
      break;
    case FactorKind::ZP1:
      hi.set(f.i, 1);
      clo = 1;
      break;
    case FactorKind::AZM1:
      hi.set(f.i, 1);
      hi.set(a, 1);
      clo = -1;
      break;
    case FactorKind::ZZM1:
      hi.set(f.i, 1);
      hi.set(f.j, 1);
      clo = -1;
      break;
    case FactorKind::Alpha:
      hi.set(a, 1);
      break;
    case FactorKind::AM1:
      hi.set(a, 1);
      clo = -1;
      break;
    case FactorKind::AP1:
      hi.set(a, 1);
      clo = 1;
      break;
    case FactorKind::A2P1:
      hi.set(a, 2);
      clo = 1;
      break;
    case FactorKind::ZMA: {
      // z_i sorts above alpha, so the leading coefficient stays +1
      hi.set(f.i, 1);
      Mono lo;
      lo.set(a, 1);
      return {hi, Rat(1), lo, Rat(-1)};
    }
    case FactorKind::ZMZ: {
      hi.set(f.i, 1);
      Mono lo;
      lo.set(f.j, 1);
      return {hi, Rat(1), lo, Rat(-1)};
    }
  }
  return {hi, Rat(1), Mono(), clo};
}

// Exact divisibility test of a polynomial by an allowed factor, by summing
// the polynomial over the factor's zero set. Much cheaper than attempting
// the division, which is the hot path of canonical reduction.
inline bool factor_divides(const MPoly& n, const Factor& f) {
  if (n.is_zero()) return true;
  const int a = n.nz();
  switch (f.kind) {
    case FactorKind::Z:
    case FactorKind::Alpha: {
      int v = f.kind == FactorKind::Z ? f.i : a;
      for (const auto& [m, c] : n.terms())
        if (m[v] == 0) return false;
      return true;
    }
    case FactorKind::ZM1:
    case FactorKind::ZP1:
    case FactorKind::AM1:
    case FactorKind::AP1: {
      int v;
      bool neg;
      if (f.kind == FactorKind::ZM1) v = f.i, neg = false;
      else if (f.kind == FactorKind::ZP1) v = f.i, neg = true;
      else if (f.kind == FactorKind::AM1) v = a, neg = false;
      else v = a, neg = true;
      std::map<std::uint64_t, XPoly> acc;
      for (const auto& [m, c] : n.terms()) {
        Mono mm = m;
        int e = mm[v];
        mm.set(v, 0);
        auto& slot = acc[mm.bits()];
        if (neg && (e & 1))
          slot -= c;
        else
          slot += c;
      }
      for (const auto& [k, c] : acc)
        if (!c.is_zero()) return false;
      return true;
    }
    case FactorKind::A2P1: {
      // alpha^2 = -1
      std::map<std::uint64_t, XPoly> acc;
      for (const auto& [m, c] : n.terms()) {
        Mono mm = m;
        int e = mm[a];
        mm.set(a, e & 1);
        auto& slot = acc[mm.bits()];
        if ((e / 2) & 1)
          slot -= c;
        else
          slot += c;
      }
      for (const auto& [k, c] : acc)
        if (!c.is_zero()) return false;
      return true;
    }
    case FactorKind::AZM1: {
      // z_i = alpha^{-1}
      std::map<std::pair<std::uint64_t, int>, XPoly> acc;
      for (const auto& [m, c] : n.terms()) {
        Mono mm = m;
        int off = mm[a] - mm[f.i];
        mm.set(a, 0);
        mm.set(f.i, 0);
        acc[{mm.bits(), off}] += c;
      }
      for (const auto& [k, c] : acc)
        if (!c.is_zero()) return false;
      return true;
    }
    case FactorKind::ZZM1: {
      // z_j = z_i^{-1}
      std::map<std::pair<std::uint64_t, int>, XPoly> acc;
      for (const auto& [m, c] : n.terms()) {
        Mono mm = m;
        int off = mm[f.i] - mm[f.j];
        mm.set(f.i, 0);
        mm.set(f.j, 0);
        acc[{mm.bits(), off}] += c;
      }
      for (const auto& [k, c] : acc)
        if (!c.is_zero()) return false;
      return true;
    }
    case FactorKind::ZMA:
    case FactorKind::ZMZ: {
      // z_i = alpha resp. z_i = z_j: fold the z_i exponent onto the other
      // variable and check the collapsed sum vanishes
      int other = f.kind == FactorKind::ZMA ? a : f.j;
      std::map<std::uint64_t, XPoly> acc;
      for (const auto& [m, c] : n.terms()) {
        Mono mm = m;
        int e = mm[f.i];
        mm.set(f.i, 0);
        mm.set(other, mm[other] + e);
        acc[mm.bits()] += c;
      }
      for (const auto& [k, c] : acc)
        if (!c.is_zero()) return false;
      return true;
    }
  }
  throw std::logic_error("bad factor");
}

// Exact rational function: sparse numerator over a multiset of allowed
// denominator factors, kept coprime by trial exact division.
class RatFn {
 public:
  explicit RatFn(int nz = 0) : num_(nz) {}
  RatFn(MPoly num, FactorMap den) : num_(std::move(num)), den_(std::move(den)) {
    reduce();
  }

  static RatFn from_poly(MPoly p) { return RatFn(std::move(p), {}); }
  static RatFn constant(int nz, const XPoly& c) {
    return from_poly(MPoly::constant(nz, c));
  }
  static RatFn constant(int nz, const Rat& c) {
    return from_poly(MPoly::constant(nz, c));
  }
  static RatFn variable(int nz, int var, int exp = 1) {
    return from_poly(MPoly::variable(nz, var, exp));
  }

  int nz() const { return num_.nz(); }
  bool is_zero() const { return num_.is_zero(); }
  const MPoly& num() const { return num_; }
  const FactorMap& den() const { return den_; }

  bool operator==(const RatFn& o) const {
    if (nz() == o.nz()) return num_ == o.num_ && den_ == o.den_;
    int n = std::max(nz(), o.nz());
    return embedded(n).num_ == o.embedded(n).num_ &&
           embedded(n).den_ == o.embedded(n).den_;
  }
  bool operator!=(const RatFn& o) const { return !(*this == o); }

  RatFn embedded(int new_nz) const {
    if (new_nz == nz()) return *this;
    RatFn r;
    r.num_ = num_.embed(new_nz);
    r.den_ = den_;
    return r;
  }

  // Batched sum with one reduction at the end; equivalent to folding
  // operator+ but avoids quadratic re-reduction of the accumulator.
  static RatFn sum(const std::vector<RatFn>& terms) {
    int n = 0;
    for (const auto& t : terms) n = std::max(n, t.nz());
    FactorMap den;
    for (const auto& t : terms)
      for (const auto& [f, e] : t.den_) {
        auto it = den.find(f);
        if (it == den.end() || it->second < e) den[f] = e;
      }
    FlatTerms acc;
    for (const auto& t : terms) {
      RatFn te = t.embedded(n);
      FlatTerms p = te.num_.take_terms();
      for (const auto& [fac, e] : den) {
        auto it = te.den_.find(fac);
        int have = it == te.den_.end() ? 0 : it->second;
        if (e > have) {
          Binomial b = factor_binomial(fac, n);
          for (int j = have; j < e; ++j) p = flat_mul_bin(std::move(p), b);
        }
      }
      acc.insert(acc.end(), std::make_move_iterator(p.begin()),
                 std::make_move_iterator(p.end()));
      if (acc.size() > (std::size_t{1} << 22)) flat_normalize(acc);
    }
    flat_normalize(acc);
    return RatFn(MPoly::from_sorted(n, std::move(acc)), std::move(den));
  }

  // Product without canonical reduction; only safe as an intermediate that
  // will be fed through sum() or a reducing constructor.
  static RatFn mul_raw(const RatFn& a0, const RatFn& b0) {
    int n = std::max(a0.nz(), b0.nz());
    RatFn a = a0.embedded(n), b = b0.embedded(n);
    RatFn r;
    r.num_ = a.num_ * b.num_;
    r.den_ = a.den_;
    for (const auto& [f, e] : b.den_) r.den_[f] += e;
    if (r.num_.is_zero()) r.den_.clear();
    return r;
  }

  friend RatFn operator+(const RatFn& a, const RatFn& b) {
    return sum({a, b});
  }
  friend RatFn operator-(const RatFn& a, const RatFn& b) { return a + (-b); }
  friend RatFn operator-(const RatFn& a) {
    RatFn r;
    r.num_ = -a.num_;
    r.den_ = a.den_;
    return r;
  }
  friend RatFn operator*(const RatFn& a0, const RatFn& b0) {
    int n = std::max(a0.nz(), b0.nz());
    RatFn a = a0.embedded(n), b = b0.embedded(n);
    FactorMap den = a.den_;
    for (const auto& [f, e] : b.den_) den[f] += e;
    MPoly num(n);
    if (auto bb = as_binomial(b.num_)) {
      num = MPoly::from_sorted(n, flat_mul_bin(a.num_.take_terms(), *bb));
    } else if (auto ba = as_binomial(a.num_)) {
      num = MPoly::from_sorted(n, flat_mul_bin(b.num_.take_terms(), *ba));
    } else {
      num = a.num_ * b.num_;
    }
    return RatFn(std::move(num), std::move(den));
  }
  RatFn& operator+=(const RatFn& o) { return *this = *this + o; }
  RatFn& operator-=(const RatFn& o) { return *this = *this - o; }
  RatFn& operator*=(const RatFn& o) { return *this = *this * o; }
  RatFn& operator*=(const XPoly& s) {
    if (s.is_zero()) {
      num_ = MPoly(nz());
      den_.clear();
      return *this;
    }
    num_ *= s;
    return *this;
  }
  RatFn& operator*=(const Rat& s) { return *this *= XPoly(s); }
  friend RatFn operator*(RatFn a, const XPoly& s) { return a *= s; }
  friend RatFn operator*(const XPoly& s, RatFn a) { return a *= s; }
  friend RatFn operator*(RatFn a, const Rat& s) { return a *= s; }

  // Multiplies by factor^exp (exp may be negative, meaning division).
  RatFn& mul_factor(const Factor& f, int exp) {
    if (exp == 0 || num_.is_zero()) return *this;
    auto it = den_.find(f);
    int cur = it == den_.end() ? 0 : it->second;
    int next = cur - exp;
    if (next < 0) {
      set_den(f, 0);
      num_ *= mpoly_pow(f.poly(nz()), -next);
    } else {
      set_den(f, next);
    }
    reduce_factor(f);
    return *this;
  }

  RatFn derivative(int var) const {
    // quotient rule over the factored denominator
    MPoly dnum = num_.derivative(var);
    std::vector<std::pair<Factor, int>> active;
    for (const auto& [f, e] : den_) {
      bool dep = var == num_.nz() ? f.involves_alpha() : f.involves_z(var);
      if (dep) active.emplace_back(f, e);
    }
    if (active.empty()) {
      RatFn r;
      r.num_ = std::move(dnum);
      r.den_ = den_;
      r.reduce();
      return r;
    }
    // common extra denominator: product of active factors to the first power
    FlatTerms acc;
    {
      FlatTerms s = flat_from(dnum);
      for (const auto& [f, e] : active)
        s = flat_mul_bin(std::move(s), factor_binomial(f, nz()));
      acc.insert(acc.end(), std::make_move_iterator(s.begin()),
                 std::make_move_iterator(s.end()));
    }
    for (const auto& [f, e] : active) {
      FlatTerms s = flat_from(num_);
      for (const auto& [g, ge] : active)
        if (!(g == f))
          s = flat_mul_bin(std::move(s), factor_binomial(g, nz()));
      // every factor's derivative in a single variable is a monomial
      MPoly dp = f.poly(nz()).derivative(var);
      const auto& [dm, dc] = *dp.terms().begin();
      Binomial mb{dm, dc.coeff(0) * Rat(-e), Mono(), Rat(0)};
      s = flat_mul_bin(std::move(s), mb);
      acc.insert(acc.end(), std::make_move_iterator(s.begin()),
                 std::make_move_iterator(s.end()));
    }
    flat_normalize(acc);
    FactorMap den = den_;
    for (const auto& [f, e] : active) den[f] = e + 1;
    return RatFn(MPoly::from_sorted(nz(), std::move(acc)), std::move(den));
  }

  // Identify z variable `from` with z variable `to`.
  RatFn substitute_z_to_z(int from, int to) const {
    if (from == to) return *this;
    RatFn r;
    r.num_ = num_.rename_var(from, to);
    for (const auto& [f, e] : den_) {
      for (const auto& [g, c] : map_factor_z_to_z(f, from, to))
        r.den_[g] += e * c;
    }
    r.reduce();
    return r;
  }

  // Substitute z_from = alpha (the wall restriction when applied to the
  // first variable).
  RatFn substitute_z_to_alpha(int from) const {
    RatFn r;
    r.num_ = num_.rename_var(from, num_.nz());
    for (const auto& [f, e] : den_) {
      if (!f.involves_z(from)) {
        r.den_[f] += e;
        continue;
      }
      switch (f.kind) {
        case FactorKind::Z:
          r.den_[Factor::alpha()] += e;
          break;
        case FactorKind::ZM1:
          r.den_[Factor::am1()] += e;
          break;
        case FactorKind::ZP1:
          r.den_[Factor::ap1()] += e;
          break;
        case FactorKind::AZM1:
          // alpha^2 - 1 = (alpha-1)(alpha+1)
          r.den_[Factor::am1()] += e;
          r.den_[Factor::ap1()] += e;
          break;
        case FactorKind::ZZM1: {
          int other = f.i == from ? f.j : f.i;
          r.den_[Factor::azm1(other)] += e;
          break;
        }
        default:
          throw std::logic_error("unexpected factor");
      }
    }
    r.reduce();
    return r;
  }

  // Substitute z_from = c for rational c. Only valid when the result stays
  // inside the allowed factor set (c = +-1 or factors free of cross terms).
  RatFn substitute_z_rat(int from, const Rat& c) const {
    RatFn r;
    r.num_ = num_.substitute_rat(from, c);
    Rat scale(1);
    for (const auto& [f, e] : den_) {
      if (!f.involves_z(from)) {
        r.den_[f] += e;
        continue;
      }
      switch (f.kind) {
        case FactorKind::Z:
          if (c == 0) throw PoleHit("z = 0");
          scale /= rat_pow(c, e);
          break;
        case FactorKind::ZM1:
          if (c == 1) throw PoleHit("z = 1");
          scale /= rat_pow(c - 1, e);
          break;
        case FactorKind::ZP1:
          if (c == -1) throw PoleHit("z = -1");
          scale /= rat_pow(c + 1, e);
          break;
        case FactorKind::AZM1:
          // c*alpha - 1: stays allowed only for c = +-1
          if (c == 1) {
            r.den_[Factor::am1()] += e;
          } else if (c == -1) {
            // -(alpha+1)
            r.den_[Factor::ap1()] += e;
            if (e % 2) scale = -scale;
          } else {
            throw std::invalid_argument("alpha*z-1 under numeric z binding");
          }
          break;
        case FactorKind::ZZM1: {
          if (c == 0) {
            scale /= rat_pow(Rat(-1), e);
            break;
          }
          int other = f.i == from ? f.j : f.i;
          if (c == 1) {
            r.den_[Factor::zm1(other)] += e;
          } else if (c == -1) {
            r.den_[Factor::zp1(other)] += e;
            scale /= rat_pow(Rat(-1), e);
          } else {
            throw std::invalid_argument("z_i*z_j-1 under numeric z binding");
          }
          break;
        }
        default:
          throw std::logic_error("unexpected factor");
      }
    }
    r.num_ *= scale;
    r.reduce();
    return r;
  }

  // Binds X to a rational value.
  RatFn substitute_x(const Rat& xval) const {
    RatFn r;
    r.num_ = num_.substitute_x(xval);
    r.den_ = den_;
    r.reduce();
    return r;
  }

  // Divides the numerator exactly by p; throws NoncancellingSingularity if
  // the division leaves a remainder.
  RatFn divided_numerator(const MPoly& p, const char* what) const {
    MPoly pe = p.embed(nz());
    RatFn r;
    if (auto b = as_binomial(pe)) {
      auto q = flat_divide_bin(flat_from(num_), *b);
      if (!q) throw NoncancellingSingularity(what);
      r.num_ = MPoly::from_sorted(nz(), std::move(*q));
    } else {
      auto q = num_.try_divide(pe);
      if (!q) throw NoncancellingSingularity(what);
      r.num_ = std::move(*q);
    }
    r.den_ = den_;
    return r;
  }

  // Exact numeric evaluation: all z's, alpha and X bound to rationals.
  Rat eval(const std::vector<Rat>& zvals, const Rat& aval,
           const Rat& xval) const {
    if (static_cast<int>(zvals.size()) != nz())
      throw std::invalid_argument("eval arity");
    Rat n(0);
    for (const auto& [m, c] : num_.terms()) {
      Rat t = c.eval(xval);
      for (int i = 0; i < nz(); ++i) t *= rat_pow(zvals[i], m[i]);
      t *= rat_pow(aval, m[nz()]);
      n += t;
    }
    Rat d(1);
    for (const auto& [f, e] : den_) {
      Rat v = eval_factor(f, zvals, aval);
      if (v == 0) throw PoleHit("eval at pole: " + f.label());
      d *= rat_pow(v, e);
    }
    return n / d;
  }

  // Total degree of the denominator (sum over factors of exp * deg).
  int den_degree() const {
    int d = 0;
    for (const auto& [f, e] : den_)
      d += e * (f.kind == FactorKind::ZZM1 || f.kind == FactorKind::AZM1 ||
                        f.kind == FactorKind::A2P1
                    ? 2
                    : 1);
    return d;
  }

  bool depends_on_z(int idx) const {
    if (num_.depends_on(idx)) return true;
    for (const auto& [f, e] : den_)
      if (f.involves_z(idx)) return true;
    return false;
  }

  // Drops trailing unused z slots (used after substitutions).
  RatFn compacted() const {
    int keep = nz();
    while (keep > 0 && !depends_on_z(keep - 1)) --keep;
    if (keep == nz()) return *this;
    RatFn r;
    std::vector<int> perm(nz());
    for (int i = 0; i < nz(); ++i) perm[i] = i < keep ? i : -1;
    r.num_ = num_.map_zvars(perm, keep);
    r.den_ = den_;
    return r;
  }

  // Relabel z variables; perm[i] = new index of old z_i (-1 only for unused).
  RatFn with_zvars(const std::vector<int>& perm, int new_nz) const {
    RatFn r;
    r.num_ = num_.map_zvars(perm, new_nz);
    for (const auto& [f, e] : den_) {
      Factor g = f;
      if (f.kind == FactorKind::ZZM1) {
        g = Factor::zzm1(perm.at(f.i), perm.at(f.j));
      } else if (f.i >= 0) {
        g.i = perm.at(f.i);
        if (g.i < 0) throw std::invalid_argument("relabel drops used var");
      }
      r.den_[g] += e;
    }
    return r;
  }

 private:
  static Rat eval_factor(const Factor& f, const std::vector<Rat>& z,
                         const Rat& a) {
    switch (f.kind) {
      case FactorKind::Z:
        return z[f.i];
      case FactorKind::ZM1:
        return z[f.i] - 1;
      case FactorKind::ZP1:
        return z[f.i] + 1;
      case FactorKind::AZM1:
        return a * z[f.i] - 1;
      case FactorKind::ZZM1:
        return z[f.i] * z[f.j] - 1;
      case FactorKind::Alpha:
        return a;
      case FactorKind::AM1:
        return a - 1;
      case FactorKind::AP1:
        return a + 1;
      case FactorKind::A2P1:
        return a * a + 1;
    }
    throw std::logic_error("bad factor");
  }

  static std::map<Factor, int> map_factor_z_to_z(const Factor& f, int from,
                                                 int to) {
    std::map<Factor, int> out;
    if (!f.involves_z(from)) {
      out[f] = 1;
      return out;
    }
    switch (f.kind) {
      case FactorKind::Z:
        out[Factor::z(to)] = 1;
        break;
      case FactorKind::ZM1:
        out[Factor::zm1(to)] = 1;
        break;
      case FactorKind::ZP1:
        out[Factor::zp1(to)] = 1;
        break;
      case FactorKind::AZM1:
        out[Factor::azm1(to)] = 1;
        break;
      case FactorKind::ZZM1: {
        int other = f.i == from ? f.j : f.i;
        if (other == to) {
          // z_to^2 - 1
          out[Factor::zm1(to)] = 1;
          out[Factor::zp1(to)] = 1;
        } else {
          out[Factor::zzm1(other, to)] = 1;
        }
        break;
      }
      default:
        throw std::logic_error("unexpected factor");
    }
    return out;
  }

  void set_den(const Factor& f, int e) {
    if (e == 0)
      den_.erase(f);
    else
      den_[f] = e;
  }

  void reduce_factor(const Factor& f) {
    auto it = den_.find(f);
    if (it == den_.end() || num_.is_zero()) return;
    Binomial b = factor_binomial(f, nz());
    FlatTerms v = num_.take_terms();
    while (it->second > 0) {
      auto q = flat_divide_bin(v, b);
      if (!q) break;
      v = std::move(*q);
      if (--it->second == 0) {
        den_.erase(it);
        break;
      }
    }
    num_ = MPoly::from_sorted(nz(), std::move(v));
  }

  void reduce() {
    if (num_.is_zero()) {
      den_.clear();
      return;
    }
    if (den_.empty()) return;
    FlatTerms v = num_.take_terms();
    for (auto it = den_.begin(); it != den_.end();) {
      Binomial b = factor_binomial(it->first, nz());
      while (it->second > 0) {
        auto q = flat_divide_bin(v, b);
        if (!q) break;
        v = std::move(*q);
        --it->second;
      }
      it = it->second == 0 ? den_.erase(it) : ++it;
    }
    num_ = MPoly::from_sorted(nz(), std::move(v));
  }

  MPoly num_;
  FactorMap den_;
};

}  // namespace twtail

#endif
