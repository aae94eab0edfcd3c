#ifndef TWTAIL_POLY_HPP
#define TWTAIL_POLY_HPP

#include <twtail/xpoly.hpp>

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

namespace twtail {

// Exponent vector packed into one word: 8 lanes of 8 bits, slot i in byte
// 7-i, so that integer comparison is lex order with z_1 > z_2 > ... > alpha.
// Slots 0..nz-1 are z_1..z_nz, slot nz is alpha.
class Mono {
 public:
  Mono() = default;

  int operator[](int i) const {
    return static_cast<int>((b_ >> shift(i)) & 0xff);
  }
  void set(int i, int e) {
    if (e < 0 || e > 255) throw std::overflow_error("monomial exponent");
    b_ = (b_ & ~(0xffull << shift(i))) | (static_cast<std::uint64_t>(e) << shift(i));
  }
  void bump(int i, int d) { set(i, (*this)[i] + d); }

  int total() const {
    int t = 0;
    for (int i = 0; i < 8; ++i) t += static_cast<int>((b_ >> (8 * i)) & 0xff);
    return t;
  }
  bool divides(const Mono& m) const {
    for (int i = 0; i < 8; ++i)
      if (((b_ >> (8 * i)) & 0xff) > ((m.b_ >> (8 * i)) & 0xff)) return false;
    return true;
  }
  friend Mono operator+(Mono a, Mono b) {
    Mono r;
    r.b_ = a.b_ + b.b_;  // lanes must not overflow; exponents stay small here
    return r;
  }
  friend Mono operator-(Mono a, Mono b) {
    Mono r;
    r.b_ = a.b_ - b.b_;  // caller guarantees divisibility
    return r;
  }
  std::uint64_t bits() const { return b_; }
  static Mono from_bits(std::uint64_t b) {
    Mono m;
    m.b_ = b;
    return m;
  }
  bool operator<(const Mono& o) const { return b_ < o.b_; }
  bool operator==(const Mono& o) const { return b_ == o.b_; }
  bool operator!=(const Mono& o) const { return b_ != o.b_; }

 private:
  static int shift(int i) { return 8 * (7 - i); }
  std::uint64_t b_ = 0;
};

// Sparse polynomial in (z_1..z_nz, alpha) with XPoly coefficients.
class MPoly {
 public:
  explicit MPoly(int nz = 0) : nz_(nz) {
    if (nz + 1 > 8) throw std::invalid_argument("too many variables");
  }

  static MPoly constant(int nz, const XPoly& c) {
    MPoly p(nz);
    if (!c.is_zero()) p.t_[Mono()] = c;
    return p;
  }
  static MPoly constant(int nz, const Rat& c) { return constant(nz, XPoly(c)); }
  // var = 0..nz-1 for z's, nz for alpha.
  static MPoly variable(int nz, int var, int exp = 1) {
    MPoly p(nz);
    Mono m;
    m.set(var, exp);
    p.t_[m] = XPoly(Rat(1));
    return p;
  }

  // Builds from a vector sorted by monomial with nonzero coefficients.
  static MPoly from_sorted(int nz, std::vector<std::pair<Mono, XPoly>>&& v) {
    MPoly p(nz);
    for (auto& [m, c] : v) p.t_.emplace_hint(p.t_.end(), m, std::move(c));
    return p;
  }
  // Moves the terms out as a sorted vector, leaving this zero.
  std::vector<std::pair<Mono, XPoly>> take_terms() {
    std::vector<std::pair<Mono, XPoly>> v;
    v.reserve(t_.size());
    for (auto& [m, c] : t_) v.emplace_back(m, std::move(c));
    t_.clear();
    return v;
  }

  int nz() const { return nz_; }
  int alpha_slot() const { return nz_; }
  bool is_zero() const { return t_.empty(); }
  const std::map<Mono, XPoly>& terms() const { return t_; }

  void add_term(const Mono& m, const XPoly& c) {
    if (c.is_zero()) return;
    auto it = t_.find(m);
    if (it == t_.end()) {
      t_[m] = c;
    } else {
      it->second += c;
      if (it->second.is_zero()) t_.erase(it);
    }
  }

  MPoly& operator+=(const MPoly& o) {
    check_nz(o);
    for (const auto& [m, c] : o.t_) add_term(m, c);
    return *this;
  }
  MPoly& operator-=(const MPoly& o) {
    check_nz(o);
    for (const auto& [m, c] : o.t_) add_term(m, -c);
    return *this;
  }
  friend MPoly operator+(MPoly a, const MPoly& b) { return a += b; }
  friend MPoly operator-(MPoly a, const MPoly& b) { return a -= b; }
  friend MPoly operator-(const MPoly& a) {
    MPoly r(a.nz_);
    for (const auto& [m, c] : a.t_) r.t_[m] = -c;
    return r;
  }
  friend MPoly operator*(const MPoly& a, const MPoly& b) {
    a.check_nz(b);
    MPoly r(a.nz_);
    for (const auto& [ma, ca] : a.t_)
      for (const auto& [mb, cb] : b.t_) r.add_term(ma + mb, ca * cb);
    return r;
  }
  MPoly& operator*=(const MPoly& o) { return *this = *this * o; }
  MPoly& operator*=(const XPoly& s) {
    if (s.is_zero()) {
      t_.clear();
      return *this;
    }
    for (auto& [m, c] : t_) c *= s;
    return *this;
  }
  friend MPoly operator*(MPoly a, const XPoly& s) { return a *= s; }
  MPoly& operator*=(const Rat& s) { return *this *= XPoly(s); }
  friend MPoly operator*(MPoly a, const Rat& s) { return a *= s; }

  bool operator==(const MPoly& o) const { return nz_ == o.nz_ && t_ == o.t_; }
  bool operator!=(const MPoly& o) const { return !(*this == o); }

  int degree_in(int var) const {
    int d = 0;
    for (const auto& [m, c] : t_) d = std::max(d, m[var]);
    return d;
  }
  int total_degree() const {
    int d = 0;
    for (const auto& [m, c] : t_) d = std::max(d, m.total());
    return d;
  }
  int max_x_degree() const {
    bool first = true;
    int d = 0;
    for (const auto& [m, c] : t_) {
      int e = c.max_exp();
      if (first || e > d) d = e;
      first = false;
    }
    return d;
  }
  int min_x_degree() const {
    bool first = true;
    int d = 0;
    for (const auto& [m, c] : t_) {
      int e = c.min_exp();
      if (first || e < d) d = e;
      first = false;
    }
    return d;
  }
  bool depends_on(int var) const {
    for (const auto& [m, c] : t_)
      if (m[var] > 0) return true;
    return false;
  }

  MPoly derivative(int var) const {
    MPoly r(nz_);
    for (const auto& [m, c] : t_) {
      if (m[var] == 0) continue;
      Mono mm = m;
      mm.bump(var, -1);
      r.add_term(mm, c * Rat(m[var]));
    }
    return r;
  }

  // Renames/identifies variable `from` with variable `to` (both z-or-alpha
  // slot ids). Exponents merge.
  MPoly rename_var(int from, int to) const {
    MPoly r(nz_);
    for (const auto& [m, c] : t_) {
      Mono mm = m;
      int e = mm[from];
      mm.set(from, 0);
      mm.bump(to, e);
      r.add_term(mm, c);
    }
    return r;
  }

  MPoly substitute_rat(int var, const Rat& value) const {
    MPoly r(nz_);
    for (const auto& [m, c] : t_) {
      Mono mm = m;
      int e = mm[var];
      mm.set(var, 0);
      r.add_term(mm, c * rat_pow(value, e));
    }
    return r;
  }

  // Binds X = 2/beta to a rational value, collapsing XPoly coefficients.
  MPoly substitute_x(const Rat& xval) const {
    MPoly r(nz_);
    for (const auto& [m, c] : t_) r.add_term(m, XPoly(c.eval(xval)));
    return r;
  }

  // Embeds into a ring with more z-variables (alpha slot moves to the end).
  MPoly embed(int new_nz) const {
    if (new_nz == nz_) return *this;
    if (new_nz < nz_) throw std::invalid_argument("embed shrinks ring");
    MPoly r(new_nz);
    for (const auto& [m, c] : t_) {
      Mono mm = m;
      int e = mm[nz_];
      mm.set(nz_, 0);
      mm.set(new_nz, e);
      r.t_[mm] = c;
    }
    return r;
  }

  // Applies a z-variable relabeling: perm[i] = new slot of z_i, -1 allowed
  // for unused variables.
  MPoly map_zvars(const std::vector<int>& perm, int new_nz) const {
    MPoly r(new_nz);
    for (const auto& [m, c] : t_) {
      Mono mm;
      for (int i = 0; i < nz_; ++i) {
        if (m[i] == 0) continue;
        if (perm[i] < 0) throw std::invalid_argument("map_zvars drops used var");
        mm.bump(perm[i], m[i]);
      }
      mm.set(new_nz, m[nz_]);
      r.add_term(mm, c);
    }
    return r;
  }

  // Exact division; nullopt if not exactly divisible. The divisor's leading
  // coefficient must be a rational constant (true for every factor we use).
  std::optional<MPoly> try_divide(const MPoly& div) const {
    div.check_nz(*this);
    if (div.is_zero()) throw std::invalid_argument("division by zero poly");
    auto lt = std::prev(div.t_.end());
    const Mono& lm = lt->first;
    if (!lt->second.is_constant())
      throw std::invalid_argument("divisor leading coeff not constant");
    Rat lc = lt->second.coeff(0);
    MPoly rem = *this;
    MPoly quot(nz_);
    while (!rem.t_.empty()) {
      auto rt = std::prev(rem.t_.end());
      const Mono rm = rt->first;
      if (!lm.divides(rm)) return std::nullopt;
      Mono qm = rm - lm;
      XPoly qc = rt->second / lc;
      quot.add_term(qm, qc);
      for (const auto& [dm, dc] : div.t_) rem.add_term(dm + qm, -(dc * qc));
    }
    return quot;
  }

  // Leading coefficient/monomial in the lex order.
  const XPoly& leading_coeff() const {
    if (t_.empty()) throw std::invalid_argument("leading_coeff of zero");
    return std::prev(t_.end())->second;
  }
  const Mono& leading_mono() const {
    if (t_.empty()) throw std::invalid_argument("leading_mono of zero");
    return std::prev(t_.end())->first;
  }

  // Collects coefficients of powers of `var`: out[e] = coefficient poly.
  std::vector<MPoly> coeffs_in(int var) const {
    std::vector<MPoly> out(degree_in(var) + 1, MPoly(nz_));
    for (const auto& [m, c] : t_) {
      Mono mm = m;
      int e = mm[var];
      mm.set(var, 0);
      out[e].add_term(mm, c);
    }
    return out;
  }

 private:
  void check_nz(const MPoly& o) const {
    if (nz_ != o.nz_) throw std::invalid_argument("mixed variable counts");
  }
  int nz_;
  std::map<Mono, XPoly> t_;
};

inline MPoly mpoly_pow(const MPoly& base, unsigned e) {
  MPoly out = MPoly::constant(base.nz(), Rat(1));
  MPoly p = base;
  while (e) {
    if (e & 1) out *= p;
    p *= p;
    e >>= 1;
  }
  return out;
}

}  // namespace twtail

#endif
