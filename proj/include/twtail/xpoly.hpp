#ifndef TWTAIL_XPOLY_HPP
#define TWTAIL_XPOLY_HPP

#include <twtail/rational.hpp>

#include <boost/container/small_vector.hpp>

#include <algorithm>
#include <utility>
#include <vector>

namespace twtail {

// Laurent polynomial in X = 2/beta with rational coefficients, stored as a
// contiguous run c_[0..] for exponents off_, off_+1, ... with nonzero ends.
// Coefficients use the machine-word rational fast path and a small inline
// buffer, so typical copies touch no heap.
class XPoly {
 public:
  XPoly() = default;
  explicit XPoly(const Rat& c) {
    SRat s(c);
    if (!s.is_zero()) c_.push_back(std::move(s));
  }
  XPoly(long p, long q) : XPoly(rat(p, q)) {}

  static XPoly term(const Rat& c, int xexp) {
    XPoly p;
    SRat s(c);
    if (!s.is_zero()) {
      p.off_ = xexp;
      p.c_.push_back(std::move(s));
    }
    return p;
  }
  static XPoly x(int e = 1) { return term(Rat(1), e); }

  bool is_zero() const { return c_.empty(); }
  bool is_constant() const {
    return c_.empty() || (c_.size() == 1 && off_ == 0);
  }
  Rat coeff(int e) const {
    int i = e - off_;
    if (i < 0 || i >= static_cast<int>(c_.size())) return Rat(0);
    return c_[i].to_rat();
  }
  int min_exp() const { return off_; }
  int max_exp() const {
    return c_.empty() ? 0 : off_ + static_cast<int>(c_.size()) - 1;
  }
  std::vector<std::pair<int, Rat>> items() const {
    std::vector<std::pair<int, Rat>> out;
    for (std::size_t i = 0; i < c_.size(); ++i)
      if (!c_[i].is_zero())
        out.emplace_back(off_ + static_cast<int>(i), c_[i].to_rat());
    return out;
  }

  XPoly& operator+=(const XPoly& o) { return axpy(o, false); }
  XPoly& operator-=(const XPoly& o) { return axpy(o, true); }
  friend XPoly operator+(XPoly a, const XPoly& b) { return a += b; }
  friend XPoly operator-(XPoly a, const XPoly& b) { return a -= b; }
  friend XPoly operator-(const XPoly& a) {
    XPoly r;
    r.off_ = a.off_;
    r.c_.reserve(a.c_.size());
    for (const auto& c : a.c_) r.c_.push_back(-c);
    return r;
  }
  friend XPoly operator*(const XPoly& a, const XPoly& b) {
    XPoly r;
    if (a.c_.empty() || b.c_.empty()) return r;
    r.off_ = a.off_ + b.off_;
    r.c_.assign(a.c_.size() + b.c_.size() - 1, SRat());
    for (std::size_t i = 0; i < a.c_.size(); ++i) {
      if (a.c_[i].is_zero()) continue;
      for (std::size_t j = 0; j < b.c_.size(); ++j)
        if (!b.c_[j].is_zero()) r.c_[i + j] += a.c_[i] * b.c_[j];
    }
    r.trim();
    return r;
  }
  XPoly& operator*=(const XPoly& o) { return *this = *this * o; }
  XPoly& operator*=(const SRat& s) {
    if (s.is_zero()) {
      c_.clear();
      off_ = 0;
      return *this;
    }
    for (auto& c : c_) c *= s;
    return *this;
  }
  XPoly& operator*=(const Rat& s) { return *this *= SRat(s); }
  friend XPoly operator*(XPoly a, const Rat& s) { return a *= s; }
  friend XPoly operator*(const Rat& s, XPoly a) { return a *= s; }
  XPoly& operator/=(const SRat& s) {
    for (auto& c : c_) c /= s;
    return *this;
  }
  XPoly& operator/=(const Rat& s) { return *this /= SRat(s); }
  friend XPoly operator/(XPoly a, const Rat& s) { return a /= s; }

  bool operator==(const XPoly& o) const {
    if (off_ != o.off_ || c_.size() != o.c_.size()) return false;
    for (std::size_t i = 0; i < c_.size(); ++i)
      if (c_[i] != o.c_[i]) return false;
    return true;
  }
  bool operator!=(const XPoly& o) const { return !(*this == o); }
  // Arbitrary total order, usable for map keys.
  bool operator<(const XPoly& o) const {
    if (off_ != o.off_) return off_ < o.off_;
    if (c_.size() != o.c_.size()) return c_.size() < o.c_.size();
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (c_[i] != o.c_[i]) return c_[i] < o.c_[i];
    }
    return false;
  }

  Rat eval(const Rat& xval) const {
    Rat out(0);
    for (std::size_t i = c_.size(); i-- > 0;) {
      out *= xval;
      out += c_[i].to_rat();
    }
    return out * rat_pow(xval, off_);
  }

  XPoly shifted(int xshift) const {
    XPoly r = *this;
    if (!r.c_.empty()) r.off_ += xshift;
    return r;
  }

  // Writes this as 2^v * B with B an integer-coefficient polynomial of odd
  // content. Throws if some denominator is not a power of two.
  std::pair<long, std::vector<std::pair<int, Int>>> dyadic_split() const {
    if (c_.empty()) throw std::invalid_argument("dyadic_split of zero");
    long v = 0;
    bool first = true;
    for (const auto& sc : c_) {
      if (sc.is_zero()) continue;
      Rat c = sc.to_rat();
      const Int den = c.get_den();
      if (!is_power_of_two(den))
        throw std::domain_error("non-dyadic denominator in XPoly");
      long val = dyadic_valuation(c.get_num()) - dyadic_valuation(den);
      if (first || val < v) v = val;
      first = false;
    }
    std::vector<std::pair<int, Int>> b;
    for (std::size_t i = 0; i < c_.size(); ++i) {
      if (c_[i].is_zero()) continue;
      Rat scaled = c_[i].to_rat() * rat_pow(Rat(2), -v);
      b.emplace_back(off_ + static_cast<int>(i), Int(scaled.get_num()));
    }
    return {v, b};
  }

 private:
  using CoeffVec = boost::container::small_vector<SRat, 4>;

  void trim() {
    std::size_t lo = 0, hi = c_.size();
    while (hi > lo && c_[hi - 1].is_zero()) --hi;
    while (lo < hi && c_[lo].is_zero()) ++lo;
    if (lo == hi) {
      c_.clear();
      off_ = 0;
      return;
    }
    if (lo > 0 || hi < c_.size()) {
      c_.erase(c_.begin() + hi, c_.end());
      c_.erase(c_.begin(), c_.begin() + lo);
      off_ += static_cast<int>(lo);
    }
  }

  XPoly& axpy(const XPoly& o, bool sub) {
    if (o.c_.empty()) return *this;
    if (c_.empty()) {
      *this = sub ? -o : o;
      return *this;
    }
    int lo = std::min(off_, o.off_);
    int hi = std::max(max_exp(), o.max_exp());
    if (lo < off_ || hi > max_exp()) {
      CoeffVec nc(hi - lo + 1, SRat());
      for (std::size_t i = 0; i < c_.size(); ++i)
        nc[off_ - lo + i] = std::move(c_[i]);
      c_ = std::move(nc);
      off_ = lo;
    }
    for (std::size_t i = 0; i < o.c_.size(); ++i) {
      if (sub)
        c_[o.off_ - off_ + i] -= o.c_[i];
      else
        c_[o.off_ - off_ + i] += o.c_[i];
    }
    trim();
    return *this;
  }

  int off_ = 0;
  CoeffVec c_;
};

inline XPoly xpoly_pow(const XPoly& base, unsigned e) {
  XPoly out(Rat(1));
  XPoly p = base;
  while (e) {
    if (e & 1) out *= p;
    p *= p;
    e >>= 1;
  }
  return out;
}

}  // namespace twtail

#endif
