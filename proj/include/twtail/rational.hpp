#ifndef TWTAIL_RATIONAL_HPP
#define TWTAIL_RATIONAL_HPP

#include <gmpxx.h>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace twtail {

// Exact rational scalar. mpq_class already keeps gcd-reduced values with a
// positive denominator, which is exactly the canonical form we need.
using Rat = mpq_class;
using Int = mpz_class;

inline Rat rat(long p, long q = 1) {
  Rat r(p, q);
  r.canonicalize();
  return r;
}

// Parses "p", "p/q" or a decimal string like "-3.25" into an exact rational.
inline Rat rat_from_string(const std::string& s) {
  auto slash = s.find('/');
  if (slash != std::string::npos) {
    Rat r(s);
    r.canonicalize();
    return r;
  }
  auto dot = s.find('.');
  if (dot == std::string::npos) {
    Rat r(s);
    r.canonicalize();
    return r;
  }
  std::string digits = s.substr(0, dot) + s.substr(dot + 1);
  std::size_t frac_len = s.size() - dot - 1;
  Int num(digits);
  Int den(1);
  for (std::size_t i = 0; i < frac_len; ++i) den *= 10;
  Rat r(num, den);
  r.canonicalize();
  return r;
}

// Canonical "p" / "p/q" form used by all JSON output.
inline std::string rat_to_string(const Rat& r) {
  if (r.get_den() == 1) return r.get_num().get_str();
  return r.get_num().get_str() + "/" + r.get_den().get_str();
}

inline Rat rat_pow(const Rat& base, long e) {
  if (e == 0) return Rat(1);
  Rat b = e > 0 ? base : Rat(1) / base;
  unsigned long n = e > 0 ? e : -e;
  Rat out(1);
  Rat p = b;
  while (n) {
    if (n & 1) out *= p;
    p *= p;
    n >>= 1;
  }
  return out;
}

// Largest v with 2^v dividing n (n != 0).
inline long dyadic_valuation(const Int& n) {
  if (n == 0) throw std::invalid_argument("dyadic_valuation(0)");
  return static_cast<long>(mpz_scan1(n.get_mpz_t(), 0));
}

inline bool is_power_of_two(const Int& n) {
  if (n <= 0) return false;
  Int m = n >> dyadic_valuation(n);
  return m == 1;
}

// Rational scalar with a machine-word fast path. Values are kept as reduced
// int64 fractions; any operation whose exact result does not fit promotes to
// an arbitrary-precision value and demotes again as soon as it fits. This is
// the coefficient type of the polynomial layer, where allocation per
// operation would dominate the run time.
class SRat {
 public:
  SRat() = default;
  SRat(long long v) : n_(v) {}
  explicit SRat(const Rat& q) {
    if (mpz_fits_slong_p(q.get_num().get_mpz_t()) &&
        mpz_fits_slong_p(q.get_den().get_mpz_t())) {
      n_ = q.get_num().get_si();
      d_ = q.get_den().get_si();
    } else {
      big_ = new Rat(q);
    }
  }
  SRat(const SRat& o) : n_(o.n_), d_(o.d_) {
    if (o.big_) big_ = new Rat(*o.big_);
  }
  SRat(SRat&& o) noexcept : n_(o.n_), d_(o.d_), big_(o.big_) {
    o.big_ = nullptr;
  }
  SRat& operator=(const SRat& o) {
    if (this == &o) return *this;
    delete big_;
    big_ = o.big_ ? new Rat(*o.big_) : nullptr;
    n_ = o.n_;
    d_ = o.d_;
    return *this;
  }
  SRat& operator=(SRat&& o) noexcept {
    std::swap(n_, o.n_);
    std::swap(d_, o.d_);
    std::swap(big_, o.big_);
    return *this;
  }
  ~SRat() { delete big_; }

  bool is_zero() const { return big_ ? *big_ == 0 : n_ == 0; }

  Rat to_rat() const {
    if (big_) return *big_;
    Rat r(static_cast<long>(n_), static_cast<long>(d_));
    r.canonicalize();
    return r;
  }

  SRat& operator+=(const SRat& o) { return addsub(o, false); }
  SRat& operator-=(const SRat& o) { return addsub(o, true); }

  SRat& operator*=(const SRat& o) {
    if (big_ || o.big_) {
      promote();
      *big_ *= o.big_ ? *big_rhs(o) : o.to_rat();
      demote();
      return *this;
    }
    long long an = n_, bn = o.n_;
    long long ad = d_, bd = o.d_;
    long long g1 = gcd_ll(an < 0 ? -an : an, bd);
    long long g2 = gcd_ll(bn < 0 ? -bn : bn, ad);
    __int128 nn = static_cast<__int128>(an / g1) * (bn / g2);
    __int128 dd = static_cast<__int128>(ad / g2) * (bd / g1);
    return set_checked(nn, dd);
  }

  SRat& operator/=(const SRat& o) {
    if (o.is_zero()) throw std::domain_error("rational division by zero");
    if (big_ || o.big_) {
      promote();
      *big_ /= o.big_ ? *big_rhs(o) : o.to_rat();
      demote();
      return *this;
    }
    SRat inv;
    inv.n_ = o.n_ < 0 ? -o.d_ : o.d_;
    inv.d_ = o.n_ < 0 ? -o.n_ : o.n_;
    return *this *= inv;
  }

  SRat operator-() const {
    SRat r(*this);
    if (r.big_)
      *r.big_ = -*r.big_;
    else
      r.n_ = -r.n_;
    return r;
  }

  bool operator==(const SRat& o) const {
    if (!big_ && !o.big_) return n_ == o.n_ && d_ == o.d_;
    return to_rat() == o.to_rat();
  }
  bool operator!=(const SRat& o) const { return !(*this == o); }
  bool operator<(const SRat& o) const {
    if (!big_ && !o.big_)
      return static_cast<__int128>(n_) * o.d_ <
             static_cast<__int128>(o.n_) * d_;
    return to_rat() < o.to_rat();
  }

 private:
  static long long gcd_ll(long long a, long long b) {
    while (b) {
      long long t = a % b;
      a = b;
      b = t;
    }
    return a < 0 ? -a : a == 0 ? 1 : a;
  }
  static unsigned __int128 gcd_128(unsigned __int128 a, unsigned __int128 b) {
    while (b) {
      unsigned __int128 t = a % b;
      a = b;
      b = t;
    }
    return a;
  }
  static Rat rat_from_i128(__int128 v) {
    bool neg = v < 0;
    unsigned __int128 u =
        neg ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
    Rat hi(static_cast<unsigned long>(u >> 64));
    Rat lo(static_cast<unsigned long>(u));
    Rat r = hi;
    mpq_mul_2exp(r.get_mpq_t(), r.get_mpq_t(), 64);
    r += lo;
    if (neg) r = -r;
    return r;
  }
  const Rat* big_rhs(const SRat& o) const { return o.big_; }

  void promote() {
    if (!big_) {
      big_ = new Rat(static_cast<long>(n_), static_cast<long>(d_));
      big_->canonicalize();
    }
  }
  void demote() {
    if (big_ && mpz_fits_slong_p(big_->get_num().get_mpz_t()) &&
        mpz_fits_slong_p(big_->get_den().get_mpz_t())) {
      n_ = big_->get_num().get_si();
      d_ = big_->get_den().get_si();
      delete big_;
      big_ = nullptr;
    }
  }

  // stores nn/dd (already coprime or needing one gcd pass), promoting when
  // out of range
  SRat& set_checked(__int128 nn, __int128 dd) {
    if (nn == 0) {
      n_ = 0;
      d_ = 1;
      delete big_;
      big_ = nullptr;
      return *this;
    }
    if (dd < 0) {
      nn = -nn;
      dd = -dd;
    }
    constexpr __int128 lo = -(static_cast<__int128>(1) << 62);
    constexpr __int128 hi = static_cast<__int128>(1) << 62;
    if (nn > lo && nn < hi && dd < hi) {
      n_ = static_cast<long long>(nn);
      d_ = static_cast<long long>(dd);
      delete big_;
      big_ = nullptr;
      return *this;
    }
    Rat r = rat_from_i128(nn) / rat_from_i128(dd);
    delete big_;
    big_ = new Rat(std::move(r));
    demote();
    return *this;
  }

  SRat& addsub(const SRat& o, bool sub) {
    if (big_ || o.big_) {
      promote();
      if (sub)
        *big_ -= o.big_ ? *big_rhs(o) : o.to_rat();
      else
        *big_ += o.big_ ? *big_rhs(o) : o.to_rat();
      demote();
      return *this;
    }
    long long on = sub ? -o.n_ : o.n_;
    long long g = gcd_ll(d_, o.d_);
    long long da = d_ / g, db = o.d_ / g;
    __int128 nn = static_cast<__int128>(n_) * db + static_cast<__int128>(on) * da;
    __int128 dd = static_cast<__int128>(da) * o.d_;
    if (nn == 0) {
      n_ = 0;
      d_ = 1;
      return *this;
    }
    unsigned __int128 un = nn < 0 ? -static_cast<unsigned __int128>(nn)
                                  : static_cast<unsigned __int128>(nn);
    unsigned __int128 g2 = gcd_128(un, static_cast<unsigned __int128>(dd));
    if (g2 > 1) {
      nn /= static_cast<__int128>(g2);
      dd /= static_cast<__int128>(g2);
    }
    return set_checked(nn, dd);
  }

  long long n_ = 0;
  long long d_ = 1;
  Rat* big_ = nullptr;
};

inline SRat operator+(SRat a, const SRat& b) { return a += b; }
inline SRat operator-(SRat a, const SRat& b) { return a -= b; }
inline SRat operator*(SRat a, const SRat& b) { return a *= b; }
inline SRat operator/(SRat a, const SRat& b) { return a /= b; }

// Bernoulli number B_n (B_1 = -1/2 convention), via the Akiyama-Tanigawa
// style recurrence on the defining triangle.
inline Rat bernoulli(unsigned n) {
  std::vector<Rat> a(n + 1);
  for (unsigned m = 0; m <= n; ++m) {
    a[m] = Rat(1, m + 1);
    for (unsigned j = m; j >= 1; --j) a[j - 1] = Rat(j) * (a[j - 1] - a[j]);
  }
  return n == 1 ? -a[0] : a[0];
}

}  // namespace twtail

#endif
