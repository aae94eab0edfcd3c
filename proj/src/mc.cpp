#include <twtail/mc.hpp>

#include <algorithm>
#include <cfloat>
#include <cmath>
#include <thread>

namespace twtail {

namespace {

uint64_t splitmix64(uint64_t& x) {
  uint64_t z = (x += 0x9e3779b97f4a7c15ull);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

uint64_t rotl(uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

}  // namespace

Rng::Rng(uint64_t seed) {
  uint64_t x = seed;
  for (auto& w : s) w = splitmix64(x);
}

Rng Rng::sub(uint64_t seed, uint64_t index) {
  uint64_t x = seed;
  uint64_t key = splitmix64(x) ^ (index * 0x9e3779b97f4a7c15ull);
  return Rng(key);
}

uint64_t Rng::next() {
  const uint64_t result = rotl(s[0] + s[3], 23) + s[0];
  const uint64_t t = s[1] << 17;
  s[2] ^= s[0];
  s[3] ^= s[1];
  s[1] ^= s[2];
  s[0] ^= s[3];
  s[2] ^= t;
  s[3] = rotl(s[3], 45);
  return result;
}

double Rng::uniform() {
  // 53-bit mantissa, shifted into (0, 1)
  return (static_cast<double>(next() >> 11) + 0.5) * 0x1p-53;
}

double Rng::normal() {
  if (haveSpare) {
    haveSpare = false;
    return spare;
  }
  double u, v, q;
  do {
    u = 2 * uniform() - 1;
    v = 2 * uniform() - 1;
    q = u * u + v * v;
  } while (q >= 1 || q == 0);
  const double f = std::sqrt(-2 * std::log(q) / q);
  spare = v * f;
  haveSpare = true;
  return u * f;
}

double Rng::gamma(double shape) {
  if (shape < 1) {
    const double g = gamma(shape + 1);
    return g * std::pow(uniform(), 1 / shape);
  }
  const double d = shape - 1.0 / 3;
  const double c = 1 / std::sqrt(9 * d);
  for (;;) {
    double x, v;
    do {
      x = normal();
      v = 1 + c * x;
    } while (v <= 0);
    v = v * v * v;
    const double u = uniform();
    if (u < 1 - 0.0331 * x * x * x * x) return d * v;
    if (std::log(u) < 0.5 * x * x + d * (1 - v + std::log(v))) return d * v;
  }
}

double Rng::chi(double dof) { return std::sqrt(2 * gamma(dof / 2)); }

TridiagMatrix sample_tridiag(long long N, double beta, double t, Rng& rng) {
  if (N < 1 || !(beta > 0) || !(t > 0))
    throw std::invalid_argument("sample_tridiag needs N >= 1, beta, t > 0");
  const double scale = std::sqrt(t / static_cast<double>(N));
  TridiagMatrix m;
  m.diag.resize(N);
  m.offdiag.resize(N - 1);
  const double dsig = std::sqrt(2 / beta) * scale;
  const double osig = scale / std::sqrt(beta);
  for (long long i = 0; i < N; ++i) {
    m.diag[i] = dsig * rng.normal();
    if (i + 1 < N) m.offdiag[i] = osig * rng.chi(beta * (N - 1 - i));
  }
  return m;
}

int sturm_count(const TridiagMatrix& m, double x) {
  const size_t n = m.diag.size();
  int count = 0;
  double d = 1;
  for (size_t i = 0; i < n; ++i) {
    d = m.diag[i] - x - (i ? m.offdiag[i - 1] * m.offdiag[i - 1] / d : 0);
    if (d == 0) d = -DBL_MIN;
    if (d < 0) ++count;
  }
  return count;
}

namespace {

std::pair<double, double> gershgorin(const TridiagMatrix& m) {
  const size_t n = m.diag.size();
  double lo = m.diag[0], hi = m.diag[0];
  for (size_t i = 0; i < n; ++i) {
    double r = (i ? m.offdiag[i - 1] : 0) + (i + 1 < n ? m.offdiag[i] : 0);
    lo = std::min(lo, m.diag[i] - r);
    hi = std::max(hi, m.diag[i] + r);
  }
  return {lo, hi};
}

}  // namespace

double lambda_max(const TridiagMatrix& m, double tol) {
  if (!(tol > 0)) throw std::invalid_argument("tol must be positive");
  const int n = static_cast<int>(m.diag.size());
  auto [lo, hi] = gershgorin(m);
  hi += tol;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (sturm_count(m, mid) >= n)
      hi = mid;
    else
      lo = mid;
  }
  return 0.5 * (lo + hi);
}

std::vector<double> all_eigenvalues(const TridiagMatrix& m, double tol) {
  if (!(tol > 0)) throw std::invalid_argument("tol must be positive");
  const int n = static_cast<int>(m.diag.size());
  auto [glo, ghi] = gershgorin(m);
  ghi += tol;
  std::vector<double> out(n);
  double floorLo = glo;
  for (int k = 1; k <= n; ++k) {
    double lo = floorLo, hi = ghi;
    while (hi - lo > tol) {
      const double mid = 0.5 * (lo + hi);
      if (sturm_count(m, mid) >= k)
        hi = mid;
      else
        lo = mid;
    }
    out[k - 1] = 0.5 * (lo + hi);
    floorLo = lo;  // eigenvalues come out sorted
  }
  return out;
}

TailEstimate estimate_tail(long long N, double beta, double t, double a,
                           long long nSamples, uint64_t seed, int threads) {
  if (nSamples < 1) throw std::invalid_argument("nSamples >= 1 required");
  threads = std::max(1, threads);
  std::vector<long long> hits(threads, 0);
  auto work = [&](int w) {
    long long h = 0;
    for (long long i = w; i < nSamples; i += threads) {
      Rng rng = Rng::sub(seed, static_cast<uint64_t>(i));
      TridiagMatrix m = sample_tridiag(N, beta, t, rng);
      // lambda_max > a iff some pivot count at a falls short of N
      if (sturm_count(m, a) < N) ++h;
    }
    hits[w] = h;
  };
  if (threads == 1) {
    work(0);
  } else {
    std::vector<std::thread> pool;
    for (int w = 0; w < threads; ++w) pool.emplace_back(work, w);
    for (auto& th : pool) th.join();
  }
  long long total = 0;
  for (long long h : hits) total += h;
  TailEstimate est;
  est.pHat = static_cast<double>(total) / static_cast<double>(nSamples);
  est.stdErr = std::sqrt(est.pHat * (1 - est.pHat) /
                         static_cast<double>(nSamples));
  est.nSamples = nSamples;
  est.seed = seed;
  est.N = N;
  est.beta = beta;
  est.t = t;
  est.a = a;
  return est;
}

namespace {

template <class F>
double simpson_rec(const F& f, double a, double b, double fa, double fm,
                   double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6 * (fa + 4 * flm + fm);
  const double right = (b - m) / 6 * (fm + 4 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::fabs(delta) <= 15 * tol)
    return left + right + delta / 15;
  return simpson_rec(f, a, m, fa, flm, fm, left, tol / 2, depth - 1) +
         simpson_rec(f, m, b, fm, frm, fb, right, tol / 2, depth - 1);
}

template <class F>
double adaptive_simpson(const F& f, double a, double b, double tol) {
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6 * (fa + 4 * fm + fb);
  return simpson_rec(f, a, b, fa, fm, fb, whole, tol, 40);
}

}  // namespace

double predicted_tail(long long N, long double beta, long double t,
                      long double a, int order,
                      const DeviationExpansion& exp) {
  auto f = [&](double x) -> double {
    return static_cast<double>(
        eval_density(N, beta, t, x, order, exp).value);
  };
  const double fa = f(static_cast<double>(a));
  // local exponential decay rate sets the integration window
  const double delta = 0.05;
  const double fd = f(static_cast<double>(a) + delta);
  double slope = fd > 0 && fd < fa ? std::log(fa / fd) / delta : 1;
  slope = std::max(slope, 1e-2);
  const double width = std::max(45 / slope, 0.1);
  const double b = static_cast<double>(a) + width;
  return adaptive_simpson(f, static_cast<double>(a), b,
                          1e-10 * fa * width);
}

DeviationComparison compare_deviation(long long N, double beta, double t,
                                      double a, long long nSamples, int order,
                                      uint64_t seed,
                                      const DeviationExpansion& exp,
                                      int threads) {
  if (!(a > 2 * std::sqrt(t)))
    throw std::invalid_argument("a must lie right of the edge 2 sqrt(t)");
  DeviationComparison cmp;
  cmp.predicted = predicted_tail(N, beta, t, a, order, exp);
  if (cmp.predicted * static_cast<double>(nSamples) < 100)
    throw RegimeTooRare("predicted tail probability too small for direct "
                        "Monte Carlo at this sample count");
  cmp.estimate = estimate_tail(N, beta, t, a, nSamples, seed, threads);
  cmp.ratio = cmp.estimate.pHat / cmp.predicted;
  double statRel = cmp.estimate.pHat > 0
                       ? cmp.estimate.stdErr / cmp.estimate.pHat
                       : 1;
  // truncation proxy: magnitude of the last included exponent term at a
  double trunc = static_cast<double>(
      eval_density(N, beta, t, a, order, exp).last_term);
  cmp.uncertainty = statRel + trunc;
  return cmp;
}

}  // namespace twtail
