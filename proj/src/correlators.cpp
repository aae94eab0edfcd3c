#include <twtail/correlators.hpp>

#include <vector>

namespace twtail {

RatFn seed_omega_1_0() {
  RatFn a(MPoly::constant(1, Rat(1)), {{Factor::z(0), 1}});
  RatFn b(MPoly::constant(1, Rat(1)), {{Factor::z(0), 3}});
  return a - b;
}

RatFn xprime(int nz, int var) {
  MPoly n = Factor::zm1(var).poly(nz) * Factor::zp1(var).poly(nz);
  return RatFn(std::move(n), {{Factor::z(var), 2}});
}

RatFn inv_xprime(int nz, int var) {
  return RatFn(MPoly::variable(nz, var, 2),
               {{Factor::zm1(var), 1}, {Factor::zp1(var), 1}});
}

RatFn wall_restriction(const RatFn& omega1) {
  if (omega1.nz() != 1)
    throw std::invalid_argument("wall_restriction needs a 1-variable input");
  return omega1.substitute_z_to_alpha(0).compacted();
}

bool is_symmetric(const RatFn& f) {
  int n = f.nz();
  for (int i = 0; i + 1 < n; ++i) {
    std::vector<int> perm(n);
    for (int j = 0; j < n; ++j) perm[j] = j;
    std::swap(perm[i], perm[i + 1]);
    if (f.with_zvars(perm, n) != f) return false;
  }
  return true;
}

namespace {

// relabels a correlator on m variables into an n-variable ring, sending its
// i-th variable to slots[i]
RatFn place(const RatFn& f, int n, const std::vector<int>& slots) {
  return f.with_zvars(slots, n);
}

}  // namespace

RatFn sd_step(int n, int k, CorrTable& table) {
  if (n == 1 && k == 0)
    throw std::invalid_argument("(1,0) is seeded, not recursed");
  const int z = 0;  // distinguished variable slot
  std::vector<RatFn> parts;

  // A: diagonal identification of omega_{n+1}^{[k-2]}
  if (k >= 2) {
    const RatFn& w = table.get(n + 1, k - 2);
    RatFn diag = w.substitute_z_to_z(1, 0);
    std::vector<int> perm(n + 1);
    perm[0] = 0;
    perm[1] = -1;
    for (int i = 2; i <= n; ++i) perm[i] = i - 1;
    parts.push_back(diag.with_zvars(perm, n));
  }

  // B: quadratic convolution over subsets of the spectator variables and
  // splittings of k, omitting the two terms involving omega_1^{[0]}(z)
  // itself (they sit on the other side of the equation)
  {
    int m = n - 1;  // spectators are slots 1..n-1
    for (unsigned mask = 0; mask < (1u << m); ++mask) {
      std::vector<int> J{0}, Jc{0};
      for (int i = 0; i < m; ++i)
        ((mask >> i) & 1 ? J : Jc).push_back(i + 1);
      for (int k1 = 0; k1 <= k; ++k1) {
        int k2 = k - k1;
        bool j_empty = J.size() == 1;
        bool j_full = Jc.size() == 1;
        if (j_empty && k1 == 0) continue;
        if (j_full && k1 == k) continue;
        const RatFn& f1 = table.get(static_cast<int>(J.size()), k1);
        const RatFn& f2 = table.get(static_cast<int>(Jc.size()), k2);
        parts.push_back(RatFn::mul_raw(place(f1, n, J), place(f2, n, Jc)));
      }
    }
  }

  // C and D use omega_n^{[k-1]}
  if (k >= 1) {
    const RatFn& w = table.get(n, k - 1);
    RatFn g = w * inv_xprime(n, z);
    // C with coefficient (1 - X)
    {
      RatFn c = RatFn::mul_raw(xprime(n, z), g.derivative(z));
      parts.push_back(c * (XPoly(Rat(1)) - XPoly::x()));
    }
    // D with coefficient 2: wall difference quotient
    RatFn wall = w.substitute_z_to_alpha(z) *
                 RatFn(MPoly::variable(n, n, 2),
                       {{Factor::am1(), 1}, {Factor::ap1(), 1}});
    RatFn diff = g - wall;
    MPoly z_minus_a = MPoly::variable(n, z) - MPoly::variable(n, n);
    RatFn dq = diff.divided_numerator(z_minus_a, "D term: z - alpha");
    MPoly dn = MPoly::variable(n, n) * MPoly::variable(n, z) *
               Factor::zm1(z).poly(n) * Factor::zp1(z).poly(n) *
               Factor::zm1(z).poly(n) * Factor::zp1(z).poly(n);
    RatFn d = RatFn::mul_raw(
        dq, RatFn(std::move(dn), {{Factor::z(z), 4}, {Factor::azm1(z), 1}}));
    parts.push_back(d * Rat(2));
  }

  // E: for each spectator z_i, coefficient X
  if (n >= 2) {
    const RatFn& w = table.get(n - 1, k);
    RatFn xp = xprime(n, z);
    for (int i = 1; i <= n - 1; ++i) {
      std::vector<int> rest{0};
      std::vector<int> all;
      for (int j = 1; j <= n - 1; ++j) {
        all.push_back(j);
        if (j != i) rest.push_back(j);
      }
      RatFn w1 = place(w, n, rest);  // omega_{n-1}(z, z_{I\i})
      RatFn w2 = place(w, n, all);   // omega_{n-1}(z_I)
      RatFn bracket = xp * w1 - xp * xp * w2 * inv_xprime(n, i);
      MPoly z_minus_zi = MPoly::variable(n, z) - MPoly::variable(n, i);
      RatFn bq = bracket.divided_numerator(z_minus_zi, "E term: z - z_i");
      RatFn h = RatFn::mul_raw(
          bq, RatFn(MPoly::variable(n, z) * MPoly::variable(n, i),
                    {{Factor::zzm1(0, i), 1}}));
      parts.push_back(h.derivative(i) * XPoly::x());
    }
  }

  // Gaussian source: Q_1^{[1]} = -1 enters only at (1,1)
  if (n == 1 && k == 1)
    parts.push_back(RatFn::mul_raw(xprime(n, z), xprime(n, z)) * Rat(-1));

  // divide by (Y x')(z) = (z-1)^2 (z+1)^2 / z^3
  RatFn total = RatFn::sum(parts);
  return total * RatFn(MPoly::variable(n, z, 3),
                       {{Factor::zm1(z), 2}, {Factor::zp1(z), 2}});
}

const RatFn& CorrTable::get(int n, int k) {
  auto it = tab_.find({n, k});
  if (it != tab_.end()) return it->second;
  RatFn v = compute(n, k);
  return tab_.emplace(std::pair{n, k}, std::move(v)).first->second;
}

RatFn CorrTable::compute(int n, int k) {
  if (n < 1 || k < 0) throw std::invalid_argument("bad correlator index");
  if (n == 1 && k == 0) return seed_omega_1_0();
  return sd_step(n, k, *this);
}

void CorrTable::build(int maxLayer) {
  for (int layer = 1; layer <= maxLayer; ++layer)
    for (int n = 1; n <= layer; ++n) get(n, layer - n);
  if (maxLayer > maxLayer_) maxLayer_ = maxLayer;
}

}  // namespace twtail
