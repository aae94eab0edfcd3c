#include <twtail/painleve.hpp>

namespace twtail {

namespace {

constexpr int kExactTrust = 64;

// Strip leading zero coefficients, moving the power offset down by 3/2 each.
void normalize(Grade& gr) {
  std::size_t strip = 0;
  while (strip < gr.c.size() && static_cast<int>(strip) < gr.trusted &&
         gr.c[strip] == 0)
    ++strip;
  if (strip > 0) {
    gr.c.erase(gr.c.begin(), gr.c.begin() + strip);
    gr.gamma += rat(3, 2) * Rat(static_cast<long>(strip));
    gr.trusted -= static_cast<int>(strip);
  }
  if (static_cast<int>(gr.c.size()) > gr.trusted)
    gr.c.resize(std::max(gr.trusted, 0));
}

bool dead(const Grade& gr) { return gr.trusted <= 0 || gr.c.empty(); }

void insert_grade(GradedAsySeries& out, int g, Grade gr) {
  normalize(gr);
  if (!dead(gr)) out.g.emplace(g, std::move(gr));
}

Grade add_grades(const Grade& a, const Grade& b, bool sub) {
  if (a.piHalf != b.piHalf)
    throw std::logic_error("inhomogeneous pi powers in one grade");
  Rat diff = (a.gamma - b.gamma) * rat(2, 3);
  if (diff.get_den() != 1)
    throw std::logic_error("incompatible power offsets in one grade");
  long k = diff.get_num().get_si();
  const Grade& low = k >= 0 ? b : a;   // smaller gamma leads
  const Grade& high = k >= 0 ? a : b;  // shifted by |k| slots
  long sh = k >= 0 ? k : -k;
  Grade r;
  r.gamma = low.gamma;
  r.piHalf = low.piHalf;
  r.trusted = std::min<long>(low.trusted, high.trusted + sh);
  r.c.assign(r.trusted, Rat(0));
  for (std::size_t j = 0; j < low.c.size() && j < r.c.size(); ++j)
    r.c[j] = low.c[j];
  bool negHigh = sub ? (&high == &b) : false;
  bool negLow = sub ? (&low == &b) : false;
  if (negLow)
    for (auto& v : r.c) v = -v;
  for (std::size_t j = 0; j < high.c.size(); ++j) {
    std::size_t idx = j + sh;
    if (idx >= r.c.size()) break;
    if (negHigh)
      r.c[idx] -= high.c[j];
    else
      r.c[idx] += high.c[j];
  }
  return r;
}

GradedAsySeries add_impl(const GradedAsySeries& a, const GradedAsySeries& b,
                         bool sub) {
  GradedAsySeries out;
  for (const auto& [g, gr] : a.g) {
    if (b.has(g)) {
      insert_grade(out, g, add_grades(gr, b.at(g), sub));
    } else {
      insert_grade(out, g, gr);
    }
  }
  for (const auto& [g, gr] : b.g) {
    if (a.has(g)) continue;
    Grade copy = gr;
    if (sub)
      for (auto& v : copy.c) v = -v;
    insert_grade(out, g, std::move(copy));
  }
  return out;
}

}  // namespace

GradedAsySeries gs_const(const Rat& v) {
  GradedAsySeries out;
  if (v == 0) return out;
  Grade gr;
  gr.gamma = Rat(0);
  gr.c = {v};
  gr.trusted = kExactTrust;
  out.g.emplace(0, std::move(gr));
  return out;
}

GradedAsySeries gs_add(const GradedAsySeries& a, const GradedAsySeries& b) {
  return add_impl(a, b, false);
}

GradedAsySeries gs_sub(const GradedAsySeries& a, const GradedAsySeries& b) {
  return add_impl(a, b, true);
}

GradedAsySeries gs_scale(const GradedAsySeries& a, const Rat& v) {
  GradedAsySeries out;
  if (v == 0) return out;
  for (const auto& [g, gr] : a.g) {
    Grade copy = gr;
    for (auto& c : copy.c) c *= v;
    out.g.emplace(g, std::move(copy));
  }
  return out;
}

GradedAsySeries gs_mul(const GradedAsySeries& a, const GradedAsySeries& b,
                       int maxGrade) {
  GradedAsySeries out;
  for (const auto& [ga, gra] : a.g)
    for (const auto& [gb, grb] : b.g) {
      int g = ga + gb;
      if (g > maxGrade) continue;
      Grade prod;
      prod.gamma = gra.gamma + grb.gamma;
      prod.piHalf = gra.piHalf + grb.piHalf;
      prod.trusted = std::min(gra.trusted, grb.trusted);
      prod.c.assign(std::max(prod.trusted, 0), Rat(0));
      for (std::size_t i = 0; i < gra.c.size(); ++i) {
        if (gra.c[i] == 0) continue;
        for (std::size_t j = 0; j < grb.c.size(); ++j) {
          if (i + j >= prod.c.size()) break;
          prod.c[i + j] += gra.c[i] * grb.c[j];
        }
      }
      auto it = out.g.find(g);
      if (it == out.g.end()) {
        insert_grade(out, g, std::move(prod));
      } else {
        Grade sum = add_grades(it->second, prod, false);
        out.g.erase(it);
        insert_grade(out, g, std::move(sum));
      }
    }
  return out;
}

GradedAsySeries gs_mul_spow(const GradedAsySeries& a, const Rat& p) {
  GradedAsySeries out;
  for (const auto& [g, gr] : a.g) {
    Grade copy = gr;
    copy.gamma -= p;
    out.g.emplace(g, std::move(copy));
  }
  return out;
}

GradedAsySeries gs_derivative(const GradedAsySeries& a) {
  GradedAsySeries out;
  for (const auto& [g, gr] : a.g) {
    if (g == 0) {
      if (gr.c.size() != 1 || gr.gamma != 0)
        throw std::invalid_argument("non-constant grade-0 part");
      continue;  // derivative of the constant
    }
    Grade d;
    d.gamma = gr.gamma - rat(1, 2);
    d.piHalf = gr.piHalf;
    d.trusted = gr.trusted;
    d.c.assign(gr.trusted, Rat(0));
    for (int j = 0; j < gr.trusted; ++j) {
      d.c[j] = -Rat(g) * gr.c[j];
      if (j > 0) d.c[j] += gr.c[j - 1] * (-gr.gamma - rat(3 * (j - 1), 2));
    }
    insert_grade(out, g, std::move(d));
  }
  return out;
}

GradedAsySeries gs_integrate(const GradedAsySeries& a) {
  GradedAsySeries out;
  for (const auto& [g, gr] : a.g) {
    if (g == 0)
      throw std::invalid_argument("cannot integrate a grade-0 tail");
    Grade I;
    I.gamma = gr.gamma + rat(1, 2);
    I.piHalf = gr.piHalf;
    I.trusted = gr.trusted;
    I.c.assign(gr.trusted, Rat(0));
    for (int j = 0; j < gr.trusted; ++j) {
      Rat v = gr.c[j];
      if (j > 0) v -= (I.gamma + rat(3 * (j - 1), 2)) * I.c[j - 1];
      I.c[j] = v / Rat(g);
    }
    insert_grade(out, g, std::move(I));
  }
  return out;
}

GradedAsySeries gs_exp(const GradedAsySeries& a, int maxGrade) {
  for (const auto& [g, gr] : a.g)
    if (g == 0) throw std::invalid_argument("exp needs grades >= 1");
  GradedAsySeries out = gs_const(Rat(1));
  GradedAsySeries term = gs_const(Rat(1));
  for (int n = 1; n <= maxGrade; ++n) {
    term = gs_scale(gs_mul(term, a, maxGrade), Rat(1) / Rat(n));
    if (term.g.empty()) break;
    out = gs_add(out, term);
  }
  return out;
}

GradedAsySeries gs_rescale2(const GradedAsySeries& a) {
  GradedAsySeries out;
  for (const auto& [g, gr] : a.g) {
    Rat twice = gr.gamma * rat(2, 3);
    if (twice.get_den() != 1)
      throw std::invalid_argument("rescaling needs integer 2 gamma / 3");
    long e = twice.get_num().get_si();
    Grade copy = gr;
    // s^{-gamma-3j/2} picks up 2^{-2gamma/3-j}
    Rat scale = rat_pow(Rat(2), -e);
    for (auto& c : copy.c) {
      c *= scale;
      scale /= Rat(2);
    }
    out.g.emplace(2 * g, std::move(copy));
  }
  return out;
}

GradedAsySeries q_series(int J) {
  if (J < 0) throw std::invalid_argument("negative truncation");
  Grade gr;
  gr.gamma = rat(1, 4);
  gr.piHalf = 1;
  gr.trusted = J + 1;
  gr.c.assign(J + 1, Rat(0));
  Rat a(1);
  gr.c[0] = rat(1, 2);
  for (int j = 1; j <= J; ++j) {
    // from the grade-1 part of q'' = s q
    Rat e = rat(-1, 4) - rat(3 * (j - 1), 2);  // previous power of s
    a = a * e * (e - 1) / Rat(-3 * j);
    gr.c[j] = a / Rat(2);
  }
  GradedAsySeries out;
  out.g.emplace(1, std::move(gr));
  return out;
}

GradedAsySeries r_series(int J) {
  GradedAsySeries q = q_series(J);
  return gs_integrate(gs_mul(q, q, 2));
}

GradedAsySeries f_beta_series(int beta, int J, int maxGrade) {
  GradedAsySeries q = q_series(J);
  GradedAsySeries Iq = gs_integrate(q);
  GradedAsySeries IR = gs_integrate(r_series(J));
  GradedAsySeries one = gs_const(Rat(1));
  switch (beta) {
    case 1: {
      GradedAsySeries E = gs_exp(gs_scale(Iq, rat(-1, 2)), maxGrade);
      GradedAsySeries H = gs_exp(gs_scale(IR, rat(-1, 2)), maxGrade);
      return gs_sub(one, gs_mul(E, H, maxGrade));
    }
    case 2: {
      GradedAsySeries H = gs_exp(gs_scale(IR, rat(-1, 2)), maxGrade);
      return gs_sub(one, gs_mul(H, H, maxGrade));
    }
    case 4: {
      GradedAsySeries E = gs_exp(gs_scale(Iq, rat(-1, 2)), maxGrade);
      GradedAsySeries Einv = gs_exp(gs_scale(Iq, rat(1, 2)), maxGrade);
      GradedAsySeries H = gs_exp(gs_scale(IR, rat(-1, 2)), maxGrade);
      GradedAsySeries F4 =
          gs_mul(gs_scale(gs_add(E, Einv), rat(1, 2)), H, maxGrade);
      return gs_rescale2(gs_sub(one, F4));
    }
    default:
      throw std::invalid_argument("oracle series exist for beta in {1,2,4}");
  }
}

OracleReport cross_validate(const TailExpansion& te, int beta, int M) {
  if (M > te.order)
    throw std::invalid_argument("tail expansion shorter than requested");
  int lead = beta == 4 ? 4 : beta;
  GradedAsySeries s = f_beta_series(beta, M + 3, lead);
  OracleReport rep;
  // the leading exponential grade must be exactly e^{-beta (2/3) s^{3/2}}
  int minGrade = -1;
  for (const auto& [g, gr] : s.g)
    if (g > 0 && minGrade < 0) minGrade = g;
  rep.rate_ok = (minGrade == lead) && s.has(lead);
  if (!s.has(lead)) return rep;
  const Grade& gd = s.at(lead);
  if (gd.trusted <= M) throw std::logic_error("oracle truncation too short");
  rep.power_ok = (gd.gamma == rat(3 * beta, 4));
  Rat pref;
  int piHalf;
  switch (beta) {  // Gamma(beta/2) / ((4 beta)^{beta/2} 2 pi) made explicit
    case 1:
      pref = rat(1, 4);
      piHalf = 1;
      break;
    case 2:
      pref = rat(1, 16);
      piHalf = 2;
      break;
    case 4:
      pref = rat(1, 512);
      piHalf = 2;
      break;
    default:
      throw std::invalid_argument("beta must be 1, 2 or 4");
  }
  rep.prefactor_ok = (gd.piHalf == piHalf && gd.c[0] == pref);
  Rat X = rat(2, beta);
  for (int j = 1; j <= M; ++j) {
    Rat oracle = gd.c[j] / gd.c[0];
    Rat actual = te.complementExpanded[j - 1].eval(X);
    if (oracle != actual && rep.first_mismatch < 0) rep.first_mismatch = j;
    rep.coeffs.emplace_back(std::move(oracle), std::move(actual));
  }
  return rep;
}

}  // namespace twtail
