#include <twtail/deviation.hpp>
#include <twtail/mc.hpp>
#include <twtail/painleve.hpp>
#include <twtail/scaling.hpp>
#include <twtail/serialize.hpp>
#include <twtail/tail.hpp>
#include <twtail/verify.hpp>

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <string>

using namespace twtail;

namespace {

struct Options {
  std::string format = "text";
  std::string beta = "sym";
  std::string t = "1";
  std::string cache;
  int threads = 1;
};

bool json_mode(const Options& o) { return o.format == "json"; }

Rat parse_rat(const std::string& s, const char* what) {
  try {
    return rat_from_str(s);
  } catch (const std::exception&) {
    throw std::invalid_argument(std::string("cannot parse ") + what + ": " +
                                s);
  }
}

long double parse_ld(const std::string& s, const char* what) {
  try {
    std::size_t pos = 0;
    long double v = std::stold(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw std::invalid_argument(std::string("cannot parse ") + what + ": " +
                                s);
  }
}

std::string ld_str(long double v) {
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%.20Lg", v);
  return buf;
}

std::string cache_path(const Options& o) {
  if (!o.cache.empty()) return o.cache;
  if (const char* dir = std::getenv("TWTAIL_CACHE_DIR"))
    return std::string(dir) + "/correlators.json";
  return {};
}

// Loads the correlator cache if one is configured; after computing, the
// caller saves through table_done.
struct TableCache {
  CorrTable table;
  std::string path;
  bool loaded = false;

  explicit TableCache(const Options& o, int neededLayer) : path(cache_path(o)) {
    if (!path.empty()) loaded = load_table_cache(table, path, neededLayer);
    layer = neededLayer;
  }
  void done() {
    if (!path.empty() && !loaded) save_table_cache(table, path, layer);
  }
  int layer = 0;
};

std::string xpoly_str(const XPoly& p) {
  if (p.is_zero()) return "0";
  std::string out;
  auto items = p.items();
  for (auto it = items.rbegin(); it != items.rend(); ++it) {
    const auto& [e, c] = *it;
    std::string cs = rat_str(c < 0 ? Rat(-c) : c);
    if (out.empty())
      out += c < 0 ? "-" : "";
    else
      out += c < 0 ? " - " : " + ";
    bool unit = cs == "1" && e != 0;
    if (!unit) out += cs;
    if (e != 0) {
      if (!unit) out += " ";
      out += "X";
      if (e != 1) out += "^" + std::to_string(e);
    }
  }
  return out;
}

std::string mono_str(const Mono& m, int nz) {
  std::string out;
  for (int v = 0; v <= nz; ++v) {
    if (m[v] == 0) continue;
    if (!out.empty()) out += " ";
    out += v < nz ? "z" + std::to_string(v + 1) : "a";
    if (m[v] > 1) out += "^" + std::to_string(m[v]);
  }
  return out;
}

std::string ratfn_str(const RatFn& f) {
  if (f.is_zero()) return "0";
  std::string num;
  for (const auto& [m, c] : f.num().terms()) {
    if (!num.empty()) num += " + ";
    std::string ms = mono_str(m, f.nz());
    num += "(" + xpoly_str(c) + ")";
    if (!ms.empty()) num += " " + ms;
  }
  if (f.den().empty()) return num;
  std::string den;
  for (const auto& [fac, e] : f.den()) {
    if (!den.empty()) den += " ";
    den += "(" + fac.label() + ")";
    if (e > 1) den += "^" + std::to_string(e);
  }
  return "[" + num + "] / [" + den + "]";
}

void emit(const Options& o, const Json& j, const std::string& text) {
  if (json_mode(o))
    std::cout << j.dump() << "\n";
  else
    std::cout << text;
}

// beta handling: "sym" keeps XPoly coefficients, otherwise substitute
// X = 2/beta exactly.
bool beta_is_sym(const Options& o) { return o.beta == "sym"; }

Rat beta_x(const Options& o) {
  Rat b = parse_rat(o.beta, "beta");
  if (b <= 0) throw std::invalid_argument("beta must be positive");
  return Rat(2) / b;
}

Json coeff_json(const Options& o, const XPoly& c) {
  if (beta_is_sym(o)) return xpoly_json(c);
  return rat_str(c.eval(beta_x(o)));
}

int run_correlator(const Options& o, int n, int k) {
  TableCache tc(o, n + k);
  RatFn f = tc.table.get(n, k);
  tc.done();
  if (!beta_is_sym(o)) f = f.substitute_x(beta_x(o));
  Json j;
  j["n"] = n;
  j["k"] = k;
  j["fn"] = ratfn_json(f);
  emit(o, j,
       "omega(" + std::to_string(n) + "," + std::to_string(k) + ") = " +
           ratfn_str(f) + "\n");
  return 0;
}

int run_deviation(const Options& o, int order, long long N,
                  const std::string& a) {
  TableCache tc(o, order + 2);
  DeviationExpansion e = assemble_deviation(order, tc.table);
  tc.done();
  Json j = deviation_json(e);
  std::string text = "large-deviation expansion through order N^-" +
                     std::to_string(order) + "\n";
  for (size_t m = 1; m <= e.corrections.size(); ++m)
    text += "  correction " + std::to_string(m) + ": (" +
            xpoly_str(e.corrections[m - 1].first) + ") + " +
            ratfn_str(e.corrections[m - 1].second) + "\n";
  if (N > 0 && !a.empty()) {
    DensityValue v =
        eval_density(N, 2.0L / static_cast<long double>(rat_ld(beta_x(o))),
                     parse_ld(o.t, "t"), parse_ld(a, "a"), order, e);
    j["value"] = ld_str(v.value);
    j["last_term"] = ld_str(v.last_term);
    text += "density value " + ld_str(v.value) + " (last term " +
            ld_str(v.last_term) + ")\n";
  }
  emit(o, j, text);
  return 0;
}

TailExpansion build_tail(CorrTable& table, int order) {
  std::vector<BreveEntry> entries;
  for (int m = 1; m <= order; ++m) entries.push_back(breve_extract(m, table));
  return assemble_tail(order, entries);
}

int run_tail(const Options& o, int order) {
  TableCache tc(o, order + 2);
  TailExpansion te = build_tail(tc.table, order);
  tc.done();
  Json j;
  j["order"] = order;
  Json ent = Json::array();
  for (const auto& b : te.entries)
    ent.push_back(Json{{"m", b.m}, {"p", b.p}, {"poly", xpoly_json(b.poly)}});
  j["entries"] = ent;
  auto coeff_list = [&](const std::vector<XPoly>& v) {
    Json out = Json::array();
    for (size_t m = 1; m <= v.size(); ++m)
      out.push_back(Json::array(
          {Json::array({"m", m}), Json::array({"coeff", coeff_json(o, v[m - 1])})}));
    return out;
  };
  j["exponent_terms"] = coeff_list(te.complementExponent);
  j["expanded_terms"] = coeff_list(te.complementExpanded);
  j["density_expanded_terms"] = coeff_list(te.densityExpanded);
  std::string text = "right-tail expansion through s^(-3*" +
                     std::to_string(order) + "/2)\n";
  for (size_t m = 1; m <= te.complementExpanded.size(); ++m) {
    text += "  m=" + std::to_string(m) + " coeff ";
    if (beta_is_sym(o))
      text += xpoly_str(te.complementExpanded[m - 1]);
    else
      text += rat_str(te.complementExpanded[m - 1].eval(beta_x(o)));
    text += "\n";
  }
  emit(o, j, text);
  return 0;
}

int run_breve(const Options& o, int maxM) {
  TableCache tc(o, maxM + 2);
  std::string text;
  std::string jsonl;
  for (int m = 1; m <= maxM; ++m) {
    BreveEntry b = breve_extract(m, tc.table);
    Json j;
    j["m"] = b.m;
    j["p"] = b.p;
    j["poly"] = xpoly_json(b.poly);
    jsonl += j.dump() + "\n";
    text += "m=" + std::to_string(b.m) + " p=" + std::to_string(b.p) +
            " poly=" + xpoly_str(b.poly) + "\n";
  }
  tc.done();
  std::cout << (json_mode(o) ? jsonl : text);
  return 0;
}

int run_eval_tail(const Options& o, const std::string& s, int order,
                  const std::string& kind) {
  if (beta_is_sym(o))
    throw std::invalid_argument("eval-tail needs a numeric --beta");
  TableCache tc(o, order + 2);
  TailExpansion te = build_tail(tc.table, order);
  tc.done();
  TailKind k = kind == "density" ? TailKind::density : TailKind::complement;
  long double beta = rat_ld(parse_rat(o.beta, "beta"));
  TailValue v = eval_tail(parse_ld(s, "s"), beta, order, te, k);
  Json j;
  j["value"] = ld_str(v.value);
  j["last_term"] = ld_str(v.last_term);
  emit(o, j,
       "value " + ld_str(v.value) + " (last term " + ld_str(v.last_term) +
           ")\n");
  return 0;
}

int run_eval_deviation(const Options& o, long long N, const std::string& a,
                       int order) {
  if (beta_is_sym(o))
    throw std::invalid_argument("eval-deviation needs a numeric --beta");
  TableCache tc(o, order + 2);
  DeviationExpansion e = assemble_deviation(order, tc.table);
  tc.done();
  long double beta = rat_ld(parse_rat(o.beta, "beta"));
  DensityValue v = eval_density(N, beta, parse_ld(o.t, "t"),
                                parse_ld(a, "a"), order, e);
  Json j;
  j["value"] = ld_str(v.value);
  j["last_term"] = ld_str(v.last_term);
  emit(o, j,
       "value " + ld_str(v.value) + " (last term " + ld_str(v.last_term) +
           ")\n");
  return 0;
}

int run_verify(const Options& o, const std::string& suite, int order) {
  TableCache tc(o, order + 2);
  std::vector<VerifyItem> items;
  if (suite == "paper")
    items = verify_paper(tc.table, order);
  else if (suite == "painleve")
    items = verify_painleve(tc.table, order);
  else
    items = verify_scaling(tc.table, order);
  tc.done();
  Json j;
  j["suite"] = suite;
  Json ji = Json::array();
  std::string text;
  for (const auto& it : items) {
    ji.push_back(Json{{"name", it.name}, {"pass", it.pass}});
    text += it.name + ": " + (it.pass ? "ok" : "FAIL") + "\n";
  }
  j["items"] = ji;
  j["ok"] = all_pass(items);
  emit(o, j, text);
  return all_pass(items) ? 0 : 2;
}

int run_mc_sample(const Options& o, long long N, const std::string& a,
                  long long samples, uint64_t seed, const std::string& csv) {
  if (beta_is_sym(o))
    throw std::invalid_argument("mc needs a numeric --beta");
  double beta = rat_ld(parse_rat(o.beta, "beta"));
  double t = static_cast<double>(parse_ld(o.t, "t"));
  double av = static_cast<double>(parse_ld(a, "a"));
  TailEstimate est;
  if (csv.empty()) {
    est = estimate_tail(N, beta, t, av, samples, seed, o.threads);
  } else {
    std::ofstream out(csv);
    if (!out) throw std::invalid_argument("cannot write " + csv);
    long long hits = 0;
    for (long long i = 0; i < samples; ++i) {
      Rng rng = Rng::sub(seed, static_cast<uint64_t>(i));
      TridiagMatrix m = sample_tridiag(N, beta, t, rng);
      double lm = lambda_max(m, 1e-10);
      out << ld_str(lm) << "\n";
      if (sturm_count(m, av) < N) ++hits;
    }
    est.pHat = static_cast<double>(hits) / static_cast<double>(samples);
    est.stdErr = std::sqrt(est.pHat * (1 - est.pHat) /
                           static_cast<double>(samples));
    est.nSamples = samples;
    est.seed = seed;
  }
  Json j;
  j["p_hat"] = est.pHat;
  j["stderr"] = est.stdErr;
  j["n_samples"] = est.nSamples;
  j["seed"] = est.seed;
  emit(o, j,
       "p_hat " + ld_str(est.pHat) + " stderr " + ld_str(est.stdErr) +
           " n_samples " + std::to_string(est.nSamples) + " seed " +
           std::to_string(est.seed) + "\n");
  return 0;
}

int run_mc_compare(const Options& o, long long N, const std::string& a,
                   long long samples, int order, uint64_t seed) {
  if (beta_is_sym(o))
    throw std::invalid_argument("mc needs a numeric --beta");
  TableCache tc(o, order + 2);
  DeviationExpansion e = assemble_deviation(order, tc.table);
  tc.done();
  double beta = rat_ld(parse_rat(o.beta, "beta"));
  double t = static_cast<double>(parse_ld(o.t, "t"));
  DeviationComparison c =
      compare_deviation(N, beta, t, static_cast<double>(parse_ld(a, "a")),
                        samples, order, seed, e, o.threads);
  Json j;
  j["p_hat"] = c.estimate.pHat;
  j["stderr"] = c.estimate.stdErr;
  j["n_samples"] = c.estimate.nSamples;
  j["seed"] = c.estimate.seed;
  j["predicted"] = c.predicted;
  j["ratio"] = c.ratio;
  j["uncertainty"] = c.uncertainty;
  emit(o, j,
       "p_hat " + ld_str(c.estimate.pHat) + " predicted " +
           ld_str(c.predicted) + " ratio " + ld_str(c.ratio) +
           " uncertainty " + ld_str(c.uncertainty) + "\n");
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  Options o;
  CLI::App app{"Gaussian beta-ensemble right-tail toolkit"};
  app.require_subcommand(1);

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--format", o.format, "output format")
        ->check(CLI::IsMember({"text", "json"}));
    sub->add_option("--beta", o.beta, "beta: 'sym' or a rational");
    sub->add_option("--t", o.t, "potential scale t (rational)");
    sub->add_option("--cache", o.cache, "correlator cache file");
    sub->add_option("--threads", o.threads, "worker thread cap")
        ->check(CLI::PositiveNumber);
  };

  int n = 1, k = 0, order = 1, maxM = 1;
  long long N = 0, samples = 100000;
  std::string a, s = "1", kind = "complement", suite, csv;
  uint64_t seed = 0;

  CLI::App* c_corr = app.add_subcommand("correlator", "one correlator");
  c_corr->add_option("--n", n, "number of points")->required()
      ->check(CLI::Range(1, 7));
  c_corr->add_option("--k", k, "expansion order")->required()
      ->check(CLI::Range(0, 8));
  add_common(c_corr);

  CLI::App* c_dev = app.add_subcommand("deviation", "deviation expansion");
  c_dev->add_option("--order", order)->required()->check(CLI::Range(1, 6));
  c_dev->add_option("--N", N);
  c_dev->add_option("--a", a);
  add_common(c_dev);

  CLI::App* c_tail = app.add_subcommand("tail", "right-tail expansion");
  c_tail->add_option("--order", order)->required()->check(CLI::Range(1, 6));
  add_common(c_tail);

  CLI::App* c_breve = app.add_subcommand("breve", "edge polynomials");
  c_breve->add_option("--max-m", maxM)->required()->check(CLI::Range(1, 6));
  add_common(c_breve);

  CLI::App* c_et = app.add_subcommand("eval-tail", "numeric tail value");
  c_et->add_option("--s", s)->required();
  c_et->add_option("--order", order)->required()->check(CLI::Range(0, 6));
  c_et->add_option("--kind", kind)
      ->check(CLI::IsMember({"complement", "density"}));
  add_common(c_et);

  CLI::App* c_ed = app.add_subcommand("eval-deviation", "numeric density");
  c_ed->add_option("--N", N)->required();
  c_ed->add_option("--a", a)->required();
  c_ed->add_option("--order", order)->required()->check(CLI::Range(0, 6));
  add_common(c_ed);

  CLI::App* c_ver = app.add_subcommand("verify", "verification suites");
  c_ver->add_option("--suite", suite)->required()
      ->check(CLI::IsMember({"paper", "painleve", "scaling"}));
  c_ver->add_option("--order", order)->check(CLI::Range(1, 6));
  add_common(c_ver);

  CLI::App* c_mc = app.add_subcommand("mc", "Monte Carlo");
  c_mc->require_subcommand(1);
  CLI::App* c_mcs = c_mc->add_subcommand("sample", "tail estimate");
  c_mcs->add_option("--N", N)->required()->check(CLI::PositiveNumber);
  c_mcs->add_option("--a", a)->required();
  c_mcs->add_option("--samples", samples)->check(CLI::PositiveNumber);
  c_mcs->add_option("--seed", seed);
  c_mcs->add_option("--dump-csv", csv, "write sampled maxima to a CSV file");
  add_common(c_mcs);
  CLI::App* c_mcc = c_mc->add_subcommand("compare", "against the expansion");
  c_mcc->add_option("--N", N)->required()->check(CLI::PositiveNumber);
  c_mcc->add_option("--a", a)->required();
  c_mcc->add_option("--samples", samples)->check(CLI::PositiveNumber);
  c_mcc->add_option("--order", order)->required()->check(CLI::Range(0, 6));
  c_mcc->add_option("--seed", seed);
  add_common(c_mcc);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) return app.exit(e);  // --help
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }

  auto fail = [&](const std::string& msg, int code) {
    if (json_mode(o))
      std::cerr << Json{{"error", msg}}.dump() << "\n";
    else
      std::cerr << "error: " << msg << "\n";
    return code;
  };

  try {
    if (c_corr->parsed()) return run_correlator(o, n, k);
    if (c_dev->parsed()) return run_deviation(o, order, N, a);
    if (c_tail->parsed()) return run_tail(o, order);
    if (c_breve->parsed()) return run_breve(o, maxM);
    if (c_et->parsed()) return run_eval_tail(o, s, order, kind);
    if (c_ed->parsed()) return run_eval_deviation(o, N, a, order);
    if (c_ver->parsed()) return run_verify(o, suite, order);
    if (c_mcs->parsed()) return run_mc_sample(o, N, a, samples, seed, csv);
    if (c_mcc->parsed()) return run_mc_compare(o, N, a, samples, order, seed);
    return fail("no subcommand", 1);
  } catch (const OutsideRegime& e) {
    return fail(e.what(), 3);
  } catch (const Divergent& e) {
    return fail(e.what(), 3);
  } catch (const RegimeTooRare& e) {
    return fail(e.what(), 3);
  } catch (const NonPositiveS& e) {
    return fail(e.what(), 3);
  } catch (const WrongPoleOrder& e) {
    return fail(e.what(), 3);
  } catch (const NonDyadicDenominator& e) {
    return fail(e.what(), 3);
  } catch (const CacheCorrupt& e) {
    return fail(e.what(), 3);
  } catch (const std::domain_error& e) {
    return fail(e.what(), 3);
  } catch (const std::invalid_argument& e) {
    return fail(e.what(), 1);
  } catch (const std::exception& e) {
    return fail(e.what(), 3);
  }
}
