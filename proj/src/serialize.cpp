#include <twtail/serialize.hpp>

#include <cctype>
#include <fstream>

namespace twtail {

std::string rat_str(const Rat& r) { return r.get_str(); }

Rat rat_from_str(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty rational string");
  for (char c : s)
    if (!(std::isdigit(static_cast<unsigned char>(c)) || c == '-' ||
          c == '/'))
      throw std::invalid_argument("bad rational string: " + s);
  Rat r(s);
  r.canonicalize();
  return r;
}

Json xpoly_json(const XPoly& p) {
  Json out = Json::array();
  auto items = p.items();
  for (auto it = items.rbegin(); it != items.rend(); ++it)
    out.push_back(Json::array({it->first, rat_str(it->second)}));
  return out;
}

XPoly xpoly_from_json(const Json& j) {
  if (!j.is_array()) throw std::invalid_argument("xpoly: expected array");
  XPoly p;
  for (const auto& pair : j) {
    if (!pair.is_array() || pair.size() != 2 ||
        !pair[0].is_number_integer() || !pair[1].is_string())
      throw std::invalid_argument("xpoly: expected [exponent, coeff] pairs");
    p += XPoly::term(rat_from_str(pair[1].get<std::string>()),
                     pair[0].get<int>());
  }
  return p;
}

std::string factor_id(const Factor& f) {
  if (f.kind == FactorKind::ZMA || f.kind == FactorKind::ZMZ)
    throw std::logic_error("internal decomposition factor in serialization");
  return f.label();
}

Factor factor_from_id(const std::string& s) {
  auto zindex = [&](size_t pos, size_t end) {
    int v = 0;
    if (pos >= end) throw std::invalid_argument("bad factor id: " + s);
    for (size_t i = pos; i < end; ++i) {
      if (!std::isdigit(static_cast<unsigned char>(s[i])))
        throw std::invalid_argument("bad factor id: " + s);
      v = 10 * v + (s[i] - '0');
    }
    if (v < 1) throw std::invalid_argument("bad factor id: " + s);
    return v - 1;
  };
  if (s == "a") return Factor::alpha();
  if (s == "a-1") return Factor::am1();
  if (s == "a+1") return Factor::ap1();
  if (s == "a^2+1") return Factor::a2p1();
  if (s.rfind("a*z", 0) == 0 && s.size() > 5 &&
      s.compare(s.size() - 2, 2, "-1") == 0)
    return Factor::azm1(zindex(3, s.size() - 2));
  if (s.rfind("z", 0) == 0) {
    size_t star = s.find('*');
    if (star != std::string::npos) {
      if (s.size() < star + 4 || s[star + 1] != 'z' ||
          s.compare(s.size() - 2, 2, "-1") != 0)
        throw std::invalid_argument("bad factor id: " + s);
      return Factor::zzm1(zindex(1, star), zindex(star + 2, s.size() - 2));
    }
    size_t sign = s.find_first_of("+-");
    if (sign == std::string::npos) return Factor::z(zindex(1, s.size()));
    if (s.compare(sign, std::string::npos, "-1") == 0)
      return Factor::zm1(zindex(1, sign));
    if (s.compare(sign, std::string::npos, "+1") == 0)
      return Factor::zp1(zindex(1, sign));
  }
  throw std::invalid_argument("bad factor id: " + s);
}

Json mpoly_json(const MPoly& p) {
  Json terms = Json::array();
  for (const auto& [m, c] : p.terms()) {
    Json expvec = Json::array();
    for (int v = 0; v <= p.nz(); ++v) expvec.push_back(m[v]);
    terms.push_back(Json::array({expvec, xpoly_json(c)}));
  }
  return terms;
}

MPoly mpoly_from_json(const Json& j, int nz) {
  if (!j.is_array()) throw std::invalid_argument("mpoly: expected array");
  MPoly p(nz);
  for (const auto& term : j) {
    if (!term.is_array() || term.size() != 2 || !term[0].is_array() ||
        static_cast<int>(term[0].size()) != nz + 1)
      throw std::invalid_argument("mpoly: bad term shape");
    Mono m;
    for (int v = 0; v <= nz; ++v) {
      int e = term[0][v].get<int>();
      if (e < 0 || e > 255) throw std::invalid_argument("mpoly: bad exponent");
      m.set(v, e);
    }
    p.add_term(m, xpoly_from_json(term[1]));
  }
  return p;
}

Json ratfn_json(const RatFn& f) {
  Json out;
  out["nz"] = f.nz();
  out["numerator"] = mpoly_json(f.num());
  Json den = Json::array();
  for (const auto& [fac, e] : f.den())
    den.push_back(Json::array({factor_id(fac), e}));
  out["denominator"] = den;
  return out;
}

RatFn ratfn_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("nz") || !j.contains("numerator") ||
      !j.contains("denominator"))
    throw std::invalid_argument("ratfn: bad shape");
  const int nz = j["nz"].get<int>();
  if (nz < 0 || nz > 7) throw std::invalid_argument("ratfn: bad nz");
  MPoly num = mpoly_from_json(j["numerator"], nz);
  FactorMap den;
  for (const auto& pair : j["denominator"]) {
    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_string())
      throw std::invalid_argument("ratfn: bad denominator entry");
    const int e = pair[1].get<int>();
    if (e <= 0) throw std::invalid_argument("ratfn: bad denominator power");
    den[factor_from_id(pair[0].get<std::string>())] += e;
  }
  return RatFn(std::move(num), std::move(den));
}

Json closed_form_json(const ClosedForm& cf) {
  Json out;
  out["rational_part"] = ratfn_json(cf.rationalPart);
  Json logs = Json::array();
  for (const auto& [coeff, arg] : cf.logTerms) {
    Json one;
    one["coeff"] = xpoly_json(coeff);
    one["arg"] = mpoly_json(arg);
    logs.push_back(one);
  }
  out["log_terms"] = logs;
  return out;
}

Json deviation_json(const DeviationExpansion& e) {
  Json out;
  out["order"] = e.order;
  out["order_N"] = closed_form_json(e.orderN);
  out["order_one"] = closed_form_json(e.orderOne);
  Json corr = Json::array();
  for (size_t m = 0; m < e.corrections.size(); ++m) {
    Json one;
    one["m"] = m + 1;
    one["bernoulli_term"] = xpoly_json(e.corrections[m].first);
    one["integral_term"] = ratfn_json(e.corrections[m].second);
    corr.push_back(one);
  }
  out["corrections"] = corr;
  return out;
}

namespace {

constexpr const char* kCacheFormat = "twtail-correlators-1";

}  // namespace

bool load_table_cache(CorrTable& table, const std::string& path,
                      int maxLayer) {
  std::ifstream in(path);
  if (!in) return false;
  Json j;
  try {
    in >> j;
    if (!j.is_object() || !j.contains("format") || !j.contains("max_layer") ||
        !j.contains("entries"))
      throw std::invalid_argument("missing cache fields");
    if (j["format"].get<std::string>() != kCacheFormat) return false;
    if (j["max_layer"].get<int>() < maxLayer) return false;
    CorrTable fresh;
    for (const auto& entry : j["entries"]) {
      const int n = entry.at("n").get<int>();
      const int k = entry.at("k").get<int>();
      if (n < 1 || k < 0) throw std::invalid_argument("bad cache key");
      fresh.insert(n, k, ratfn_from_json(entry.at("fn")));
    }
    table = std::move(fresh);
  } catch (const std::exception& e) {
    throw CacheCorrupt(std::string("corrupt correlator cache at ") + path +
                       ": " + e.what());
  }
  return true;
}

void save_table_cache(const CorrTable& table, const std::string& path,
                      int maxLayer) {
  Json j;
  j["format"] = kCacheFormat;
  j["max_layer"] = maxLayer;
  Json entries = Json::array();
  for (const auto& [nk, fn] : table.entries()) {
    Json one;
    one["n"] = nk.first;
    one["k"] = nk.second;
    one["fn"] = ratfn_json(fn);
    entries.push_back(one);
  }
  j["entries"] = entries;
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write cache file " + path);
  out << j.dump();
}

}  // namespace twtail
