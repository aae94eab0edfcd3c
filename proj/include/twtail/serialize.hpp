#ifndef TWTAIL_SERIALIZE_HPP
#define TWTAIL_SERIALIZE_HPP

#include <twtail/correlators.hpp>
#include <twtail/deviation.hpp>

#include <json.hpp>

#include <stdexcept>
#include <string>

namespace twtail {

using Json = nlohmann::ordered_json;

struct CacheCorrupt : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Canonical forms: rationals as "p" or "p/q" strings, X-polynomials as
// [exponent, coefficient] pairs in descending exponent order, rational
// functions as {nz, numerator: [[exponent-vector, xpoly]...],
// denominator: [[factor-id, exponent]...]}.
std::string rat_str(const Rat& r);
Rat rat_from_str(const std::string& s);

Json xpoly_json(const XPoly& p);
XPoly xpoly_from_json(const Json& j);

std::string factor_id(const Factor& f);
Factor factor_from_id(const std::string& s);

Json mpoly_json(const MPoly& p);
MPoly mpoly_from_json(const Json& j, int nz);

Json ratfn_json(const RatFn& f);
RatFn ratfn_from_json(const Json& j);

Json closed_form_json(const ClosedForm& cf);
Json deviation_json(const DeviationExpansion& e);

// Correlator table cache. Loading returns false when the file is absent or
// carries a different format version or a smaller layer bound (callers then
// recompute); a file that exists but does not parse as a valid cache throws
// CacheCorrupt.
bool load_table_cache(CorrTable& table, const std::string& path,
                      int maxLayer);
void save_table_cache(const CorrTable& table, const std::string& path,
                      int maxLayer);

}  // namespace twtail

#endif
