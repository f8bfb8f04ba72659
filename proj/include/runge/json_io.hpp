#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "runge/bounds.hpp"
#include "runge/congruence.hpp"
#include "runge/qexp.hpp"
#include "runge/siegel_search.hpp"

namespace runge {

using Json = nlohmann::ordered_json;

// {"N": int, "generators": [[a, b, c, d], ...], "name": optional}
struct GroupInput {
  int N = 0;
  std::vector<Mat2> generators;
  std::string name;
};
GroupInput parse_group(const Json& j);
GroupInput read_group_file(const std::string& path);
Json read_json_file(const std::string& path);

Json mat_to_json(const Mat2& A);
Mat2 mat_from_json(const Json& j, int N);

// Rational coordinates in the power basis, as strings "p" or "p/q".
Json cycnum_to_json(const CycNum& x);
CycNum cycnum_from_json(int N, const Json& j);

// Exact round trip, including the precision marker.
Json qexp_to_json(const QExp& f);
QExp qexp_from_json(const Json& j);

Json form_to_json(const ModFormExpr& f);
ModFormExpr form_from_json(const Json& j);

// {"lo": rounded down, "hi": rounded up}
Json interval_to_json(const Interval& x);
Json checks_to_json(const CheckList& c);
Json curve_to_json(const CurveData& c);
Json orbits_to_json(const CuspOrbits& o);
Json bound_report_to_json(const BoundReport& r);
Json basis_to_json(const FormEngine& E, const IntegralBasis& B, const CurveData& curve, long prec);

Json certificate_to_json(const PhiCertificate& c);
PhiCertificate certificate_from_json(const Json& j);

uint64_t fnv1a(std::string_view s);
// 16 hex digits of FNV-1a over the compact dump of the configuration.
std::string config_hash(const Json& config);

// Adds version, config hash and seed under "meta".
void stamp(Json& doc, const Json& config, uint64_t seed);

// Write to path.tmp, then rename over path.
void write_atomic(const std::string& path, const std::string& content);

}  // namespace runge
