#pragma once

#include <string>

#include <json.hpp>

#include "lgpoly/grouppoly.hpp"
#include "lgpoly/hasse.hpp"
#include "lgpoly/sunits.hpp"

namespace lgpoly {

using ordered_json = nlohmann::ordered_json;

inline constexpr const char* kSchemaVersion = "1";

// Stable report serialization: field names follow the type definitions,
// integers are decimal strings, prime lists ascend. Identical inputs produce
// byte-identical documents regardless of worker count.
ordered_json to_json(const IntPoly& f);
ordered_json to_json(const LocalScanReport& r);
ordered_json to_json(const HasseVerdict& v);
ordered_json to_json(const AllModuliVerdict& v);
ordered_json to_json(const GroupPoly& F);
ordered_json to_json(const GroupHasseReport& r);
ordered_json to_json(const MembershipReport& r);
ordered_json to_json(const DensityReport& r);

std::string rational_string(const mpq_class& q);

// {"support": [...], "coeffs": ["rational", ...]}, coefficient index = power
// of n. Support entries and coefficients may be JSON numbers or strings.
GroupPoly group_poly_from_json(const ordered_json& j);
Support support_from_json(const ordered_json& j);

}  // namespace lgpoly
