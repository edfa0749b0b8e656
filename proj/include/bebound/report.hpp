#pragma once

#include <string>

#include "json.hpp"

#include "bebound/bounds.hpp"
#include "bebound/filters.hpp"
#include "bebound/oracle.hpp"

namespace bebound {

std::string to_string(BoundKind kind);
BoundKind bound_kind_from_string(const std::string& s);

/// Stable snake_case JSON forms. Doubles are written in shortest round-trip
/// decimal, so parse(dump(j)) reproduces every value bit for bit.
nlohmann::json to_json(const BoundReport& r);
BoundReport bound_report_from_json(const nlohmann::json& j);

nlohmann::json to_json(const DeltaProfile& p);
/// Columns z, delta, normalized, r_L; one row per grid point.
std::string to_csv(const DeltaProfile& p);

nlohmann::json to_json(const FilterConstant& c);
nlohmann::json to_json(const FixCorrection& c);
nlohmann::json to_json(const ERatBounds& b);
nlohmann::json to_json(const NagaevResult& r);

/// Shortest decimal that parses back to the same double.
std::string format_double(double v);

}  // namespace bebound
