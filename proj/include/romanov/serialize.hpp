#pragma once

// JSON and CSV encodings. Big integers are decimal strings and exact
// rationals are {"num": "...", "den": "..."}, so nothing is rounded in JSON.

#include <filesystem>
#include <string>

#include <json.hpp>

#include "romanov/arith.hpp"
#include "romanov/construction.hpp"
#include "romanov/depolignac.hpp"
#include "romanov/sumset.hpp"

namespace romanov {

using json = nlohmann::json;

json to_json(const BigInt& v);
BigInt bigint_from_json(const json& j);

json to_json(const ExactRational& q);
ExactRational rational_from_json(const json& j);

json to_json(const GrowthSchedule& s);
GrowthSchedule schedule_from_json(const json& j);

json to_json(const ChebyshevCheck& c);
json to_json(const WindowCheck& w);

json to_json(const BCountReport& r);
BCountReport bcount_from_json(const json& j);

json to_json(const SumsetReport& r);
SumsetReport sumset_from_json(const json& j);

json to_json(const RatioPoint& r);
RatioPoint ratio_point_from_json(const json& j);

json to_json(const CoveringSystem& s);
CoveringSystem covering_from_json(const json& j);
CoveringSystem load_covering_system(const std::filesystem::path& path);

json to_json(const CoverResult& r);

json to_json(const APCertificate& c);
APCertificate certificate_from_json(const json& j);

json to_json(const ScanReport& r);
ScanReport scan_from_json(const json& j);

// Rows are flat or nested objects; nested keys are joined with '.', exact
// rationals become 15-significant-digit decimals and a trailing "lossy"
// column records whether any value in the row was rounded.
std::string to_csv(const json& rows);

}  // namespace romanov
