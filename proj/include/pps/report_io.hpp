#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "pps/bounds.hpp"
#include "pps/charclass.hpp"
#include "pps/nonsingular.hpp"
#include "pps/planner.hpp"

namespace pps {

using Json = nlohmann::json;  // std::map backed: keys come out sorted

Json to_json(const SphereTuple& tuple);
Json to_json(const Interval& interval);
Json to_json(const BoundItem& item);
Json to_json(const BoundReport& report);
Json to_json(const ImmersionReport& report);
Json to_json(const VerificationReport& report);
Json to_json(const NonsingularResult& result);
Json to_json(const Vec& v);
/// Path sampled at `points` equally spaced times.
Json path_json(const Path& path, int points);

/// Canonical text: sorted keys, two-space indent, trailing newline.
std::string dump(const Json& j);

inline constexpr const char* kBoundsCsvVersion = "# pps-bounds-csv v1";
std::vector<std::string> bounds_csv_columns();
/// Version line plus the column header.
std::string bounds_csv_header();
/// One row; empty cells mark bounds that do not apply.
std::string bounds_csv_row(const BoundReport& report, const OverrideConfig& config = {});

std::string to_text(const BoundReport& report);
std::string to_text(const ImmersionReport& report);
std::string to_text(const VerificationReport& report);
std::string to_text(const NonsingularResult& result);

}  // namespace pps
