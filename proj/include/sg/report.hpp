#pragma once
// Report plumbing shared by the CLI: tool version, input digests, and JSON
// section builders. Exact rationals serialize as "p/q" strings; floating
// values carry a _float suffix.
#include <string>

#include "json.hpp"
#include "sg/boundary.hpp"
#include "sg/rational.hpp"
#include "sg/sofic.hpp"

namespace sg {

const char* tool_version();

// FNV-1a 64-bit digest of the input bytes, as 16 hex digits.
std::string input_digest(const std::string& bytes);

// Report skeleton: tool name/version, command, input digest, budget values.
nlohmann::json report_header(const std::string& command, const std::string& digest,
                             long long vertex_budget);

nlohmann::json ratio_section(const RatioSequence& seq);
nlohmann::json delta_section(const DeltaEstimate& est);
nlohmann::json cogrowth_section(const CogrowthSeries& series);
nlohmann::json census_section(const LocalStatistics& stats);
nlohmann::json walk_section(const WalkStats& stats);
nlohmann::json stitch_section(const StitchReport& report);
nlohmann::json bound_section(const GrowthBoundParams& params, const GrowthBound& bound);

// dump(2) plus trailing newline: the byte-exact report format.
std::string report_text(const nlohmann::json& report);

}  // namespace sg
