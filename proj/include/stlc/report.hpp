#ifndef STLC_REPORT_HPP
#define STLC_REPORT_HPP

#include <json.hpp>
#include <string>

#include "stlc/obstruction.hpp"

namespace stlc::cli {

inline constexpr const char* kToolName = "stlc-oracle";
inline constexpr const char* kToolVersion = "0.1.0";
inline constexpr const char* kReportSchema = "stlc-oracle/report-v1";

using Json = nlohmann::ordered_json;

// FNV-1a 64 over the raw input bytes, rendered as "fnv1a64:<hex>".
std::string input_digest(const std::string& content);

Json rational_to_json(const Rat& q);
Json vector_to_json(const fields::RatVec& v);

// One check entry of the report; `heuristic` marks the quartic variant.
Json verdict_to_json(const obstruction::ObstructionVerdict& verdict);

}  // namespace stlc::cli

#endif
