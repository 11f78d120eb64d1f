#pragma once

#include <string>

#include <json.hpp>

#include "kwall/error.hpp"
#include "kwall/rational.hpp"

namespace kwall {

inline constexpr const char* kToolVersion = "0.1.0";

// Reports keep a fixed field order and carry rationals as "p/q" strings;
// floats never appear in external output.
using Json = nlohmann::ordered_json;

Json make_report(const std::string& command, Json inputs, Json result, long timing_us);
Json make_error_report(const std::string& command, const Error& err);

inline Json json_rat(const Rat& q) { return Json(rat_to_string(q)); }

}  // namespace kwall
