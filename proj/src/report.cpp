#include "kwall/report.hpp"

namespace kwall {

Json make_report(const std::string& command, Json inputs, Json result, long timing_us) {
  Json r;
  r["tool_version"] = kToolVersion;
  r["command"] = command;
  r["inputs"] = std::move(inputs);
  r["result"] = std::move(result);
  r["timing_us"] = timing_us;
  return r;
}

Json make_error_report(const std::string& command, const Error& err) {
  Json r;
  r["tool_version"] = kToolVersion;
  r["command"] = command;
  r["error"] = Json{{"code", error_code_name(err.code())}, {"message", err.what()}};
  return r;
}

}  // namespace kwall
