#include "plainloop/audit/log.hpp"
#include "plainloop/common/error.hpp"

namespace plainloop::audit {

using nlohmann::json;

namespace {

json strip_public(const json& j) {
  if (is_text(j)) return redact_texts(j);
  if (j.is_object()) {
    json out = json::object();
    for (const auto& [key, value] : j.items()) {
      if (key == "reviewer_id") continue;
      out[key] = strip_public(value);
    }
    return out;
  }
  if (j.is_array()) {
    json out = json::array();
    for (const auto& value : j) out.push_back(strip_public(value));
    return out;
  }
  return j;
}

json strip_nonces(const json& j) {
  if (is_text(j)) return json{{"text", j["text"]}, {"ref", j["ref"]}};
  if (j.is_object()) {
    json out = json::object();
    for (const auto& [key, value] : j.items()) out[key] = strip_nonces(value);
    return out;
  }
  if (j.is_array()) {
    json out = json::array();
    for (const auto& value : j) out.push_back(strip_nonces(value));
    return out;
  }
  return j;
}

}  // namespace

std::string_view export_role_name(ExportRole role) {
  switch (role) {
    case ExportRole::Auditor: return "auditor";
    case ExportRole::Operator: return "operator";
    case ExportRole::Public: return "public";
  }
  return "?";
}

ExportRole parse_export_role(std::string_view name) {
  if (name == "auditor") return ExportRole::Auditor;
  if (name == "operator") return ExportRole::Operator;
  if (name == "public") return ExportRole::Public;
  throw Error(ErrorCode::InvalidArgument, "unknown export role: " + std::string(name));
}

json filter_for_role(const AuditEvent& event, ExportRole role) {
  auto j = event.to_json();
  switch (role) {
    case ExportRole::Auditor:
      break;
    case ExportRole::Operator:
      j["payload"] = strip_nonces(j["payload"]);
      break;
    case ExportRole::Public:
      if (event.actor != "system") j["actor"] = "reviewer";
      j["payload"] = strip_public(j["payload"]);
      break;
  }
  return j;
}

std::string AuditLog::export_range(std::uint64_t first, std::uint64_t last, ExportRole role) const {
  std::lock_guard lock(mutex_);
  std::string out;
  for (const auto& event : events_) {
    if (event.seq < first || event.seq > last) continue;
    out += filter_for_role(event, role).dump();
    out += '\n';
  }
  if (out.empty()) {
    throw Error(ErrorCode::RangeEmpty,
                "no events in [" + std::to_string(first) + ", " + std::to_string(last) + "]");
  }
  return out;
}

}  // namespace plainloop::audit
