#include "plainloop/audit/event.hpp"

#include <array>

#include "plainloop/common/error.hpp"
#include "plainloop/common/hash.hpp"

namespace plainloop::audit {

using nlohmann::json;

namespace {

constexpr std::array<std::pair<EventKind, std::string_view>, 10> kKindNames = {{
    {EventKind::Submitted, "Submitted"},
    {EventKind::Snapshot, "Snapshot"},
    {EventKind::RuleTrace, "RuleTrace"},
    {EventKind::KpiSnapshot, "KpiSnapshot"},
    {EventKind::Routing, "Routing"},
    {EventKind::ReviewDecision, "ReviewDecision"},
    {EventKind::PolicyChange, "PolicyChange"},
    {EventKind::Delivery, "Delivery"},
    {EventKind::AdaptationExport, "AdaptationExport"},
    {EventKind::Redaction, "Redaction"},
}};

json hash_form(const json& j) {
  if (is_text(j) || is_redacted_text(j)) return json{{"ref", j.at("ref")}};
  if (j.is_object()) {
    json out = json::object();
    for (const auto& [key, value] : j.items()) out[key] = hash_form(value);
    return out;
  }
  if (j.is_array()) {
    json out = json::array();
    for (const auto& value : j) out.push_back(hash_form(value));
    return out;
  }
  return j;
}

const std::string& string_field(const json& j, const char* key) {
  const auto it = j.find(key);
  if (it == j.end() || !it->is_string()) {
    throw Error(ErrorCode::InvalidInput, std::string("audit event: missing string field ") + key);
  }
  return it->get_ref<const std::string&>();
}

}  // namespace

std::string_view event_kind_name(EventKind kind) {
  for (const auto& [k, name] : kKindNames) {
    if (k == kind) return name;
  }
  return "?";
}

EventKind parse_event_kind(std::string_view name) {
  for (const auto& [kind, n] : kKindNames) {
    if (n == name) return kind;
  }
  throw Error(ErrorCode::InvalidInput, "unknown audit event kind: " + std::string(name));
}

json AuditEvent::to_json() const {
  return json{{"seq", seq},
              {"item_id", item_id},
              {"kind", event_kind_name(kind)},
              {"policy_version", policy_version},
              {"actor", actor},
              {"ts", ts},
              {"payload", payload},
              {"prev_hash", prev_hash},
              {"hash", hash}};
}

AuditEvent AuditEvent::from_json(const json& j) {
  if (!j.is_object()) throw Error(ErrorCode::InvalidInput, "audit event: not an object");
  if (j.size() != 9) throw Error(ErrorCode::InvalidInput, "audit event: unexpected field set");
  AuditEvent event;
  const auto seq = j.find("seq");
  if (seq == j.end() || !seq->is_number_unsigned()) {
    throw Error(ErrorCode::InvalidInput, "audit event: seq must be a positive integer");
  }
  event.seq = seq->get<std::uint64_t>();
  event.item_id = string_field(j, "item_id");
  event.kind = parse_event_kind(string_field(j, "kind"));
  event.policy_version = string_field(j, "policy_version");
  event.actor = string_field(j, "actor");
  event.ts = string_field(j, "ts");
  const auto payload = j.find("payload");
  if (payload == j.end() || !payload->is_object()) {
    throw Error(ErrorCode::InvalidInput, "audit event: payload must be an object");
  }
  event.payload = *payload;
  event.prev_hash = string_field(j, "prev_hash");
  event.hash = string_field(j, "hash");
  return event;
}

std::string AuditEvent::line() const { return to_json().dump(); }

json make_text(const std::string& text, const std::string& nonce) {
  return json{{"text", text}, {"nonce", nonce}, {"ref", sha256_hex(nonce + text)}};
}

bool is_text(const json& j) {
  return j.is_object() && j.size() == 3 && j.contains("text") && j.contains("nonce") &&
         j.contains("ref") && j["text"].is_string() && j["nonce"].is_string() && j["ref"].is_string();
}

bool is_redacted_text(const json& j) {
  return j.is_object() && j.size() == 2 && j.contains("redacted") && j.contains("ref") &&
         j["redacted"] == true && j["ref"].is_string();
}

std::optional<std::string> text_of(const json& j) {
  if (is_text(j)) return j["text"].get<std::string>();
  return std::nullopt;
}

std::string text_ref(const json& j) {
  if (is_text(j) || is_redacted_text(j)) return j["ref"].get<std::string>();
  throw Error(ErrorCode::InvalidInput, "not a text object");
}

std::string hash_view(const AuditEvent& event) {
  auto j = event.to_json();
  j.erase("hash");
  j["payload"] = hash_form(j["payload"]);
  return j.dump();
}

std::string compute_hash(const AuditEvent& event) { return sha256_hex(hash_view(event)); }

json redact_texts(const json& j) {
  if (is_text(j)) return json{{"redacted", true}, {"ref", j["ref"]}};
  if (j.is_object()) {
    json out = json::object();
    for (const auto& [key, value] : j.items()) out[key] = redact_texts(value);
    return out;
  }
  if (j.is_array()) {
    json out = json::array();
    for (const auto& value : j) out.push_back(redact_texts(value));
    return out;
  }
  return j;
}

}  // namespace plainloop::audit
