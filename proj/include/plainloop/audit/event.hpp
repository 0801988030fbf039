#pragma once

#include <cstdint>
#include <json.hpp>
#include <optional>
#include <string>

namespace plainloop::audit {

enum class EventKind {
  Submitted,
  Snapshot,
  RuleTrace,
  KpiSnapshot,
  Routing,
  ReviewDecision,
  PolicyChange,
  Delivery,
  AdaptationExport,
  Redaction,
};

std::string_view event_kind_name(EventKind kind);
EventKind parse_event_kind(std::string_view name);  // throws InvalidInput

inline constexpr const char* kGenesisHash = "0000000000000000000000000000000000000000000000000000000000000000";

struct AuditEvent {
  std::uint64_t seq = 0;
  std::string item_id;  // empty for log-wide events (PolicyChange)
  EventKind kind = EventKind::Submitted;
  std::string policy_version;
  std::string actor;  // "system" or a reviewer id
  std::string ts;
  nlohmann::json payload = nlohmann::json::object();
  std::string prev_hash;
  std::string hash;

  nlohmann::json to_json() const;
  static AuditEvent from_json(const nlohmann::json& j);
  // The stored line: canonical JSON (sorted keys, no spaces).
  std::string line() const;

  bool operator==(const AuditEvent&) const = default;
};

// Text values inside payloads are stored as objects
//   {"text": ..., "nonce": ..., "ref": sha256(nonce || text)}
// and redacted to {"redacted": true, "ref": ...}. The chain hash covers
// only the ref, so redaction leaves the chain intact.
nlohmann::json make_text(const std::string& text, const std::string& nonce);
bool is_text(const nlohmann::json& j);
bool is_redacted_text(const nlohmann::json& j);
// Raw text of a text object; nullopt when redacted.
std::optional<std::string> text_of(const nlohmann::json& j);
std::string text_ref(const nlohmann::json& j);

// Canonical form hashed into the chain: event without "hash", text objects
// reduced to their ref.
std::string hash_view(const AuditEvent& event);
std::string compute_hash(const AuditEvent& event);

// Replaces every text object in `j` with its redacted form.
nlohmann::json redact_texts(const nlohmann::json& j);

}  // namespace plainloop::audit
