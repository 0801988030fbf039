#pragma once

#include <map>
#include <memory>
#include <mutex>
#include <set>
#include <string>
#include <vector>

#include "plainloop/audit/event.hpp"
#include "plainloop/audit/store.hpp"

namespace plainloop::audit {

struct NewEvent {
  std::string item_id;
  EventKind kind = EventKind::Submitted;
  std::string policy_version;
  std::string actor = "system";
  std::string ts;
  nlohmann::json payload = nlohmann::json::object();
  // Retrying an append with the same token returns the original seq.
  std::string idempotency_token;
};

enum class ExportRole { Auditor, Operator, Public };

std::string_view export_role_name(ExportRole role);
ExportRole parse_export_role(std::string_view name);

class AuditLog {
 public:
  // Verifies whatever the store already holds (LogError CorruptLog). The
  // salt seeds text nonces and never appears in the log.
  AuditLog(std::shared_ptr<EventStore> store, std::string salt);

  // Durable before it returns. Throws StorageFailure, leaving the log as
  // it was.
  std::uint64_t append(const NewEvent& event);

  // Text object whose nonce derives from the salt and `scope`; scopes
  // should be unique per stored text (item, field, attempt).
  nlohmann::json text(const std::string& value, const std::string& scope) const;
  std::uint64_t next_seq() const;

  std::vector<AuditEvent> events() const;
  std::vector<AuditEvent> events_for(const std::string& item_id) const;
  std::size_t size() const;
  std::string head_hash() const;

  void set_legal_hold(const std::string& item_id, bool held);
  bool legal_hold(const std::string& item_id) const;

  // Replaces the item's texts with their refs and appends one Redaction
  // event. A second call finds nothing left to redact and returns the seq
  // of the first Redaction. Throws LegalHold.
  std::uint64_t redact(const std::string& item_id, const std::string& actor, const std::string& ts);

  // Events with seq in [first, last], one canonical JSON line each.
  // Throws RangeEmpty.
  std::string export_range(std::uint64_t first, std::uint64_t last, ExportRole role) const;

 private:
  std::shared_ptr<EventStore> store_;
  std::string salt_;
  mutable std::mutex mutex_;
  std::vector<AuditEvent> events_;
  std::map<std::string, std::uint64_t> tokens_;
  std::set<std::string> legal_holds_;
};

// Parses and checks a log: canonical bytes, contiguous seq from 1, chain
// hashes, text refs. Throws LogError(CorruptLog, seq) at the first problem.
std::vector<AuditEvent> verify_lines(const std::vector<std::string>& lines);
std::vector<AuditEvent> verify_text(std::string_view jsonl);

// Role filter applied to one event.
nlohmann::json filter_for_role(const AuditEvent& event, ExportRole role);

}  // namespace plainloop::audit
