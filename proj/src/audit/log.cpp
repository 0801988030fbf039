#include "plainloop/audit/log.hpp"

#include <algorithm>

#include "plainloop/common/error.hpp"
#include "plainloop/common/hash.hpp"

namespace plainloop::audit {

using nlohmann::json;

namespace {

constexpr const char* kTokenField = "idempotency_token";

bool has_raw_text(const json& j) {
  if (is_text(j)) return true;
  if (j.is_object() || j.is_array()) {
    for (const auto& value : j) {
      if (has_raw_text(value)) return true;
    }
  }
  return false;
}

}  // namespace

AuditLog::AuditLog(std::shared_ptr<EventStore> store, std::string salt)
    : store_(std::move(store)), salt_(std::move(salt)) {
  if (!store_) throw Error(ErrorCode::InvalidArgument, "audit log needs a store");
  events_ = verify_lines(store_->lines());
  for (const auto& event : events_) {
    const auto it = event.payload.find(kTokenField);
    if (it != event.payload.end() && it->is_string()) tokens_[it->get<std::string>()] = event.seq;
  }
}

std::uint64_t AuditLog::append(const NewEvent& in) {
  std::lock_guard lock(mutex_);
  if (!in.idempotency_token.empty()) {
    const auto it = tokens_.find(in.idempotency_token);
    if (it != tokens_.end()) return it->second;
  }
  if (!in.payload.is_object()) throw Error(ErrorCode::InvalidArgument, "audit payload must be an object");
  AuditEvent event;
  event.seq = events_.size() + 1;
  event.item_id = in.item_id;
  event.kind = in.kind;
  event.policy_version = in.policy_version;
  event.actor = in.actor;
  event.ts = in.ts;
  event.payload = in.payload;
  if (!in.idempotency_token.empty()) event.payload[kTokenField] = in.idempotency_token;
  event.prev_hash = events_.empty() ? std::string(kGenesisHash) : events_.back().hash;
  event.hash = compute_hash(event);
  std::string line;
  try {
    line = event.line();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidInput, std::string("audit payload not serialisable: ") + e.what());
  }
  store_->append(line);  // StorageFailure propagates; nothing below has run
  events_.push_back(std::move(event));
  if (!in.idempotency_token.empty()) tokens_[in.idempotency_token] = events_.back().seq;
  return events_.back().seq;
}

json AuditLog::text(const std::string& value, const std::string& scope) const {
  const auto nonce = sha256_hex(salt_ + ":" + scope).substr(0, 32);
  return make_text(value, nonce);
}

std::uint64_t AuditLog::next_seq() const {
  std::lock_guard lock(mutex_);
  return events_.size() + 1;
}

std::vector<AuditEvent> AuditLog::events() const {
  std::lock_guard lock(mutex_);
  return events_;
}

std::vector<AuditEvent> AuditLog::events_for(const std::string& item_id) const {
  std::lock_guard lock(mutex_);
  std::vector<AuditEvent> out;
  for (const auto& event : events_) {
    if (event.item_id == item_id) out.push_back(event);
  }
  return out;
}

std::size_t AuditLog::size() const {
  std::lock_guard lock(mutex_);
  return events_.size();
}

std::string AuditLog::head_hash() const {
  std::lock_guard lock(mutex_);
  return events_.empty() ? std::string(kGenesisHash) : events_.back().hash;
}

void AuditLog::set_legal_hold(const std::string& item_id, bool held) {
  std::lock_guard lock(mutex_);
  if (held) {
    legal_holds_.insert(item_id);
  } else {
    legal_holds_.erase(item_id);
  }
}

bool AuditLog::legal_hold(const std::string& item_id) const {
  std::lock_guard lock(mutex_);
  return legal_holds_.count(item_id) != 0;
}

std::uint64_t AuditLog::redact(const std::string& item_id, const std::string& actor,
                               const std::string& ts) {
  std::lock_guard lock(mutex_);
  if (legal_holds_.count(item_id)) {
    throw Error(ErrorCode::LegalHold, "item " + item_id + " is under legal hold");
  }
  bool known = false;
  std::uint64_t previous = 0;
  json redacted_seqs = json::array();
  for (const auto& event : events_) {
    if (event.item_id != item_id) continue;
    known = true;
    if (event.kind == EventKind::Redaction) previous = event.seq;
    if (has_raw_text(event.payload)) redacted_seqs.push_back(event.seq);
  }
  if (!known) throw Error(ErrorCode::UnknownItem, "no audit events for item " + item_id);
  if (previous != 0 && redacted_seqs.empty()) return previous;

  auto updated = events_;
  std::string policy_version;
  for (auto& event : updated) {
    if (event.item_id != item_id) continue;
    event.payload = redact_texts(event.payload);
    policy_version = event.policy_version;
  }
  AuditEvent marker;
  marker.seq = updated.size() + 1;
  marker.item_id = item_id;
  marker.kind = EventKind::Redaction;
  marker.policy_version = policy_version;
  marker.actor = actor;
  marker.ts = ts;
  marker.payload = json{{"redacted_seqs", redacted_seqs}};
  marker.prev_hash = updated.back().hash;
  marker.hash = compute_hash(marker);
  updated.push_back(marker);

  std::vector<std::string> lines;
  lines.reserve(updated.size());
  for (const auto& event : updated) lines.push_back(event.line());
  store_->replace_all(lines);
  events_ = std::move(updated);
  return marker.seq;
}

}  // namespace plainloop::audit
