#include "plainloop/audit/log.hpp"
#include "plainloop/common/error.hpp"
#include "plainloop/common/hash.hpp"
#include "plainloop/common/kv_config.hpp"

namespace plainloop::audit {

using nlohmann::json;

namespace {

void check_texts(const json& j, std::uint64_t seq) {
  if (is_text(j)) {
    const auto& text = j["text"].get_ref<const std::string&>();
    const auto& nonce = j["nonce"].get_ref<const std::string&>();
    if (sha256_hex(nonce + text) != j["ref"].get<std::string>()) {
      throw LogError(ErrorCode::CorruptLog, seq, "text does not match its ref");
    }
    return;
  }
  if (j.is_object() || j.is_array()) {
    for (const auto& value : j) check_texts(value, seq);
  }
}

}  // namespace

std::vector<AuditEvent> verify_lines(const std::vector<std::string>& lines) {
  std::vector<AuditEvent> events;
  events.reserve(lines.size());
  std::string prev = kGenesisHash;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::uint64_t expected_seq = i + 1;
    const auto parsed = json::parse(lines[i], nullptr, false);
    if (parsed.is_discarded()) {
      throw LogError(ErrorCode::CorruptLog, expected_seq, "line is not valid JSON");
    }
    AuditEvent event;
    try {
      event = AuditEvent::from_json(parsed);
    } catch (const Error& e) {
      throw LogError(ErrorCode::CorruptLog, expected_seq, e.what());
    }
    if (event.line() != lines[i]) {
      throw LogError(ErrorCode::CorruptLog, expected_seq, "line is not in canonical form");
    }
    if (event.seq != expected_seq) {
      throw LogError(ErrorCode::CorruptLog, expected_seq,
                     "sequence gap: found seq " + std::to_string(event.seq));
    }
    if (event.prev_hash != prev) {
      throw LogError(ErrorCode::CorruptLog, expected_seq, "prev_hash breaks the chain");
    }
    if (compute_hash(event) != event.hash) {
      throw LogError(ErrorCode::CorruptLog, expected_seq, "hash does not match content");
    }
    check_texts(event.payload, expected_seq);
    prev = event.hash;
    events.push_back(std::move(event));
  }
  return events;
}

std::vector<AuditEvent> verify_text(std::string_view jsonl) {
  auto lines = split(jsonl, '\n');
  // A trailing newline terminates the last line rather than opening an
  // empty one.
  if (!lines.empty() && lines.back().empty()) lines.pop_back();
  return verify_lines(lines);
}

}  // namespace plainloop::audit
