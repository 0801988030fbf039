#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <random>

#include "plainloop/audit/log.hpp"
#include "plainloop/common/error.hpp"
#include "plainloop/common/hash.hpp"
#include "plainloop/common/kv_config.hpp"

using namespace plainloop;
using namespace plainloop::audit;
using nlohmann::json;

namespace {

NewEvent event_for(const std::string& item, EventKind kind, json payload = json::object()) {
  NewEvent e;
  e.item_id = item;
  e.kind = kind;
  e.policy_version = "p1";
  e.ts = "2026-01-01T00:00:00Z";
  e.payload = std::move(payload);
  return e;
}

// Small log with texts, two items and a reviewer.
void fill_sample(AuditLog& log) {
  for (const std::string item : {"a", "b"}) {
    log.append(event_for(item, EventKind::Submitted,
                         {{"source", log.text("Texto de " + item + " con ñ", item + ":source")}}));
    log.append(event_for(item, EventKind::Snapshot, {{"metrics", {{"sari", 0.8}}}}));
  }
  auto review = event_for("a", EventKind::ReviewDecision,
                          {{"decision", "approve"}, {"reviewer_id", "rev-7"}});
  review.actor = "rev-7";
  log.append(review);
}

}  // namespace

TEST_CASE("append assigns contiguous seq from 1 and chains hashes") {
  auto store = std::make_shared<MemoryStore>();
  AuditLog log(store, "salt");
  fill_sample(log);
  const auto events = log.events();
  REQUIRE(events.size() == 5);
  std::string prev = kGenesisHash;
  for (std::size_t i = 0; i < events.size(); ++i) {
    CHECK(events[i].seq == i + 1);
    CHECK(events[i].prev_hash == prev);
    CHECK(events[i].hash == compute_hash(events[i]));
    prev = events[i].hash;
  }
  CHECK(log.head_hash() == prev);
  CHECK(verify_lines(store->lines()) == events);
}

TEST_CASE("stored lines are canonical JSON with the fixed field set") {
  auto store = std::make_shared<MemoryStore>();
  AuditLog log(store, "salt");
  fill_sample(log);
  for (const auto& line : store->lines()) {
    const auto j = json::parse(line);
    CHECK(j.dump() == line);
    for (const char* key : {"seq", "item_id", "kind", "policy_version", "actor", "ts", "payload",
                            "prev_hash", "hash"}) {
      CHECK(j.contains(key));
    }
  }
}

TEST_CASE("text objects carry a ref over nonce and text") {
  const auto t = make_text("hola", "n1");
  CHECK(t["ref"] == sha256_hex("n1hola"));
  CHECK(is_text(t));
  CHECK(text_of(t) == std::optional<std::string>("hola"));
  const auto r = redact_texts(t);
  CHECK(is_redacted_text(r));
  CHECK(!text_of(r));
  CHECK(text_ref(r) == text_ref(t));
}

TEST_CASE("storage failure leaves the log untouched and a retry succeeds") {
  auto store = std::make_shared<FlakyStore>();
  AuditLog log(store, "salt");
  log.append(event_for("a", EventKind::Submitted));
  store->fail_next(1);
  auto retry = event_for("a", EventKind::Snapshot);
  retry.idempotency_token = "tok-1";
  CHECK_THROWS_AS(log.append(retry), Error);
  CHECK(log.size() == 1);
  CHECK(store->lines().size() == 1);
  CHECK(log.append(retry) == 2);
  CHECK(log.append(retry) == 2);  // token already used
  CHECK(log.size() == 2);
  CHECK(verify_lines(store->lines()).size() == 2);
}

TEST_CASE("idempotency tokens survive a reload") {
  auto store = std::make_shared<MemoryStore>();
  {
    AuditLog log(store, "salt");
    auto e = event_for("a", EventKind::Submitted);
    e.idempotency_token = "t";
    log.append(e);
  }
  AuditLog reopened(store, "salt");
  auto e = event_for("a", EventKind::Submitted);
  e.idempotency_token = "t";
  CHECK(reopened.append(e) == 1);
  CHECK(reopened.size() == 1);
}

TEST_CASE("file store round trip and reopen") {
  const auto path = (std::filesystem::temp_directory_path() / "plainloop_audit_test.jsonl").string();
  std::remove(path.c_str());
  {
    AuditLog log(std::make_shared<FileStore>(path), "salt");
    fill_sample(log);
    log.redact("b", "ops", "2026-01-02T00:00:00Z");
  }
  auto store = std::make_shared<FileStore>(path);
  AuditLog reopened(store, "salt");
  CHECK(reopened.size() == 6);
  CHECK(verify_text(read_file(path)).size() == 6);
  std::remove(path.c_str());
}

TEST_CASE("verification names the first bad seq") {
  auto store = std::make_shared<MemoryStore>();
  AuditLog log(store, "salt");
  fill_sample(log);
  auto lines = store->lines();

  SUBCASE("dropped line") {
    lines.erase(lines.begin() + 2);
    try {
      verify_lines(lines);
      FAIL("expected CorruptLog");
    } catch (const LogError& e) {
      CHECK(e.code() == ErrorCode::CorruptLog);
      CHECK(e.seq() == 3);
    }
  }
  SUBCASE("payload edit") {
    auto j = json::parse(lines[1]);
    j["payload"]["metrics"]["sari"] = 0.9;
    lines[1] = j.dump();
    try {
      verify_lines(lines);
      FAIL("expected CorruptLog");
    } catch (const LogError& e) {
      CHECK(e.seq() == 2);
    }
  }
  SUBCASE("rehashed edit still breaks the next link") {
    auto event = AuditEvent::from_json(json::parse(lines[1]));
    event.payload["metrics"]["sari"] = 0.9;
    event.hash = compute_hash(event);
    lines[1] = event.line();
    try {
      verify_lines(lines);
      FAIL("expected CorruptLog");
    } catch (const LogError& e) {
      CHECK(e.seq() == 3);
    }
  }
  SUBCASE("non-canonical whitespace") {
    lines[0] = json::parse(lines[0]).dump(1);
    lines[0].erase(std::remove(lines[0].begin(), lines[0].end(), '\n'), lines[0].end());
    CHECK_THROWS_AS(verify_lines(lines), LogError);
  }
}

TEST_CASE("every single-byte substitution is detected") {
  auto store = std::make_shared<MemoryStore>();
  AuditLog log(store, "salt");
  fill_sample(log);
  log.redact("b", "ops", "2026-01-02T00:00:00Z");
  std::string text;
  for (const auto& line : store->lines()) text += line + "\n";
  REQUIRE(verify_text(text).size() == 6);
  int checked = 0;
  for (std::size_t i = 0; i < text.size(); ++i) {
    for (const unsigned char mask : {0x01, 0x20, 0x80}) {
      auto tampered = text;
      tampered[i] = static_cast<char>(static_cast<unsigned char>(tampered[i]) ^ mask);
      // Flipping the final newline only removes the terminator.
      if (i + 1 == text.size() && mask == 0x01) continue;
      bool detected = false;
      try {
        verify_text(tampered);
      } catch (const LogError&) {
        detected = true;
      }
      if (!detected) FAIL("undetected tamper at byte " << i << " mask " << int(mask));
      ++checked;
    }
  }
  CHECK(checked > 1000);
}

TEST_CASE("redaction keeps the chain and is idempotent") {
  auto store = std::make_shared<MemoryStore>();
  AuditLog log(store, "salt");
  fill_sample(log);
  const auto before = log.events();
  const auto seq = log.redact("a", "ops", "2026-01-02T00:00:00Z");
  CHECK(seq == 6);
  const auto after = verify_lines(store->lines());
  REQUIRE(after.size() == 6);
  for (std::size_t i = 0; i < before.size(); ++i) CHECK(after[i].hash == before[i].hash);
  CHECK(is_redacted_text(after[0].payload["source"]));
  CHECK(is_text(after[2].payload["source"]));  // item b untouched
  CHECK(after[5].kind == EventKind::Redaction);
  CHECK(after[5].payload["redacted_seqs"] == json::array({1}));

  CHECK(log.redact("a", "ops", "2026-01-03T00:00:00Z") == 6);
  CHECK(log.size() == 6);
  CHECK_THROWS_AS(log.redact("nope", "ops", "t"), Error);
}

TEST_CASE("legal hold blocks redaction") {
  AuditLog log(std::make_shared<MemoryStore>(), "salt");
  fill_sample(log);
  log.set_legal_hold("a", true);
  try {
    log.redact("a", "ops", "t");
    FAIL("expected LegalHold");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::LegalHold);
  }
  log.set_legal_hold("a", false);
  CHECK(log.redact("a", "ops", "t") == 6);
}

TEST_CASE("export filters by role and is byte stable") {
  AuditLog log(std::make_shared<MemoryStore>(), "salt");
  fill_sample(log);
  const auto auditor = log.export_range(1, 5, ExportRole::Auditor);
  CHECK(auditor == log.export_range(1, 5, ExportRole::Auditor));
  CHECK(verify_text(auditor).size() == 5);

  const auto pub = log.export_range(1, 5, ExportRole::Public);
  CHECK(pub.find("rev-7") == std::string::npos);
  CHECK(pub.find("reviewer_id") == std::string::npos);
  CHECK(pub.find("Texto de") == std::string::npos);
  CHECK(pub.find("\"redacted\":true") != std::string::npos);

  const auto op = log.export_range(1, 5, ExportRole::Operator);
  CHECK(op.find("Texto de") != std::string::npos);
  CHECK(op.find("nonce") == std::string::npos);
  CHECK(op.find("rev-7") != std::string::npos);

  CHECK(log.export_range(2, 3, ExportRole::Auditor).find("\"seq\":4") == std::string::npos);
  try {
    log.export_range(10, 20, ExportRole::Auditor);
    FAIL("expected RangeEmpty");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::RangeEmpty);
  }
  CHECK_THROWS_AS(log.export_range(4, 2, ExportRole::Auditor), Error);
  CHECK(parse_export_role("public") == ExportRole::Public);
  CHECK_THROWS_AS(parse_export_role("root"), Error);
}

TEST_CASE("random logs verify and fail after random tamper") {
  std::mt19937_64 rng(7);
  for (int run = 0; run < 50; ++run) {
    auto store = std::make_shared<MemoryStore>();
    AuditLog log(store, "s" + std::to_string(run));
    const int n = 1 + static_cast<int>(rng() % 20);
    for (int i = 0; i < n; ++i) {
      const auto item = "i" + std::to_string(rng() % 4);
      log.append(event_for(item, static_cast<EventKind>(rng() % 9),
                           {{"v", static_cast<double>(rng() % 1000) / 7.0},
                            {"t", log.text(std::to_string(rng()), item + ":" + std::to_string(i))}}));
    }
    auto lines = store->lines();
    REQUIRE(verify_lines(lines).size() == static_cast<std::size_t>(n));
    auto& line = lines[rng() % lines.size()];
    const auto pos = rng() % line.size();
    line[pos] = static_cast<char>(line[pos] ^ (1 << (rng() % 7)));
    CHECK_THROWS_AS(verify_lines(lines), LogError);
  }
}
