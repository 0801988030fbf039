#pragma once

#include <memory>
#include <string>

#include "plainloop/audit/log.hpp"
#include "plainloop/checklist/checklist.hpp"
#include "plainloop/metrics/snapshot.hpp"
#include "plainloop/workflow/pipeline.hpp"
#include "test_support.hpp"

namespace plainloop::testing {

// data/plainloop.conf with its thresholds include merged in.
inline KeyValueConfig service_config() {
  auto kv = KeyValueConfig::load(data_path("plainloop.conf"));
  const auto thresholds = KeyValueConfig::load(data_path("thresholds.conf"));
  for (const auto& [key, value] : thresholds.entries()) kv.set(key, value);
  return kv;
}

inline workflow::PolicyBundle fixture_policy() {
  return workflow::PolicyBundle::from_config(service_config(), PLAINLOOP_TEST_DATA_DIR);
}

inline metrics::MetricEngine fixture_engine() {
  return metrics::MetricEngine(metrics::MetricConfig::from_config(service_config(), PLAINLOOP_TEST_DATA_DIR));
}

// Deterministic timestamps: one second per call from a fixed epoch.
inline workflow::Clock counter_clock() {
  auto n = std::make_shared<int>(0);
  return [n] {
    const int t = (*n)++;
    char buffer[32];
    std::snprintf(buffer, sizeof buffer, "2026-01-01T%02d:%02d:%02dZ", (t / 3600) % 24, (t / 60) % 60, t % 60);
    return std::string(buffer);
  };
}

inline std::unique_ptr<workflow::Pipeline> make_pipeline(
    std::shared_ptr<audit::EventStore> store = std::make_shared<audit::MemoryStore>(),
    workflow::PolicyBundle policy = fixture_policy()) {
  auto log = std::make_shared<audit::AuditLog>(std::move(store), "test-salt");
  return std::make_unique<workflow::Pipeline>(std::move(policy), fixture_engine(), log, nullptr, counter_clock());
}

// The worked example: original text, initial adaptation as candidate.
inline workflow::SubmitRequest appendix_a_request() {
  workflow::SubmitRequest r;
  r.id = "appendix-a";
  r.source = appendix_a("original");
  r.candidate = appendix_a("initial_adapted");
  r.profile = "id";
  r.domain = "public_administration";
  // Structural scores supplied by an external scorer; both clear their
  // thresholds so only the terminology and quality gates decide.
  r.external_metrics = {{"samsa", 0.62}, {"dsari", 0.48}};
  return r;
}

// Short, already-plain text that passes every gate.
inline workflow::SubmitRequest plain_request(const std::string& id) {
  workflow::SubmitRequest r;
  r.id = id;
  r.source = "El centro abre el lunes. Puedes pedir cita por teléfono.";
  r.candidate = r.source;
  r.profile = "older_adults";
  r.domain = "public_information";
  r.external_metrics = {{"samsa", 0.9}, {"dsari", 0.9}};
  return r;
}

inline checklist::ChecklistResult checklist_with(int satisfied, const std::string& reviewer = "rev-1") {
  checklist::ChecklistResult c;
  int n = 0;
  for (const auto d : checklist::kDimensions) {
    const auto status = n++ < satisfied ? checklist::Status::Satisfied : checklist::Status::Unsatisfied;
    c.set(d, {status, checklist::Source::Human, "checked"});
  }
  c.reviewer_id = reviewer;
  return c;
}

}  // namespace plainloop::testing
