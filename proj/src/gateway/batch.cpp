#include "plainloop/gateway/batch.hpp"

#include <filesystem>

#include "plainloop/common/error.hpp"
#include "plainloop/common/utf8.hpp"

namespace plainloop::gateway {

using nlohmann::json;

ServiceConfig batch_config(const BatchOptions& options) {
  auto config = ServiceConfig::load(options.config);
  if (!options.rules.empty()) {
    config.values.set("policy.rules", std::filesystem::absolute(options.rules).string());
  }
  const bool replace_thresholds = !options.thresholds.empty();
  KeyValueConfig merged;
  for (const auto& [key, value] : config.values.entries()) {
    // Batch runs never read reader signals.
    if (key == "kpi.signals") continue;
    if (replace_thresholds && key.rfind("thresholds.", 0) == 0) continue;
    merged.set(key, value);
  }
  if (replace_thresholds) {
    for (const auto& [key, value] : KeyValueConfig::load(options.thresholds).with_prefix("thresholds.")) {
      merged.set(key, value);
    }
  }
  config.values = std::move(merged);
  return config;
}

json batch_result(const workflow::WorkItem& item) {
  json fired = json::array();
  if (item.rule_outcome) {
    for (const auto& f : item.rule_outcome->fired) fired.push_back(f.rule_id);
  }
  return {{"id", item.id},
          {"state", workflow::state_name(item.state)},
          {"routing", item.routing ? item.routing->to_json() : json(nullptr)},
          {"cqi", item.cqi ? json(*item.cqi) : json(nullptr)},
          {"fired", fired},
          {"policy_version", item.policy_version}};
}

BatchSummary run_batch(const BatchOptions& options) {
  const auto config = batch_config(options);
  std::shared_ptr<audit::EventStore> store = std::make_shared<audit::MemoryStore>();
  if (!options.audit.empty()) store = std::make_shared<audit::FileStore>(options.audit);
  auto service = build_service(config, store);

  const auto input = read_file(options.input);
  std::string out;
  BatchSummary summary;
  std::size_t line_no = 0;
  for (const auto& raw : split(input, '\n')) {
    ++line_no;
    const auto line = trim(raw);
    if (line.empty()) continue;
    try {
      if (!utf8::is_valid(line)) throw Error(ErrorCode::InvalidInput, "line is not valid UTF-8");
      const auto parsed = json::parse(line, nullptr, false);
      if (parsed.is_discarded()) throw Error(ErrorCode::InvalidInput, "line is not valid JSON");
      const auto item = service.pipeline->submit_and_process(workflow::SubmitRequest::from_json(parsed));
      out += batch_result(item).dump() + "\n";
      ++summary.processed;
    } catch (const Error& e) {
      if (e.code() == ErrorCode::StorageFailure) throw;
      out += json{{"line", line_no}, {"error", error_code_name(e.code())}, {"message", e.what()}}.dump() + "\n";
      ++summary.failed;
    }
  }
  write_file(options.out, out);
  return summary;
}

}  // namespace plainloop::gateway
