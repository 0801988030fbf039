#pragma once

#include <json.hpp>
#include <string>

#include "plainloop/gateway/config.hpp"

namespace plainloop::gateway {

struct BatchOptions {
  std::string input;       // JSON lines, one submission per line
  std::string rules;       // .eca file, overrides policy.rules
  std::string thresholds;  // replaces every thresholds.* key of the config
  std::string out;         // results, JSON lines
  std::string config = default_config_path();
  std::string audit;       // audit log file; in memory when empty
};

struct BatchSummary {
  std::size_t processed = 0;
  std::size_t failed = 0;  // lines that could not be submitted
};

// Configuration with the batch overrides applied. Paths given on the command
// line resolve against the working directory.
ServiceConfig batch_config(const BatchOptions& options);

// {id, state, routing, cqi, fired, policy_version}, the routing decision
// exactly as the HTTP API reports it.
nlohmann::json batch_result(const workflow::WorkItem& item);

// Runs every line through submit and process. Malformed lines become
// {line, error, message} records and count as failed.
BatchSummary run_batch(const BatchOptions& options);

}  // namespace plainloop::gateway
