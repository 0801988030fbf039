#pragma once

#include <memory>
#include <optional>
#include <string>

#include "plainloop/audit/log.hpp"
#include "plainloop/common/kv_config.hpp"
#include "plainloop/kpi/signals.hpp"
#include "plainloop/workflow/pipeline.hpp"

namespace plainloop::gateway {

struct ServiceConfig {
  KeyValueConfig values;
  std::string base_dir;  // relative paths resolve against this

  // Reads `path` and every file named by config.include (comma list,
  // relative to the including file). Keys in the including file win;
  // include cycles are an InvalidConfig error.
  static ServiceConfig load(const std::string& path);

  std::string path_of(const std::string& key) const;  // empty when unset
};

// $PLAINLOOP_CONFIG, else the bundled data/plainloop.conf.
std::string default_config_path();

struct ListenAddress {
  std::string host = "127.0.0.1";
  int port = 8080;
};

// "host:port" or ":port". Throws InvalidConfig.
ListenAddress parse_listen(const std::string& text);
// $PLAINLOOP_LISTEN, else 127.0.0.1:8080.
ListenAddress default_listen();

struct Service {
  std::shared_ptr<audit::AuditLog> log;
  std::unique_ptr<workflow::Pipeline> pipeline;
  std::optional<kpi::UserSignals> signals;  // kpi.signals, when configured
};

// audit.path selects a file store (memory otherwise); audit.salt seeds text
// nonces. Rule and threshold files may be overridden by the caller.
Service build_service(const ServiceConfig& config, std::shared_ptr<audit::EventStore> store = nullptr,
                      workflow::Clock clock = workflow::utc_now);

}  // namespace plainloop::gateway
