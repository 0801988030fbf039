#include "plainloop/gateway/config.hpp"

#include <cstdlib>
#include <filesystem>
#include <set>

#include "plainloop/common/error.hpp"
#include "plainloop/metrics/metric_config.hpp"

namespace plainloop::gateway {

namespace fs = std::filesystem;

namespace {

KeyValueConfig load_with_includes(const fs::path& path, std::set<std::string>& active) {
  const auto canonical = fs::weakly_canonical(path).string();
  if (!active.insert(canonical).second) {
    throw Error(ErrorCode::InvalidConfig, "config include cycle at " + path.string());
  }
  const auto own = KeyValueConfig::load(path.string());
  KeyValueConfig merged;
  for (const auto& include : own.get_list("config.include")) {
    const auto nested = load_with_includes(path.parent_path() / include, active);
    for (const auto& [key, value] : nested.entries()) merged.set(key, value);
  }
  for (const auto& [key, value] : own.entries()) merged.set(key, value);
  active.erase(canonical);
  return merged;
}

}  // namespace

ServiceConfig ServiceConfig::load(const std::string& path) {
  std::set<std::string> active;
  ServiceConfig config;
  config.values = load_with_includes(path, active);
  config.base_dir = fs::path(path).parent_path().string();
  if (config.base_dir.empty()) config.base_dir = ".";
  return config;
}

std::string ServiceConfig::path_of(const std::string& key) const {
  const auto value = values.get(key);
  return value ? metrics::resolve_path(base_dir, *value) : std::string();
}

std::string default_config_path() {
  if (const char* env = std::getenv("PLAINLOOP_CONFIG"); env && *env) return env;
  return std::string(PLAINLOOP_DATA_DIR) + "/plainloop.conf";
}

ListenAddress parse_listen(const std::string& text) {
  const auto colon = text.rfind(':');
  if (colon == std::string::npos) throw Error(ErrorCode::InvalidConfig, "listen address needs host:port");
  ListenAddress address;
  if (colon > 0) address.host = text.substr(0, colon);
  const auto port = text.substr(colon + 1);
  try {
    std::size_t used = 0;
    address.port = std::stoi(port, &used);
    if (used != port.size() || address.port < 0 || address.port > 65535) throw std::out_of_range(port);
  } catch (const std::exception&) {
    throw Error(ErrorCode::InvalidConfig, "bad listen port: " + port);
  }
  return address;
}

ListenAddress default_listen() {
  if (const char* env = std::getenv("PLAINLOOP_LISTEN"); env && *env) return parse_listen(env);
  return {};
}

Service build_service(const ServiceConfig& config, std::shared_ptr<audit::EventStore> store,
                      workflow::Clock clock) {
  if (!store) {
    const auto path = config.path_of("audit.path");
    if (path.empty()) {
      store = std::make_shared<audit::MemoryStore>();
    } else {
      store = std::make_shared<audit::FileStore>(path);
    }
  }
  Service service;
  service.log = std::make_shared<audit::AuditLog>(std::move(store), config.values.get_or("audit.salt", ""));
  auto policy = workflow::PolicyBundle::from_config(config.values, config.base_dir);
  auto engine = metrics::MetricEngine(metrics::MetricConfig::from_config(config.values, config.base_dir));
  service.pipeline = std::make_unique<workflow::Pipeline>(std::move(policy), std::move(engine), service.log,
                                                          nullptr, std::move(clock));
  if (const auto signals = config.path_of("kpi.signals"); !signals.empty()) {
    service.signals = kpi::UserSignals::load(signals);
  }
  return service;
}

}  // namespace plainloop::gateway
