#pragma once

#include <json.hpp>
#include <map>
#include <optional>
#include <set>
#include <string>

#include "plainloop/common/error.hpp"
#include "plainloop/gateway/auth.hpp"
#include "plainloop/kpi/signals.hpp"
#include "plainloop/workflow/pipeline.hpp"

namespace plainloop::gateway {

constexpr std::size_t kMaxBodyBytes = 1 << 20;

struct ApiRequest {
  std::string method;  // GET, POST, ...
  std::string path;
  std::map<std::string, std::string> query;
  std::string authorization;  // raw Authorization header
  std::string body;
};

struct ApiResponse {
  int status = 200;
  nlohmann::json body;

  std::string text() const { return body.dump(); }
};

// HTTP status for a pipeline error code.
int http_status(ErrorCode code);

// Profiles named anywhere in the signals.
std::set<std::string> signal_profiles(const kpi::UserSignals& signals);
// {"records": {profile: [KpiRecord...]}, "bindings": {profile: {...}}}
nlohmann::json kpi_report(const kpi::UserSignals& signals, const kpi::KpiConfig& config,
                          const std::set<std::string>& profiles, const std::string& timestamp);

// The JSON API, independent of any socket layer. Holds no mutable state of
// its own; concurrent calls are serialized per item by the pipeline.
//
//   GET  /healthz                         any caller
//   POST /items[?process=true]            operator          201
//   POST /items/{id}/process              operator
//   POST /items/{id}/regenerate           operator
//   GET  /items/{id}                      any role
//   GET  /queue?state=InReview            reviewer
//   POST /items/{id}/decision             reviewer
//   GET  /kpis                            operator, auditor
//   GET  /policies                        any role
//   POST /policies                        operator          201
//   GET  /audit/export?from=&to=          auditor, operator
class ApiRouter {
 public:
  ApiRouter(workflow::Pipeline& pipeline, TokenTable tokens, std::optional<kpi::UserSignals> signals = {});

  ApiResponse handle(const ApiRequest& request) const;

 private:
  ApiResponse dispatch(const ApiRequest& request, const std::optional<ApiSession>& session) const;
  ApiResponse submit(const ApiRequest& request, const ApiSession& session) const;
  ApiResponse decision(const std::string& id, const ApiRequest& request, const ApiSession& session) const;
  ApiResponse queue(const ApiRequest& request) const;
  ApiResponse kpis() const;
  ApiResponse audit_export(const ApiRequest& request, const ApiSession& session) const;

  workflow::Pipeline& pipeline_;
  TokenTable tokens_;
  std::optional<kpi::UserSignals> signals_;
};

}  // namespace plainloop::gateway
