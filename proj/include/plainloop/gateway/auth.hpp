#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "plainloop/common/kv_config.hpp"

namespace plainloop::gateway {

enum class Role { Operator, Reviewer, Auditor };

std::string_view role_name(Role role);
Role parse_role(std::string_view name);  // throws InvalidConfig

struct ApiSession {
  std::string name;  // configuration entry, used as the audit actor
  Role role = Role::Operator;
  std::string token;
  std::string reviewer_id;  // set for reviewers only
};

// Static bearer tokens from configuration:
//   auth.<name>.token = <opaque string>
//   auth.<name>.role = operator | reviewer | auditor
//   auth.<name>.reviewer_id = <id>      (reviewers; defaults to <name>)
class TokenTable {
 public:
  static TokenTable from_config(const KeyValueConfig& config);

  void add(ApiSession session);  // throws InvalidConfig on an empty or repeated token
  std::optional<ApiSession> lookup(std::string_view token) const;
  // Accepts "Bearer <token>".
  std::optional<ApiSession> authenticate(std::string_view authorization_header) const;
  std::size_t size() const { return sessions_.size(); }

 private:
  std::vector<ApiSession> sessions_;
};

}  // namespace plainloop::gateway
