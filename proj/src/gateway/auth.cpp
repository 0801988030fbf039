#include "plainloop/gateway/auth.hpp"

#include <openssl/crypto.h>

#include <set>

#include "plainloop/common/error.hpp"

namespace plainloop::gateway {

std::string_view role_name(Role role) {
  switch (role) {
    case Role::Operator: return "operator";
    case Role::Reviewer: return "reviewer";
    case Role::Auditor: return "auditor";
  }
  return "operator";
}

Role parse_role(std::string_view name) {
  if (name == "operator") return Role::Operator;
  if (name == "reviewer") return Role::Reviewer;
  if (name == "auditor") return Role::Auditor;
  throw Error(ErrorCode::InvalidConfig, "unknown role: " + std::string(name));
}

TokenTable TokenTable::from_config(const KeyValueConfig& config) {
  std::set<std::string> names;
  for (const auto& [key, value] : config.with_prefix("auth.")) {
    const auto rest = key.substr(5);
    const auto dot = rest.find('.');
    if (dot == std::string::npos) throw Error(ErrorCode::InvalidConfig, "bad auth key: " + key);
    names.insert(rest.substr(0, dot));
  }
  TokenTable table;
  for (const auto& name : names) {
    const auto prefix = "auth." + name + ".";
    ApiSession session;
    session.name = name;
    const auto token = config.get(prefix + "token");
    const auto role = config.get(prefix + "role");
    if (!token || !role) throw Error(ErrorCode::InvalidConfig, prefix + "token and " + prefix + "role are required");
    session.token = *token;
    session.role = parse_role(*role);
    if (session.role == Role::Reviewer) session.reviewer_id = config.get_or(prefix + "reviewer_id", name);
    table.add(std::move(session));
  }
  return table;
}

void TokenTable::add(ApiSession session) {
  if (session.token.empty()) throw Error(ErrorCode::InvalidConfig, "empty API token");
  if (lookup(session.token)) throw Error(ErrorCode::InvalidConfig, "API token configured twice");
  sessions_.push_back(std::move(session));
}

std::optional<ApiSession> TokenTable::lookup(std::string_view token) const {
  std::optional<ApiSession> found;
  // Compare against every entry so timing does not reveal which one matched.
  for (const auto& s : sessions_) {
    if (s.token.size() == token.size() && CRYPTO_memcmp(s.token.data(), token.data(), token.size()) == 0) {
      found = s;
    }
  }
  return found;
}

std::optional<ApiSession> TokenTable::authenticate(std::string_view header) const {
  constexpr std::string_view scheme = "Bearer ";
  if (header.substr(0, scheme.size()) != scheme) return std::nullopt;
  auto token = header.substr(scheme.size());
  while (!token.empty() && token.front() == ' ') token.remove_prefix(1);
  while (!token.empty() && token.back() == ' ') token.remove_suffix(1);
  if (token.empty()) return std::nullopt;
  return lookup(token);
}

}  // namespace plainloop::gateway
