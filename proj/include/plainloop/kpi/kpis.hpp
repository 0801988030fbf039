#pragma once

#include <json.hpp>
#include <map>
#include <string>
#include <vector>

#include "plainloop/kpi/kpi_config.hpp"
#include "plainloop/kpi/signals.hpp"

namespace plainloop::kpi {

enum class KpiId { Kpi1, Kpi2, Kpi3, Kpi4, Kpi5 };

std::string_view kpi_name(KpiId id);  // "KPI_1" ...

struct KpiRecord {
  KpiId id = KpiId::Kpi1;
  double value = 0.0;
  bool satisfied = false;
  // Everything needed to recompute value and satisfied.
  std::map<std::string, double> inputs;
  std::string timestamp;
  std::string profile;

  nlohmann::json to_json() const;
  static KpiRecord from_json(const nlohmann::json& j);
  bool operator==(const KpiRecord&) const = default;
};

// KPI_1 mean comprehension gain >= delta
// KPI_2 at-least-one synonym acceptance >= theta_profile
// KPI_3 glossary activations / opportunities >= tau
// KPI_4 CWI F1 within [alpha, beta]
// KPI_5 latest adaptation accuracy >= previous cycle + epsilon
// A KPI whose inputs are absent for the profile is omitted.
std::vector<KpiRecord> evaluate_kpis(const UserSignals& signals, const KpiConfig& config,
                                     const std::string& profile, const std::string& timestamp = {});

// Bindings under the key names of the KPI rule listing, so the same
// records can be checked by the rule engine.
std::map<std::string, double> kpi_bindings(const std::vector<KpiRecord>& records);

}  // namespace plainloop::kpi
