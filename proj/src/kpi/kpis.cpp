#include "plainloop/kpi/kpis.hpp"

#include <algorithm>

#include "plainloop/common/error.hpp"

namespace plainloop::kpi {

std::string_view kpi_name(KpiId id) {
  switch (id) {
    case KpiId::Kpi1: return "KPI_1";
    case KpiId::Kpi2: return "KPI_2";
    case KpiId::Kpi3: return "KPI_3";
    case KpiId::Kpi4: return "KPI_4";
    case KpiId::Kpi5: return "KPI_5";
  }
  return "?";
}

nlohmann::json KpiRecord::to_json() const {
  return {{"kpi", kpi_name(id)}, {"value", value},         {"satisfied", satisfied},
          {"inputs", inputs},    {"timestamp", timestamp}, {"profile", profile}};
}

KpiRecord KpiRecord::from_json(const nlohmann::json& j) {
  KpiRecord r;
  const auto name = j.at("kpi").get<std::string>();
  bool known = false;
  for (const auto id : {KpiId::Kpi1, KpiId::Kpi2, KpiId::Kpi3, KpiId::Kpi4, KpiId::Kpi5}) {
    if (kpi_name(id) == name) {
      r.id = id;
      known = true;
    }
  }
  if (!known) throw Error(ErrorCode::InvalidInput, "unknown KPI '" + name + "'");
  r.value = j.at("value").get<double>();
  r.satisfied = j.at("satisfied").get<bool>();
  r.inputs = j.at("inputs").get<std::map<std::string, double>>();
  r.timestamp = j.at("timestamp").get<std::string>();
  r.profile = j.at("profile").get<std::string>();
  return r;
}

std::vector<KpiRecord> evaluate_kpis(const UserSignals& signals, const KpiConfig& config, const std::string& profile,
                                     const std::string& timestamp) {
  std::vector<KpiRecord> out;
  const auto record = [&](KpiId id, double value, bool satisfied, std::map<std::string, double> inputs) {
    out.push_back({id, value, satisfied, std::move(inputs), timestamp, profile});
  };

  // KPI_1
  {
    double post = 0, pre = 0;
    long n = 0;
    for (const auto& c : signals.comprehension) {
      if (c.profile != profile) continue;
      post += c.post;
      pre += c.baseline;
      ++n;
    }
    if (n > 0) {
      const double mean_post = post / static_cast<double>(n);
      const double baseline =
          config.baseline == BaselineMode::PerUser ? pre / static_cast<double>(n) : config.baseline_value;
      record(KpiId::Kpi1, mean_post - baseline, mean_post >= baseline + config.delta,
             {{"comprehension_test_score", mean_post},
              {"baseline", baseline},
              {"delta", config.delta},
              {"users", static_cast<double>(n)}});
    }
  }
  // KPI_2
  {
    const auto theta = config.theta_profile.find(profile);
    const bool any = std::any_of(signals.synonym_judgments.begin(), signals.synonym_judgments.end(),
                                 [&](const SynonymJudgment& j) { return j.profile == profile; });
    if (any && theta != config.theta_profile.end()) {
      const double rate = acceptance_rate(signals.synonym_judgments, profile, AcceptanceCategory::AtLeastOne);
      record(KpiId::Kpi2, rate, rate >= theta->second,
             {{"synonym_acceptance_rate", rate}, {"theta_profile", theta->second}});
    }
  }
  // KPI_3
  {
    long activations = 0, opportunities = 0;
    for (const auto& g : signals.glossary) {
      if (g.profile != profile) continue;
      activations += g.activations;
      opportunities += g.opportunities;
    }
    if (opportunities > 0) {
      const double rate = static_cast<double>(activations) / static_cast<double>(opportunities);
      record(KpiId::Kpi3, rate, rate >= config.tau,
             {{"glossary_activation_rate", rate},
              {"activations", static_cast<double>(activations)},
              {"opportunities", static_cast<double>(opportunities)},
              {"tau", config.tau}});
    }
  }
  // KPI_4
  {
    std::set<std::string> predicted, gold;
    for (const auto& m : signals.cwi) {
      if (m.profile != profile) continue;
      predicted.insert(m.predicted.begin(), m.predicted.end());
      gold.insert(m.gold.begin(), m.gold.end());
    }
    if (!gold.empty()) {
      const auto s = cwi_scores(predicted, gold);
      record(KpiId::Kpi4, s.f1, config.alpha <= s.f1 && s.f1 <= config.beta,
             {{"recall_precision_balance", s.f1},
              {"precision", s.precision},
              {"recall", s.recall},
              {"alpha", config.alpha},
              {"beta", config.beta}});
    }
  }
  // KPI_5
  if (signals.adaptation.size() >= 2) {
    auto cycles = signals.adaptation;
    std::stable_sort(cycles.begin(), cycles.end(),
                     [](const AdaptationAccuracy& a, const AdaptationAccuracy& b) { return a.cycle < b.cycle; });
    const auto& current = cycles.back();
    const auto& previous = cycles[cycles.size() - 2];
    record(KpiId::Kpi5, current.accuracy, current.accuracy >= previous.accuracy + config.epsilon,
           {{"model_adaptation_accuracy", current.accuracy},
            {"previous_cycle", previous.accuracy},
            {"epsilon", config.epsilon},
            {"cycle", static_cast<double>(current.cycle)}});
  }
  return out;
}

std::map<std::string, double> kpi_bindings(const std::vector<KpiRecord>& records) {
  std::map<std::string, double> out;
  for (const auto& r : records) {
    std::string name(kpi_name(r.id));
    std::transform(name.begin(), name.end(), name.begin(), [](unsigned char c) { return std::tolower(c); });
    out[name] = r.value;
    const auto copy = [&](const char* key) {
      const auto it = r.inputs.find(key);
      if (it != r.inputs.end()) out[key] = it->second;
    };
    switch (r.id) {
      case KpiId::Kpi1:
        copy("comprehension_test_score");
        copy("baseline");
        break;
      case KpiId::Kpi2:
        copy("synonym_acceptance_rate");
        out["synonym_acceptance_rate(" + r.profile + ")"] = r.value;
        break;
      case KpiId::Kpi3: copy("glossary_activation_rate"); break;
      case KpiId::Kpi4: copy("recall_precision_balance"); break;
      case KpiId::Kpi5:
        copy("model_adaptation_accuracy");
        copy("previous_cycle");
        break;
    }
  }
  return out;
}

}  // namespace plainloop::kpi
