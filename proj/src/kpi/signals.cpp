#include "plainloop/kpi/signals.hpp"

#include <json.hpp>

#include "plainloop/common/error.hpp"
#include "plainloop/common/kv_config.hpp"

namespace plainloop::kpi {

UserSignals UserSignals::parse_jsonl(std::string_view text) {
  UserSignals out;
  int line_no = 0;
  for (const auto& raw : split(text, '\n')) {
    ++line_no;
    const auto line = trim(raw);
    if (line.empty()) continue;
    const auto where = "signals line " + std::to_string(line_no) + ": ";
    try {
      const auto j = nlohmann::json::parse(line);
      const auto kind = j.at("kind").get<std::string>();
      if (kind == "comprehension") {
        out.comprehension.push_back({j.at("user").get<std::string>(), j.at("profile").get<std::string>(),
                                     j.at("baseline").get<double>(), j.at("post").get<double>()});
      } else if (kind == "synonym_judgment") {
        out.synonym_judgments.push_back({j.at("item").get<std::string>(), j.at("profile").get<std::string>(),
                                         parse_acceptance(j.at("accepted").get<std::string>())});
      } else if (kind == "glossary") {
        GlossaryActivations g{j.at("profile").get<std::string>(), j.at("activations").get<long>(),
                              j.at("opportunities").get<long>()};
        if (g.activations < 0 || g.opportunities < 0 || g.activations > g.opportunities) {
          throw Error(ErrorCode::InvalidInput, "activations must lie in [0, opportunities]");
        }
        out.glossary.push_back(g);
      } else if (kind == "cwi") {
        out.cwi.push_back({j.at("profile").get<std::string>(), j.at("predicted").get<std::set<std::string>>(),
                           j.at("gold").get<std::set<std::string>>()});
      } else if (kind == "adaptation") {
        out.adaptation.push_back({j.at("cycle").get<int>(), j.at("accuracy").get<double>()});
      } else {
        throw Error(ErrorCode::InvalidInput, "unknown signal kind '" + kind + "'");
      }
    } catch (const Error& e) {
      throw Error(ErrorCode::InvalidInput, where + e.what());
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::InvalidInput, where + e.what());
    }
  }
  return out;
}

UserSignals UserSignals::load(const std::string& path) { return parse_jsonl(read_file(path)); }

void UserSignals::append(const UserSignals& other) {
  comprehension.insert(comprehension.end(), other.comprehension.begin(), other.comprehension.end());
  synonym_judgments.insert(synonym_judgments.end(), other.synonym_judgments.begin(), other.synonym_judgments.end());
  glossary.insert(glossary.end(), other.glossary.begin(), other.glossary.end());
  cwi.insert(cwi.end(), other.cwi.begin(), other.cwi.end());
  adaptation.insert(adaptation.end(), other.adaptation.begin(), other.adaptation.end());
}

}  // namespace plainloop::kpi
