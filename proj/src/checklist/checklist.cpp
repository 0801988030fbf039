#include "plainloop/checklist/checklist.hpp"

#include "plainloop/common/error.hpp"
#include "plainloop/common/kv_config.hpp"

namespace plainloop::checklist {

std::string_view dimension_id(Dimension d) {
  switch (d) {
    case Dimension::LexicalClarity: return "lexical_clarity";
    case Dimension::SyntacticSimplicity: return "syntactic_simplicity";
    case Dimension::StructuralClarity: return "structural_clarity";
    case Dimension::Relevance: return "relevance";
    case Dimension::MultimodalSupport: return "multimodal_support";
    case Dimension::PromptModelAdaptation: return "prompt_model_adaptation";
  }
  return "?";
}

Dimension parse_dimension(std::string_view id) {
  for (const auto d : kDimensions) {
    if (dimension_id(d) == id) return d;
  }
  throw Error(ErrorCode::UnknownDimension, "unknown checklist dimension '" + std::string(id) + "'");
}

std::string_view status_name(Status s) {
  switch (s) {
    case Status::Satisfied: return "satisfied";
    case Status::Unsatisfied: return "unsatisfied";
    case Status::Unknown: return "unknown";
  }
  return "?";
}

Status parse_status(std::string_view s) {
  for (const auto st : {Status::Satisfied, Status::Unsatisfied, Status::Unknown}) {
    if (status_name(st) == s) return st;
  }
  throw Error(ErrorCode::InvalidInput, "status must be satisfied, unsatisfied or unknown");
}

std::string_view source_name(Source s) { return s == Source::Auto ? "auto" : "human"; }

nlohmann::json ChecklistResult::to_json() const {
  nlohmann::json entries = nlohmann::json::object();
  for (const auto d : kDimensions) {
    const auto& e = at(d);
    entries[std::string(dimension_id(d))] = {
        {"status", status_name(e.status)}, {"source", source_name(e.source)}, {"rationale", e.rationale}};
  }
  const auto c = compliance(*this);
  return {{"schema", "plainloop.checklist/1"},
          {"entries", std::move(entries)},
          {"reviewer_id", reviewer_id ? nlohmann::json(*reviewer_id) : nlohmann::json(nullptr)},
          {"policy_version", policy_version},
          {"compliance",
           {{"compliant", c.compliant}, {"satisfied_count", c.satisfied_count}, {"evaluated_count", c.evaluated_count}}}};
}

ChecklistResult ChecklistResult::from_json(const nlohmann::json& j) {
  try {
    ChecklistResult r;
    const auto& entries = j.at("entries");
    if (entries.size() != kDimensions.size()) {
      throw Error(ErrorCode::InvalidInput, "a checklist has exactly six dimensions");
    }
    for (const auto& [key, value] : entries.items()) {
      const auto source = value.at("source").get<std::string>();
      if (source != "auto" && source != "human") throw Error(ErrorCode::InvalidInput, "source must be auto or human");
      r.set(parse_dimension(key), {parse_status(value.at("status").get<std::string>()),
                                   source == "auto" ? Source::Auto : Source::Human,
                                   value.at("rationale").get<std::string>()});
    }
    if (j.contains("reviewer_id") && !j.at("reviewer_id").is_null()) {
      r.reviewer_id = j.at("reviewer_id").get<std::string>();
    }
    r.policy_version = j.value("policy_version", "");
    return r;
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::InvalidInput, std::string("checklist: ") + e.what());
  }
}

Compliance compliance(const ChecklistResult& result) {
  Compliance c;
  for (const auto d : kDimensions) {
    const auto s = result.at(d).status;
    c.satisfied_count += s == Status::Satisfied;
    c.evaluated_count += s != Status::Unknown;
  }
  c.compliant = c.satisfied_count >= kCompliantCount;
  return c;
}

ChecklistResult merge_review(const ChecklistResult& base, const std::vector<HumanEntry>& human,
                             const std::string& reviewer_id) {
  ChecklistResult out = base;
  for (const auto& h : human) {
    const auto d = parse_dimension(h.dimension);
    if (trim(h.rationale).empty()) {
      throw Error(ErrorCode::MissingRationale, "missing rationale for '" + h.dimension + "'");
    }
    out.set(d, {h.status, Source::Human, h.rationale});
  }
  out.reviewer_id = reviewer_id;
  return out;
}

}  // namespace plainloop::checklist
