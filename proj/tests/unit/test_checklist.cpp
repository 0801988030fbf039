#include <doctest.h>

#include "plainloop/checklist/checklist.hpp"
#include "plainloop/common/error.hpp"
#include "test_support.hpp"

using namespace plainloop;
using namespace plainloop::checklist;

namespace {

ChecklistResult with_statuses(const std::array<Status, 6>& statuses) {
  ChecklistResult r;
  for (std::size_t i = 0; i < 6; ++i) r.set(kDimensions[i], {statuses[i], Source::Human, "x"});
  return r;
}

metrics::MetricSnapshot snapshot_with_structure(double v) {
  metrics::MetricSnapshot s;
  s.structural_clarity = v;
  return s;
}

}  // namespace

TEST_CASE("compliance: exhaustive over all status assignments") {
  const std::array<Status, 3> values = {Status::Satisfied, Status::Unsatisfied, Status::Unknown};
  int total = 0, compliant = 0;
  for (int code = 0; code < 729; ++code) {
    std::array<Status, 6> statuses{};
    int rest = code, satisfied = 0, evaluated = 0;
    for (auto& s : statuses) {
      s = values[rest % 3];
      rest /= 3;
      satisfied += s == Status::Satisfied;
      evaluated += s != Status::Unknown;
    }
    const auto c = compliance(with_statuses(statuses));
    CHECK(c.satisfied_count == satisfied);
    CHECK(c.evaluated_count == evaluated);
    CHECK(c.compliant == (satisfied >= 4));
    ++total;
    compliant += c.compliant;
    // Monotone: raising any dimension to satisfied keeps compliance.
    for (std::size_t i = 0; i < 6; ++i) {
      auto raised = statuses;
      raised[i] = Status::Satisfied;
      if (c.compliant) CHECK(compliance(with_statuses(raised)).compliant);
    }
  }
  CHECK(total == 729);
  // 4, 5 or 6 satisfied: C(6,4)*2^2 + C(6,5)*2 + 1
  CHECK(compliant == 15 * 4 + 6 * 2 + 1);
}

TEST_CASE("compliance: listed examples") {
  using S = Status;
  CHECK(compliance(with_statuses({S::Satisfied, S::Satisfied, S::Satisfied, S::Satisfied, S::Unsatisfied,
                                  S::Unsatisfied}))
            .compliant);
  CHECK_FALSE(compliance(with_statuses({S::Satisfied, S::Satisfied, S::Satisfied, S::Unknown, S::Unknown,
                                        S::Unknown}))
                  .compliant);
  CHECK(compliance(with_statuses({S::Satisfied, S::Satisfied, S::Satisfied, S::Satisfied, S::Satisfied,
                                  S::Satisfied}))
            .compliant);
}

TEST_CASE("dimensions: closed set of six") {
  CHECK(kDimensions.size() == 6);
  for (const auto d : kDimensions) CHECK(parse_dimension(dimension_id(d)) == d);
  CHECK_THROWS_AS(parse_dimension("readability"), Error);
}

TEST_CASE("prefill: short sentences without acronyms") {
  const auto text = metrics::segment("La licencia se pide en la oficina. Cuesta diez euros.", metrics::Language::es);
  const auto r = auto_prefill(text, snapshot_with_structure(1.0), {});
  CHECK(r.at(Dimension::LexicalClarity).status == Status::Satisfied);
  CHECK(r.at(Dimension::SyntacticSimplicity).status == Status::Satisfied);
  CHECK(r.at(Dimension::StructuralClarity).status == Status::Satisfied);
  for (const auto d : {Dimension::Relevance, Dimension::MultimodalSupport, Dimension::PromptModelAdaptation}) {
    CHECK(r.at(d).status == Status::Unknown);
    CHECK(r.at(d).source == Source::Auto);
  }
}

TEST_CASE("prefill: acronyms") {
  const auto check = [](const std::string& text, const std::set<std::string>& glossary) {
    return unexplained_acronyms(metrics::segment(text, metrics::Language::en), glossary);
  };
  CHECK(check("Your data is protected by GDPR rules.", {}) == std::vector<std::string>{"GDPR"});
  CHECK(check("Your data is protected by GDPR rules.", {"gdpr"}).empty());
  CHECK(check("The General Data Protection Regulation (GDPR) applies.", {}).empty());
  CHECK(check("GDPR (General Data Protection Regulation) applies.", {}).empty());
  CHECK(check("READ THIS NOTICE CAREFULLY.", {}).empty());
  CHECK(check("A short sentence.", {}).empty());

  const auto text = metrics::segment("Your data is protected by GDPR rules.", metrics::Language::en);
  const auto r = auto_prefill(text, snapshot_with_structure(1.0), {});
  CHECK(r.at(Dimension::LexicalClarity).status == Status::Unsatisfied);
  CHECK(r.at(Dimension::LexicalClarity).rationale.find("GDPR") != std::string::npos);
}

TEST_CASE("prefill: long sentences and missing structure metric") {
  const auto text = metrics::segment(testing::appendix_a("revision"), metrics::Language::es);
  const auto r = auto_prefill(text, metrics::MetricSnapshot{}, {});
  CHECK(r.at(Dimension::SyntacticSimplicity).status == Status::Unsatisfied);
  CHECK(r.at(Dimension::SyntacticSimplicity).rationale == "longest sentence has 26 words (limit 20)");
  CHECK(r.at(Dimension::StructuralClarity).status == Status::Unknown);
}

TEST_CASE("prefill: worked example approved output") {
  const auto text = metrics::segment(testing::appendix_a("revision"), metrics::Language::es);
  const auto r = auto_prefill(text, snapshot_with_structure(0.0), {}, "policy-1");
  const auto json = r.to_json().dump(2) + "\n";
  CHECK(json == testing::golden("appendix_a_prefill.json", json));
  CHECK(compliance(r).satisfied_count == 1);
}

TEST_CASE("merge: human entries override and need a rationale") {
  const auto text = metrics::segment("Texto corto.", metrics::Language::es);
  const auto base = auto_prefill(text, snapshot_with_structure(1.0), {});
  const auto merged = merge_review(base, {{"relevance", Status::Satisfied, "essentials preserved"}}, "rev-1");
  CHECK(merged.at(Dimension::Relevance) == Entry{Status::Satisfied, Source::Human, "essentials preserved"});
  CHECK(merged.reviewer_id == "rev-1");
  CHECK(merge_review(merged, {{"relevance", Status::Satisfied, "essentials preserved"}}, "rev-1") == merged);

  const auto overridden =
      merge_review(base, {{"lexical_clarity", Status::Unsatisfied, "'papeleos' is too colloquial"}}, "rev-1");
  CHECK(overridden.at(Dimension::LexicalClarity).status == Status::Unsatisfied);
  CHECK(overridden.at(Dimension::LexicalClarity).source == Source::Human);

  try {
    merge_review(base, {{"relevance", Status::Satisfied, "  "}}, "rev-1");
    FAIL("expected MissingRationale");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::MissingRationale);
  }
  try {
    merge_review(base, {{"tone", Status::Satisfied, "fine"}}, "rev-1");
    FAIL("expected UnknownDimension");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::UnknownDimension);
  }
}

TEST_CASE("json: round trip and agreement with the published schema") {
  const auto r = merge_review(with_statuses({Status::Satisfied, Status::Unknown, Status::Unsatisfied,
                                             Status::Satisfied, Status::Satisfied, Status::Unknown}),
                              {{"relevance", Status::Satisfied, "ok"}}, "rev-9");
  const auto j = r.to_json();
  CHECK(ChecklistResult::from_json(j) == r);

  const auto schema = nlohmann::json::parse(read_file(std::string(PLAINLOOP_TEST_DATA_DIR) + "/../schemas/checklist.schema.json"));
  std::set<std::string> required;
  for (const auto& d : schema["properties"]["entries"]["required"]) required.insert(d.get<std::string>());
  std::set<std::string> produced;
  for (const auto& [key, value] : j["entries"].items()) {
    produced.insert(key);
    for (const auto& field : schema["$defs"]["entry"]["required"]) CHECK(value.contains(field.get<std::string>()));
  }
  CHECK(produced == required);
  for (const auto& field : schema["required"]) CHECK(j.contains(field.get<std::string>()));
  CHECK(j["schema"] == schema["properties"]["schema"]["const"]);

  auto broken = j;
  broken["entries"].erase("relevance");
  CHECK_THROWS_AS(ChecklistResult::from_json(broken), Error);
}
