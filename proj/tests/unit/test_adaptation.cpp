#include <doctest.h>

#include <algorithm>
#include <random>

#include "plainloop/adaptation/consolidate.hpp"
#include "plainloop/adaptation/preferences.hpp"
#include "plainloop/adaptation/recalibrate.hpp"
#include "plainloop/common/error.hpp"
#include "workflow_fixture.hpp"

using namespace plainloop;
using namespace plainloop::adaptation;
using workflow::State;
using workflow::Verdict;
using plainloop::testing::appendix_a;
using plainloop::testing::checklist_with;
using plainloop::testing::make_pipeline;

namespace {

workflow::ReviewDecision decision(const std::string& id, Verdict v, int satisfied) {
  workflow::ReviewDecision d;
  d.item_id = id;
  d.verdict = v;
  d.checklist = checklist_with(satisfied);
  d.reviewer_id = "rev-1";
  d.rationale = "reviewed";
  return d;
}

// Runs the worked example under `id` through an edit approval.
void edit_worked_example(workflow::Pipeline& p, const std::string& id, bool explicit_edit = true) {
  auto request = testing::appendix_a_request();
  request.id = id;
  p.submit_and_process(request);
  auto d = decision(id, Verdict::ApproveWithEdits, 4);
  d.edited_output = appendix_a("revision");
  if (explicit_edit) d.term_edits = {{"papeleos", "trámites administrativos"}};
  REQUIRE(p.record_decision(d).state == State::Delivered);
}

DecisionRecord record(std::uint64_t id, const std::string& item, Verdict v,
                      std::vector<workflow::TermEdit> edits = {}, int satisfied = 6) {
  DecisionRecord r;
  r.decision_id = id;
  r.item_id = item;
  r.verdict = v;
  r.checklist = checklist_with(satisfied);
  r.term_edits = std::move(edits);
  return r;
}

kpi::UserSignals synonym_signals() {
  return kpi::UserSignals::load(testing::data_path("signals/synonym_judgments.jsonl"));
}

}  // namespace

TEST_CASE("decisions are read back from the audit log") {
  auto p = make_pipeline();
  edit_worked_example(*p, "a1");
  const auto decisions = decisions_from_log(p->audit().events());
  REQUIRE(decisions.size() == 1);
  const auto& d = decisions[0];
  CHECK(d.item_id == "a1");
  CHECK(d.verdict == Verdict::ApproveWithEdits);
  CHECK(d.profile == "id");
  CHECK(d.domain == "public_administration");
  CHECK(d.source == appendix_a("original"));
  CHECK(d.candidate == appendix_a("initial_adapted"));
  CHECK(d.output == appendix_a("revision"));
  CHECK(checklist::compliance(d.checklist).satisfied_count == 4);
  CHECK(d.term_edits == std::vector<workflow::TermEdit>{{"papeleos", "trámites administrativos"}});
  CHECK(decisions_from_log(p->audit().events(), d.decision_id + 1).empty());
}

TEST_CASE("one edit becomes a candidate, two independent ones a glossary entry") {
  auto p = make_pipeline();
  edit_worked_example(*p, "a1");
  auto update = consolidate(decisions_from_log(p->audit().events()), *p->policy());
  CHECK(update.glossary_additions.empty());
  REQUIRE(update.glossary_candidates.size() == 1);
  CHECK(update.glossary_candidates[0].term == "papeleos");
  CHECK(update.glossary_candidates[0].substitute == "trámites administrativos");
  CHECK_FALSE(update.version_bump());

  edit_worked_example(*p, "a2");
  update = consolidate(decisions_from_log(p->audit().events()), *p->policy());
  REQUIRE(update.glossary_additions.size() == 1);
  CHECK(update.glossary_additions[0].term == "papeleos");
  CHECK(update.glossary_additions[0].items == std::set<std::string>{"a1", "a2"});
  CHECK(update.glossary_candidates.empty());
  CHECK(update.version_bump());

  const auto before = p->policy()->version;
  CHECK(apply_update(*p, update, {}, "operator") == before + 1);
  const auto* entry = p->policy()->glossary.find("papeleos");
  REQUIRE(entry);
  CHECK(entry->substitute == "trámites administrativos");
  // Already in the glossary: nothing left to propose.
  const auto again = consolidate(decisions_from_log(p->audit().events()), *p->policy());
  CHECK(again.glossary_additions.empty());
  CHECK_FALSE(again.version_bump());
  CHECK(apply_update(*p, again, {}, "operator") == before + 1);
}

TEST_CASE("the same item edited twice counts once") {
  const auto edit = std::vector<workflow::TermEdit>{{"papeleos", "trámites"}};
  const auto update = consolidate({record(3, "a", Verdict::ApproveWithEdits, edit),
                                   record(9, "a", Verdict::ApproveWithEdits, edit)},
                                  testing::fixture_policy());
  CHECK(update.glossary_additions.empty());
  REQUIRE(update.glossary_candidates.size() == 1);
  CHECK(update.glossary_candidates[0].decision_ids == std::vector<std::uint64_t>{3, 9});
}

TEST_CASE("no decisions, no change") {
  const auto update = consolidate({}, testing::fixture_policy());
  CHECK(update == PolicyUpdate{});
  CHECK_FALSE(update.version_bump());
  CHECK(to_policy_change(update, {}).empty());
}

TEST_CASE("repeated syntactic failures add a sentence-length constraint") {
  auto make = [](std::uint64_t id, const std::string& item) {
    auto r = record(id, item, Verdict::ApproveWithEdits);
    r.checklist.set(checklist::Dimension::SyntacticSimplicity,
                    {checklist::Status::Unsatisfied, checklist::Source::Human, "long sentences"});
    return r;
  };
  const auto update = consolidate({make(1, "x"), make(2, "y"), make(3, "z")}, testing::fixture_policy());
  CHECK(update.prompt_constraint_deltas == std::vector<std::string>{"split sentences above 20 words"});
  CHECK(update.version_bump());

  auto policy = testing::fixture_policy();
  policy.constraints.push_back("split sentences above 20 words");
  CHECK(consolidate({make(1, "x"), make(2, "y")}, policy).prompt_constraint_deltas.empty());
  CHECK(consolidate({make(1, "x")}, testing::fixture_policy()).prompt_constraint_deltas.empty());
}

TEST_CASE("consolidation ignores order and duplicates") {
  std::mt19937 rng(7);
  const std::vector<std::string> terms = {"papeleos", "expedir", "abonar", "tramitar"};
  const std::vector<std::string> subs = {"trámites", "dar", "pagar", "hacer"};
  const auto policy = testing::fixture_policy();
  for (int round = 0; round < 200; ++round) {
    std::vector<DecisionRecord> decisions;
    const int n = 1 + static_cast<int>(rng() % 8);
    for (int i = 0; i < n; ++i) {
      std::vector<workflow::TermEdit> edits;
      const auto k = rng() % terms.size();
      edits.push_back({terms[k], subs[rng() % subs.size()]});
      const auto v = rng() % 3 ? Verdict::ApproveWithEdits : Verdict::Approve;
      decisions.push_back(record(static_cast<std::uint64_t>(i + 1), "i" + std::to_string(rng() % 4), v, edits,
                                 4 + static_cast<int>(rng() % 3)));
    }
    const auto expected = consolidate(decisions, policy);
    auto shuffled = decisions;
    shuffled.insert(shuffled.end(), decisions.begin(), decisions.begin() + static_cast<long>(rng() % decisions.size()));
    std::shuffle(shuffled.begin(), shuffled.end(), rng);
    const auto got = consolidate(shuffled, policy);
    CHECK(got == expected);
    CHECK(got.version_bump() == (!got.glossary_additions.empty() || !got.prompt_constraint_deltas.empty()));
    // At most one promoted substitute per term.
    std::set<std::string> seen;
    for (const auto& g : got.glossary_additions) CHECK(seen.insert(g.term).second);
  }
}

TEST_CASE("lexical diff finds short replacements") {
  const auto edits = lexical_edits("Debe abonar la tasa en el banco.", "Debe pagar la tasa en el banco.",
                                   metrics::Language::es);
  CHECK(edits == std::vector<workflow::TermEdit>{{"abonar", "pagar"}});
  CHECK(lexical_edits("Hola.", "Hola.", metrics::Language::es).empty());
  // Pure insertion is not a substitution.
  CHECK(lexical_edits("Pida cita.", "Pida cita hoy.", metrics::Language::es).empty());
  // Falls back to the diff when the reviewer listed no term edits.
  auto p = make_pipeline();
  auto r1 = testing::plain_request("b1");
  r1.source = r1.candidate.value() + " Debe solicitar la tasa.";
  r1.candidate = r1.source;
  r1.domain = "health_dosage";  // high risk: always reviewed
  for (const auto& id : {"b1", "b2"}) {
    auto r = r1;
    r.id = id;
    REQUIRE(p->submit_and_process(r).state == State::InReview);
    auto d = decision(id, Verdict::ApproveWithEdits, 6);
    d.edited_output = "El centro abre el lunes. Puedes pedir cita por teléfono. Debe pedir la tasa.";
    p->record_decision(d);
  }
  const auto update = consolidate(decisions_from_log(p->audit().events()), *p->policy());
  REQUIRE(update.glossary_additions.size() == 1);
  CHECK(update.glossary_additions[0].term == "solicitar");
  CHECK(update.glossary_additions[0].substitute == "pedir");
}

TEST_CASE("one preference pair per edited approval") {
  auto p = make_pipeline();
  edit_worked_example(*p, "a1");
  edit_worked_example(*p, "a2", false);
  auto request = testing::appendix_a_request();
  request.id = "a3";
  p->submit_and_process(request);
  auto approve = decision("a3", Verdict::Approve, 5);
  p->record_decision(approve);

  const auto decisions = decisions_from_log(p->audit().events());
  REQUIRE(decisions.size() == 3);
  const auto exported = export_preferences(decisions);
  const auto edited = std::count_if(decisions.begin(), decisions.end(),
                                    [](const DecisionRecord& d) { return d.verdict == Verdict::ApproveWithEdits; });
  CHECK(exported.pairs.size() == static_cast<std::size_t>(edited));
  const auto& pair = exported.pairs[0];
  CHECK(pair.chosen == appendix_a("revision"));
  CHECK(pair.rejected == appendix_a("initial_adapted"));
  CHECK(pair.context["source"] == appendix_a("original"));
  CHECK(pair.context["profile"] == "id");
  CHECK(pair.provenance["item_id"] == "a1");
  CHECK(pair.provenance["reviewer_id"] == "rev-1");

  const auto jsonl = preferences_jsonl(exported.pairs);
  CHECK(std::count(jsonl.begin(), jsonl.end(), '\n') == 2);
  for (const auto& line : split(jsonl, '\n')) {
    if (line.empty()) continue;
    const auto j = nlohmann::json::parse(line);
    for (const auto* key : {"context", "chosen", "rejected", "provenance"}) CHECK(j.contains(key));
  }

  const auto seq = record_export(p->audit(), exported, "operator", p->policy()->version_string(), "2026-03-01T00:00:00Z");
  const auto event = p->audit().events().back();
  CHECK(event.seq == seq);
  CHECK(event.kind == audit::EventKind::AdaptationExport);
  CHECK(event.payload["decision_ids"].size() == 2);

  // Redacted items drop out of later exports.
  p->audit().redact("a1", "privacy-officer", "2026-03-02T00:00:00Z");
  const auto after = export_preferences(decisions_from_log(p->audit().events()));
  CHECK(after.pairs.size() == 1);
  CHECK(after.skipped_redacted.size() == 1);
}

TEST_CASE("threshold recalibration from user signals") {
  const auto signals = synonym_signals();
  const auto policy = testing::fixture_policy();
  const auto proposals = recalibrate(signals, policy);
  const auto older = std::find_if(proposals.begin(), proposals.end(),
                                  [](const ThresholdProposal& t) { return t.profile == "older_adults"; });
  REQUIRE(older != proposals.end());
  CHECK(older->symbol == "theta_profile");
  CHECK(std::fabs(older->current - 0.834) < 1e-12);
  CHECK(std::fabs(older->proposed - 0.784) < 1e-9);

  CHECK_FALSE(recalibrate_profile(signals, "older_adults", 0.784).has_value());
  RecalibrateOptions wide;
  wide.margin = 2.0;
  CHECK(recalibrate_profile(signals, "older_adults", 0.5, wide)->proposed == 0.0);

  kpi::UserSignals few;
  few.synonym_judgments.assign(signals.synonym_judgments.begin(), signals.synonym_judgments.begin() + 10);
  for (auto& j : few.synonym_judgments) j.profile = "older_adults";
  try {
    recalibrate_profile(few, "older_adults", 0.834);
    FAIL("expected InsufficientData");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InsufficientData);
  }

  // Proposals are never applied on their own; only confirmed ones reach the policy.
  PolicyUpdate update;
  update.threshold_proposals = proposals;
  CHECK(to_policy_change(update, {}).thresholds.empty());
  auto p = make_pipeline();
  const auto v = apply_update(*p, update, {*older}, "operator");
  CHECK(v == 2);
  CHECK(std::fabs(p->policy()->kpi.theta_profile.at("older_adults") - 0.784) < 1e-9);
  ThresholdProposal bogus = *older;
  bogus.proposed = 0.1;
  try {
    to_policy_change(update, {bogus});
    FAIL("expected InvalidArgument");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::InvalidArgument);
  }
}
