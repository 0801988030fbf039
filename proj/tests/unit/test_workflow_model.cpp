#include <doctest.h>

#include <cmath>
#include <queue>
#include <random>
#include <set>

#include "plainloop/common/error.hpp"
#include "plainloop/ruledsl/parse.hpp"
#include "plainloop/workflow/generator.hpp"
#include "plainloop/workflow/governance.hpp"
#include "plainloop/workflow/routing.hpp"
#include "plainloop/workflow/transitions.hpp"
#include "plainloop/workflow/trends.hpp"

using namespace plainloop;
using namespace plainloop::workflow;

namespace {

TransitionInput input(Event e, bool high_risk = false) {
  TransitionInput in;
  in.event = e;
  in.high_risk = high_risk;
  return in;
}

std::vector<TransitionInput> all_inputs(bool high_risk) {
  std::vector<TransitionInput> out;
  for (const auto e : kEvents) {
    out.push_back(input(e, high_risk));
    for (const auto v : kVerdicts) {
      for (const bool compliant : {false, true}) {
        auto in = input(e, high_risk);
        in.verdict = v;
        in.compliant = compliant;
        out.push_back(in);
      }
    }
  }
  return out;
}

}  // namespace

TEST_CASE("relation entries") {
  CHECK(next_state(State::Generated, input(Event::SnapshotReady)) == State::Evaluated);
  CHECK(next_state(State::Evaluated, input(Event::RulesEvaluated)) == State::RuleChecked);
  CHECK(next_state(State::RuleChecked, input(Event::AutoApproved)) == State::Approved);
  CHECK(!next_state(State::RuleChecked, input(Event::AutoApproved, true)));
  auto review = input(Event::ReviewRecorded);
  review.verdict = Verdict::Approve;
  CHECK(!next_state(State::InReview, review));
  review.compliant = true;
  CHECK(next_state(State::InReview, review) == State::Approved);
  review.verdict = Verdict::RequestRegeneration;
  review.compliant = false;
  CHECK(next_state(State::InReview, review) == State::RegenerationRequested);
  CHECK(next_state(State::RegenerationRequested, input(Event::Regenerated)) == State::Generated);
  CHECK(next_state(State::AdaptationQueued, input(Event::AdaptationConsolidated)) ==
        State::RegenerationRequested);
}

TEST_CASE("Delivered is terminal") {
  for (const auto& in : all_inputs(false)) CHECK(!next_state(State::Delivered, in));
  try {
    apply_transition(State::Delivered, input(Event::SnapshotReady));
    FAIL("expected IllegalTransition");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::IllegalTransition);
    CHECK(std::string(e.what()).find("Delivered") != std::string::npos);
  }
}

TEST_CASE("names round trip") {
  for (const auto s : kStates) CHECK(parse_state(state_name(s)) == s);
  for (const auto e : kEvents) CHECK(parse_event(event_name(e)) == e);
  for (const auto v : kVerdicts) CHECK(parse_verdict(verdict_name(v)) == v);
  CHECK_THROWS_AS(parse_state("Done"), Error);
  const Transition t{State::InReview, Event::ReviewRecorded, State::Approved, Verdict::ApproveWithEdits, true};
  CHECK(Transition::from_json(t.to_json()) == t);
}

// Breadth-first search over (state, reviewed-approval seen) from Submitted.
TEST_CASE("model check: Delivered needs review approval for high-risk items") {
  for (const bool high_risk : {true, false}) {
    std::set<std::pair<State, bool>> seen;
    std::queue<std::pair<State, bool>> frontier;
    frontier.push({State::Submitted, false});
    seen.insert(frontier.front());
    bool delivered_unreviewed = false;
    bool delivered_reviewed = false;
    while (!frontier.empty()) {
      const auto [state, reviewed] = frontier.front();
      frontier.pop();
      if (state == State::Delivered) (reviewed ? delivered_reviewed : delivered_unreviewed) = true;
      for (const auto& in : all_inputs(high_risk)) {
        const auto to = next_state(state, in);
        if (!to) continue;
        const bool r = reviewed || (state == State::InReview && *to == State::Approved);
        if (seen.insert({*to, r}).second) frontier.push({*to, r});
      }
    }
    CHECK(delivered_reviewed);
    CHECK(delivered_unreviewed == !high_risk);
  }
}

TEST_CASE("model check: every approval edge is compliant and every state is reachable") {
  std::set<State> reached = {State::Submitted};
  std::queue<State> frontier;
  frontier.push(State::Submitted);
  while (!frontier.empty()) {
    const auto state = frontier.front();
    frontier.pop();
    for (const auto& in : all_inputs(false)) {
      const auto to = next_state(state, in);
      if (!to) continue;
      if (state == State::InReview && *to == State::Approved) CHECK(in.compliant);
      if (reached.insert(*to).second) frontier.push(*to);
    }
  }
  CHECK(reached.size() == kStates.size());
}

TEST_CASE("governance sampling") {
  GovernancePolicy p;
  p.rng_seed = 42;
  SUBCASE("boundaries") {
    p.sampling_rate = 0.0;
    for (int i = 0; i < 500; ++i) CHECK(!sample_for_review("id-" + std::to_string(i), p));
    p.sampling_rate = 1.0;
    for (int i = 0; i < 500; ++i) CHECK(sample_for_review("id-" + std::to_string(i), p));
  }
  SUBCASE("rate 0.07 over 10,000 ids") {
    p.sampling_rate = 0.07;
    int drawn = 0;
    for (int i = 0; i < 10000; ++i) drawn += sample_for_review("item-" + std::to_string(i), p);
    const double sigma = std::sqrt(10000 * 0.07 * 0.93);
    CHECK(std::abs(drawn - 700) <= 3 * sigma);
  }
  SUBCASE("deterministic per seed and id") {
    p.sampling_rate = 0.07;
    for (int i = 0; i < 100; ++i) {
      const auto id = "x" + std::to_string(i);
      CHECK(sample_for_review(id, p) == sample_for_review(id, p));
    }
  }
}

TEST_CASE("governance config") {
  KeyValueConfig kv;
  kv.set("governance.sampling_rate", "0.07");
  kv.set("governance.high_risk_domains", "health_dosage, legal_warning");
  kv.set("governance.rng_seed", "99");
  const auto p = GovernancePolicy::from_config(kv);
  CHECK(p.is_high_risk("health_dosage"));
  CHECK(!p.is_high_risk("public_administration"));
  CHECK(p.rng_seed == 99);
  for (const auto* rate : {"0.05", "0.10"}) {
    kv.set("governance.sampling_rate", rate);
    CHECK_NOTHROW(GovernancePolicy::from_config(kv));
  }
  for (const auto* rate : {"0.049", "0.101", "0", "1", "-0.07"}) {
    kv.set("governance.sampling_rate", rate);
    CHECK_THROWS_AS(GovernancePolicy::from_config(kv), Error);
  }
  kv.set("governance.sampling_rate", "0.07");
  kv.set("governance.rng_seed", "-3");
  CHECK_THROWS_AS(GovernancePolicy::from_config(kv), Error);
  kv.set("governance.rng_seed", "3");
  kv.set("workflow.regeneration_limit", "0");
  CHECK_THROWS_AS(GovernancePolicy::from_config(kv), Error);
}

namespace {

ruledsl::RuleOutcome listing_outcome(const std::map<std::string, double>& bindings) {
  const auto rules = ruledsl::load_rules(std::string(PLAINLOOP_TEST_DATA_DIR) + "/rules/oversight.eca");
  ruledsl::ThresholdTable table;
  table.set("*", "*", "theta_DSARI", 0.35);
  table.set("*", "*", "theta_SAMSA", 0.40);
  return ruledsl::evaluate(ruledsl::resolve(rules, table, "id", "x"), bindings);
}

RoutingContext quiet_context() {
  RoutingContext c;
  c.item_id = "quiet";
  c.policy.sampling_rate = 0.0;
  c.outcome = listing_outcome({{"readability_fh", 75}, {"bertscore", 0.9}, {"sari_deletions", 0.1},
                               {"alignscore", 0.9}, {"dsari", 0.5}, {"samsa", 0.5}});
  c.cqi = 0.9;
  return c;
}

}  // namespace

TEST_CASE("route examples") {
  auto c = quiet_context();
  CHECK(route(c).kind == RoutingDecision::Kind::AutoApprove);
  CHECK(route(c).reasons.empty());

  SUBCASE("fired rule") {
    c.outcome = listing_outcome({{"readability_fh", 85}, {"bertscore", 0.80}, {"sari_deletions", 0.1},
                                 {"alignscore", 0.9}, {"dsari", 0.5}, {"samsa", 0.5}});
    const auto d = route(c);
    CHECK(d.kind == RoutingDecision::Kind::Escalate);
    CHECK(d.reasons == std::vector<std::string>{"R1"});
  }
  SUBCASE("high risk") {
    c.high_risk = true;
    CHECK(route(c).reasons == std::vector<std::string>{kReasonHighRisk});
  }
  SUBCASE("cqi below gamma") {
    c.cqi = 0.74;
    CHECK(route(c).reasons == std::vector<std::string>{kReasonCqiBelowGamma});
    c.cqi = 0.75;
    CHECK(route(c).kind == RoutingDecision::Kind::AutoApprove);
  }
  SUBCASE("missing data") {
    c.outcome = listing_outcome({{"readability_fh", 75}, {"bertscore", 0.9}});
    CHECK(route(c).reasons == std::vector<std::string>{kReasonMissingData});
    c.cqi.reset();
    CHECK(route(c).reasons == std::vector<std::string>{kReasonMissingData});
  }
  SUBCASE("policy release and governance sample") {
    c.release_review_pending = true;
    c.policy.sampling_rate = 1.0;
    CHECK(route(c).reasons == std::vector<std::string>{kReasonPolicyRelease, kReasonGovernanceSample});
  }
  SUBCASE("quality trends") {
    c.trend.kpi5_unsatisfied_streak = 3;
    auto d = route(c);
    CHECK(d.kind == RoutingDecision::Kind::AdaptSignal);
    CHECK(d.adapt_signal);
    c.regenerations = 3;
    d = route(c);
    CHECK(d.kind == RoutingDecision::Kind::Escalate);
    CHECK(d.reasons == std::vector<std::string>{kReasonRegenerationLimit});
    c.regenerations = 0;
    c.high_risk = true;
    d = route(c);
    CHECK(d.kind == RoutingDecision::Kind::Escalate);
    CHECK(d.adapt_signal);
    c.high_risk = false;
    c.trend = {0, 0.70};
    CHECK(route(c).kind == RoutingDecision::Kind::AdaptSignal);
    c.trend = {2, 0.80};
    CHECK(route(c).kind == RoutingDecision::Kind::AutoApprove);
  }
}

TEST_CASE("route properties over random contexts") {
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> unit(0.0, 1.0);
  const std::set<std::string> fixed = {kReasonMissingData, kReasonCqiBelowGamma, kReasonHighRisk,
                                       kReasonPolicyRelease, kReasonGovernanceSample, kReasonRegenerationLimit};
  for (int i = 0; i < 2000; ++i) {
    RoutingContext c;
    c.item_id = "r" + std::to_string(i);
    c.policy.sampling_rate = 0.07;
    c.policy.rng_seed = 5;
    std::map<std::string, double> b;
    for (const auto* key : {"readability_fh", "bertscore", "sari_deletions", "alignscore", "dsari", "samsa"}) {
      if (unit(rng) < 0.9) b[key] = std::string(key) == "readability_fh" ? 100 * unit(rng) : unit(rng);
    }
    c.outcome = listing_outcome(b);
    if (unit(rng) < 0.9) c.cqi = unit(rng);
    c.high_risk = unit(rng) < 0.2;
    c.release_review_pending = unit(rng) < 0.1;
    c.trend.kpi5_unsatisfied_streak = static_cast<int>(rng() % 5);
    c.regenerations = static_cast<int>(rng() % 5);

    const auto d = route(c);
    CHECK(d == route(c));
    CHECK((d.kind == RoutingDecision::Kind::Escalate) == !d.reasons.empty());
    std::set<std::string> fired;
    for (const auto& f : c.outcome.fired) fired.insert(f.rule_id);
    for (const auto& r : d.reasons) CHECK((fired.count(r) || fixed.count(r)));
    if (c.high_risk) CHECK(d.kind == RoutingDecision::Kind::Escalate);
    CHECK(RoutingDecision::from_json(d.to_json()) == d);
  }
}

TEST_CASE("trend tracker") {
  TrendTracker t(3);
  CHECK(!t.snapshot().rolling_cqi);
  t.record_delivered_cqi(0.9);
  t.record_delivered_cqi(0.6);
  CHECK(!t.snapshot().rolling_cqi);
  t.record_delivered_cqi(0.6);
  CHECK(*t.snapshot().rolling_cqi == doctest::Approx(0.7));
  t.record_delivered_cqi(0.9);
  CHECK(*t.snapshot().rolling_cqi == doctest::Approx(0.7));
  t.record_kpi5(false);
  t.record_kpi5(false);
  CHECK(t.snapshot().kpi5_unsatisfied_streak == 2);
  t.record_kpi5(true);
  CHECK(t.snapshot().kpi5_unsatisfied_streak == 0);
  CHECK(adaptation_due({3, std::nullopt}, 3, 0.75));
  CHECK(!adaptation_due({2, 0.75}, 3, 0.75));
}

TEST_CASE("stub generator") {
  const auto glossary = Glossary::parse_tsv(
      "# term\tsubstitute\tnote\npapeleos\ttrámites administrativos\tregister\nabonar\tpagar\n");
  CHECK(glossary.entries().size() == 2);
  CHECK(glossary.terms() == std::set<std::string>{"abonar", "papeleos"});
  CHECK(apply_glossary("Debe abonar la tasa y traer los papeleos.", glossary, metrics::Language::es) ==
        "Debe pagar la tasa y traer los trámites administrativos.");
  CHECK(apply_glossary("Abonar antes del lunes.", glossary, metrics::Language::es) == "Pagar antes del lunes.");
  CHECK(apply_glossary("Sin cambios aquí.", glossary, metrics::Language::es) == "Sin cambios aquí.");

  const std::string long_sentence =
      "Las personas que quieran cazar en la región necesitan una licencia vigente y deben llevar siempre "
      "consigo el documento que acredita el seguro obligatorio.";
  const auto split = split_long_sentences(long_sentence, 20, metrics::Language::es);
  CHECK(split ==
        "Las personas que quieran cazar en la región necesitan una licencia vigente. Deben llevar siempre "
        "consigo el documento que acredita el seguro obligatorio.");
  const auto unit = metrics::segment(split, metrics::Language::es);
  for (const auto& s : unit.sentences()) CHECK(s.tokens.size() <= 20);

  StubGenerator gen;
  GenerationRequest req{"Debe abonar la tasa.", "id", "x", {}, 0};
  CHECK(gen.generate(req, glossary) == "Debe pagar la tasa.");
  CHECK(gen.generate(req, glossary) == gen.generate(req, glossary));
  req.source = "  ";
  CHECK_THROWS_AS(gen.generate(req, glossary), Error);
  CHECK_THROWS_AS(Glossary::parse_tsv("solo-un-campo\n"), Error);
  auto g2 = glossary;
  g2.add({"PAPELEOS", "gestiones", ""});
  CHECK(g2.entries().size() == 2);
  CHECK(g2.find("papeleos")->substitute == "gestiones");
  CHECK(Glossary::parse_tsv(g2.to_tsv()) == g2);
}
