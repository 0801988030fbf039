#include "plainloop/adaptation/consolidate.hpp"

#include <algorithm>
#include <map>

#include "plainloop/common/error.hpp"
#include "plainloop/common/utf8.hpp"

namespace plainloop::adaptation {

using nlohmann::json;

json GlossaryAddition::to_json() const {
  return {{"term", term}, {"substitute", substitute}, {"note", note}, {"decision_ids", decision_ids},
          {"items", items}};
}

json ThresholdProposal::to_json() const {
  return {{"profile", profile}, {"domain", domain},     {"symbol", symbol},
          {"current", current}, {"proposed", proposed}, {"evidence", evidence}};
}

json PolicyUpdate::to_json() const {
  json j = {{"glossary_additions", json::array()},
            {"glossary_candidates", json::array()},
            {"prompt_constraint_deltas", prompt_constraint_deltas},
            {"threshold_proposals", json::array()},
            {"version_bump", version_bump()}};
  for (const auto& g : glossary_additions) j["glossary_additions"].push_back(g.to_json());
  for (const auto& g : glossary_candidates) j["glossary_candidates"].push_back(g.to_json());
  for (const auto& t : threshold_proposals) j["threshold_proposals"].push_back(t.to_json());
  return j;
}

std::string constraint_for(checklist::Dimension dimension, std::size_t max_sentence_tokens) {
  switch (dimension) {
    case checklist::Dimension::LexicalClarity:
      return "replace uncommon words with everyday ones and explain technical terms";
    case checklist::Dimension::SyntacticSimplicity:
      return "split sentences above " + std::to_string(max_sentence_tokens) + " words";
    case checklist::Dimension::StructuralClarity:
      return "use short paragraphs and list the steps";
    case checklist::Dimension::Relevance:
      return "keep only the information the reader needs to act";
    case checklist::Dimension::MultimodalSupport:
      return "suggest a pictogram or image for each key step";
    case checklist::Dimension::PromptModelAdaptation:
      return "adapt vocabulary and length to the reader profile";
  }
  return {};
}

PolicyUpdate consolidate(const std::vector<DecisionRecord>& decisions, const workflow::PolicyBundle& current,
                         const ConsolidateOptions& options) {
  // Set semantics: one entry per decision id, processed in id order.
  std::map<std::uint64_t, const DecisionRecord*> unique;
  for (const auto& d : decisions) unique.emplace(d.decision_id, &d);

  struct EditEvidence {
    std::string term;  // as first written
    std::string substitute;
    std::set<std::uint64_t> decisions;
    std::set<std::string> items;
  };
  std::map<std::pair<std::string, std::string>, EditEvidence> edits;
  std::map<checklist::Dimension, std::set<std::string>> failures;

  for (const auto& [id, d] : unique) {
    for (const auto dim : checklist::kDimensions) {
      if (d->checklist.at(dim).status == checklist::Status::Unsatisfied) failures[dim].insert(d->item_id);
    }
    if (d->verdict != workflow::Verdict::ApproveWithEdits) continue;
    auto term_edits = d->term_edits;
    if (term_edits.empty() && d->candidate && d->output) {
      term_edits = lexical_edits(*d->candidate, *d->output, d->language);
    }
    for (const auto& e : term_edits) {
      const auto key = std::make_pair(utf8::to_lower(trim(e.from)), utf8::to_lower(trim(e.to)));
      auto& ev = edits[key];
      if (ev.term.empty()) {
        ev.term = key.first;
        ev.substitute = key.second;
      }
      ev.decisions.insert(id);
      ev.items.insert(d->item_id);
    }
  }

  PolicyUpdate update;
  // One substitute per term: most items wins, ties go to the smaller text.
  std::map<std::string, const EditEvidence*> best;
  for (const auto& [key, ev] : edits) {
    auto& slot = best[key.first];
    if (!slot || ev.items.size() > slot->items.size()) slot = &ev;
  }
  for (const auto& [key, ev] : edits) {
    GlossaryAddition g{ev.term, ev.substitute, "", {ev.decisions.begin(), ev.decisions.end()}, ev.items};
    const auto* existing = current.glossary.find(ev.term);
    if (existing && utf8::to_lower(existing->substitute) == ev.substitute) continue;
    const bool promoted = ev.items.size() >= options.min_repetitions && best[key.first] == &ev;
    g.note = "reviewer edits on " + std::to_string(ev.items.size()) + " item(s)";
    (promoted ? update.glossary_additions : update.glossary_candidates).push_back(std::move(g));
  }

  for (const auto& [dim, items] : failures) {
    if (items.size() < options.min_repetitions) continue;
    auto text = constraint_for(dim, options.max_sentence_tokens);
    if (std::find(current.constraints.begin(), current.constraints.end(), text) != current.constraints.end()) {
      continue;
    }
    update.prompt_constraint_deltas.push_back(std::move(text));
  }
  return update;
}

workflow::PolicyChange to_policy_change(const PolicyUpdate& update, const std::vector<ThresholdProposal>& confirmed) {
  workflow::PolicyChange change;
  for (const auto& g : update.glossary_additions) {
    change.glossary_additions.push_back({g.term, g.substitute, g.note});
  }
  change.constraint_additions = update.prompt_constraint_deltas;
  for (const auto& c : confirmed) {
    if (std::find(update.threshold_proposals.begin(), update.threshold_proposals.end(), c) ==
        update.threshold_proposals.end()) {
      throw Error(ErrorCode::InvalidArgument,
                  "confirmed threshold " + c.symbol + " for " + c.profile + " is not among the proposals");
    }
    change.thresholds.push_back({c.profile, c.domain, c.symbol, c.proposed,
                                 "recalibrated from " + std::to_string(c.evidence) + " observations"});
  }
  change.reason = "adaptation consolidation";
  return change;
}

std::uint64_t apply_update(workflow::Pipeline& pipeline, const PolicyUpdate& update,
                           const std::vector<ThresholdProposal>& confirmed, const std::string& actor) {
  const auto change = to_policy_change(update, confirmed);
  if (change.empty()) return pipeline.policy()->version;
  return pipeline.apply_policy(change, actor);
}

}  // namespace plainloop::adaptation
