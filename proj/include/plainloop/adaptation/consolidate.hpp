#pragma once

#include <cstdint>
#include <json.hpp>
#include <set>
#include <string>
#include <vector>

#include "plainloop/adaptation/edits.hpp"
#include "plainloop/workflow/pipeline.hpp"
#include "plainloop/workflow/policy_store.hpp"

namespace plainloop::adaptation {

struct GlossaryAddition {
  std::string term;
  std::string substitute;
  std::string note;
  std::vector<std::uint64_t> decision_ids;  // ApproveWithEdits decisions behind it
  std::set<std::string> items;

  nlohmann::json to_json() const;
  bool operator==(const GlossaryAddition&) const = default;
};

struct ThresholdProposal {
  std::string profile;
  std::string domain;
  std::string symbol;
  double current = 0.0;
  double proposed = 0.0;
  std::size_t evidence = 0;

  nlohmann::json to_json() const;
  bool operator==(const ThresholdProposal&) const = default;
};

struct PolicyUpdate {
  std::vector<GlossaryAddition> glossary_additions;
  // Edits seen on fewer than m items, kept for reviewers to confirm.
  std::vector<GlossaryAddition> glossary_candidates;
  std::vector<std::string> prompt_constraint_deltas;
  std::vector<ThresholdProposal> threshold_proposals;

  bool version_bump() const {
    return !glossary_additions.empty() || !prompt_constraint_deltas.empty() || !threshold_proposals.empty();
  }
  nlohmann::json to_json() const;
  bool operator==(const PolicyUpdate&) const = default;
};

struct ConsolidateOptions {
  std::size_t min_repetitions = 2;  // m
  std::size_t max_sentence_tokens = 20;
};

// Constraint text added when a checklist dimension keeps failing.
std::string constraint_for(checklist::Dimension dimension, std::size_t max_sentence_tokens = 20);

// Deterministic and insensitive to order or duplicates in `decisions`.
// Edits and failures already covered by `current` are left out.
PolicyUpdate consolidate(const std::vector<DecisionRecord>& decisions, const workflow::PolicyBundle& current,
                         const ConsolidateOptions& options = {});

// Glossary additions and constraint deltas, plus only those threshold
// proposals a human confirmed.
workflow::PolicyChange to_policy_change(const PolicyUpdate& update,
                                        const std::vector<ThresholdProposal>& confirmed);

// Publishes the change through the pipeline (one PolicyChange event). Does
// nothing and returns the current version when there is nothing to apply.
std::uint64_t apply_update(workflow::Pipeline& pipeline, const PolicyUpdate& update,
                           const std::vector<ThresholdProposal>& confirmed, const std::string& actor);

}  // namespace plainloop::adaptation
