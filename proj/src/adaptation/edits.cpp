#include "plainloop/adaptation/edits.hpp"

#include <map>

#include "plainloop/common/error.hpp"

namespace plainloop::adaptation {

using audit::EventKind;
using nlohmann::json;
using workflow::TermEdit;

namespace {

struct ItemContext {
  std::string source_ref;
  std::string profile;
  std::string domain;
  metrics::Language language = metrics::Language::es;
  std::vector<std::string> constraints;
};

void collect_texts(const json& j, std::map<std::string, std::string>& texts) {
  if (audit::is_text(j)) {
    texts[j["ref"].get<std::string>()] = j["text"].get<std::string>();
    return;
  }
  if (j.is_object() || j.is_array()) {
    for (const auto& v : j) collect_texts(v, texts);
  }
}

std::optional<std::string> lookup(const std::map<std::string, std::string>& texts, const std::string& ref) {
  const auto it = texts.find(ref);
  if (it == texts.end()) return std::nullopt;
  return it->second;
}

std::string join(const std::vector<std::string>& tokens, std::size_t from, std::size_t to) {
  std::string out;
  for (std::size_t i = from; i < to; ++i) {
    if (!out.empty()) out.push_back(' ');
    out += tokens[i];
  }
  return out;
}

}  // namespace

std::vector<DecisionRecord> decisions_from_log(const std::vector<audit::AuditEvent>& events, std::uint64_t first,
                                               std::uint64_t last) {
  std::map<std::string, std::string> texts;
  std::map<std::string, ItemContext> items;
  std::vector<DecisionRecord> out;
  for (const auto& e : events) {
    if (e.kind == EventKind::Submitted || e.kind == EventKind::Snapshot) collect_texts(e.payload, texts);
    if (e.kind == EventKind::Submitted) {
      ItemContext c;
      if (e.payload.contains("source")) c.source_ref = audit::text_ref(e.payload["source"]);
      c.profile = e.payload.value("profile", "");
      c.domain = e.payload.value("domain", "");
      c.language = metrics::parse_language(e.payload.value("language", "es"));
      if (e.payload.contains("constraints")) c.constraints = e.payload["constraints"].get<std::vector<std::string>>();
      items[e.item_id] = c;
    }
    if (e.kind != EventKind::ReviewDecision || e.seq < first || e.seq > last) continue;
    try {
      DecisionRecord r;
      r.decision_id = e.seq;
      r.item_id = e.item_id;
      r.verdict = workflow::parse_verdict(e.payload.at("verdict").get<std::string>());
      r.reviewer_id = e.payload.value("reviewer_id", e.actor);
      r.rationale = e.payload.value("rationale", "");
      r.policy_version = e.policy_version;
      r.checklist = checklist::ChecklistResult::from_json(e.payload.at("checklist"));
      for (const auto& t : e.payload.value("term_edits", json::array())) {
        r.term_edits.push_back({t.at("from").get<std::string>(), t.at("to").get<std::string>()});
      }
      if (const auto it = items.find(e.item_id); it != items.end()) {
        r.profile = it->second.profile;
        r.domain = it->second.domain;
        r.language = it->second.language;
        r.constraints = it->second.constraints;
        r.source = lookup(texts, it->second.source_ref);
      }
      r.candidate = lookup(texts, e.payload.value("candidate_ref", ""));
      if (r.verdict == workflow::Verdict::ApproveWithEdits) r.output = lookup(texts, e.payload.value("output_ref", ""));
      out.push_back(std::move(r));
    } catch (const json::exception& ex) {
      throw Error(ErrorCode::InvalidInput,
                  "malformed ReviewDecision event " + std::to_string(e.seq) + ": " + ex.what());
    }
  }
  return out;
}

std::vector<TermEdit> lexical_edits(const std::string& before, const std::string& after,
                                    metrics::Language language, std::size_t max_span) {
  const auto a = metrics::segment(before, language).lower_tokens();
  const auto b = metrics::segment(after, language).lower_tokens();
  // Longest common subsequence table, then walk it to recover hunks.
  std::vector<std::vector<std::size_t>> lcs(a.size() + 1, std::vector<std::size_t>(b.size() + 1, 0));
  for (std::size_t i = a.size(); i-- > 0;) {
    for (std::size_t j = b.size(); j-- > 0;) {
      lcs[i][j] = a[i] == b[j] ? lcs[i + 1][j + 1] + 1 : std::max(lcs[i + 1][j], lcs[i][j + 1]);
    }
  }
  std::vector<TermEdit> edits;
  std::size_t i = 0;
  std::size_t j = 0;
  while (i < a.size() || j < b.size()) {
    if (i < a.size() && j < b.size() && a[i] == b[j]) {
      ++i;
      ++j;
      continue;
    }
    const auto i0 = i;
    const auto j0 = j;
    while ((i < a.size() || j < b.size()) && !(i < a.size() && j < b.size() && a[i] == b[j])) {
      if (j >= b.size() || (i < a.size() && lcs[i + 1][j] >= lcs[i][j + 1])) {
        ++i;
      } else {
        ++j;
      }
    }
    const auto removed = i - i0;
    const auto added = j - j0;
    if (removed > 0 && added > 0 && removed <= max_span && added <= max_span) {
      edits.push_back({join(a, i0, i), join(b, j0, j)});
    }
  }
  return edits;
}

}  // namespace plainloop::adaptation
