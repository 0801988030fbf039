#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include "plainloop/metrics/text_unit.hpp"

namespace plainloop::workflow {

struct GlossaryEntry {
  std::string term;
  std::string substitute;
  std::string note;

  bool operator==(const GlossaryEntry&) const = default;
};

// Approved substitutions, UTF-8 TSV: term, substitute, optional note.
class Glossary {
 public:
  static Glossary parse_tsv(std::string_view text);
  static Glossary load_tsv(const std::string& path);
  std::string to_tsv() const;

  // Replaces an entry with the same term (case-insensitive).
  void add(GlossaryEntry entry);
  const GlossaryEntry* find(const std::string& term) const;
  const std::vector<GlossaryEntry>& entries() const { return entries_; }
  // Lowercased terms, the form the checklist prefill expects.
  std::set<std::string> terms() const;
  bool empty() const { return entries_.empty(); }

  bool operator==(const Glossary&) const = default;

 private:
  std::vector<GlossaryEntry> entries_;
};

struct GenerationRequest {
  std::string source;
  std::string profile;
  std::string domain;
  std::vector<std::string> constraints;
  int attempt = 0;  // 0 for the first generation
};

class Generator {
 public:
  virtual ~Generator() = default;
  virtual std::string id() const = 0;
  virtual std::string generate(const GenerationRequest& request, const Glossary& glossary) const = 0;
};

// Deterministic stand-in for the generation stage: glossary substitutions,
// then long sentences are split at a conjunction near their middle.
class StubGenerator final : public Generator {
 public:
  explicit StubGenerator(std::size_t max_sentence_tokens = 20,
                         metrics::Language language = metrics::Language::es)
      : max_tokens_(max_sentence_tokens), language_(language) {}

  std::string id() const override { return "stub"; }
  std::string generate(const GenerationRequest& request, const Glossary& glossary) const override;

 private:
  std::size_t max_tokens_;
  metrics::Language language_;
};

std::string apply_glossary(const std::string& text, const Glossary& glossary, metrics::Language language);
std::string split_long_sentences(const std::string& text, std::size_t max_tokens, metrics::Language language);

}  // namespace plainloop::workflow
