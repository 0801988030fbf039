#include "plainloop/metrics/sari.hpp"

#include <algorithm>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "plainloop/common/error.hpp"

namespace plainloop::metrics {

namespace {

using Counter = std::unordered_map<std::string, long>;

Counter ngrams(const std::vector<std::string>& tokens, std::size_t order) {
  Counter counts;
  if (tokens.size() < order) return counts;
  for (std::size_t i = 0; i + order <= tokens.size(); ++i) {
    std::string gram = tokens[i];
    for (std::size_t k = 1; k < order; ++k) {
      gram.push_back('\x1f');
      gram += tokens[i + k];
    }
    ++counts[gram];
  }
  return counts;
}

long count_of(const Counter& counter, const std::string& key) {
  const auto it = counter.find(key);
  return it == counter.end() ? 0 : it->second;
}

double f1(double precision, double recall) {
  return precision + recall > 0.0 ? 2.0 * precision * recall / (precision + recall) : 0.0;
}

struct OrderScores {
  double keep = 0.0;
  double del = 0.0;
  double add = 0.0;
};

OrderScores score_order(const Counter& source, const Counter& output,
                        const std::vector<Counter>& refs) {
  const long numref = static_cast<long>(refs.size());
  Counter ref_counts;
  for (const auto& ref : refs) {
    for (const auto& [gram, count] : ref) ref_counts[gram] += count;
  }

  // keep: grams of the source that survive in the output
  double keep_p_sum = 0.0;
  double keep_r_sum = 0.0;
  std::size_t keep_size = 0;
  std::size_t keep_all_size = 0;
  // del: grams of the source that the output drops
  double del_p_sum = 0.0;
  std::size_t del_size = 0;
  for (const auto& [gram, s] : source) {
    const long s_rep = s * numref;
    const long c_rep = count_of(output, gram) * numref;
    const long r = count_of(ref_counts, gram);

    const long keep = std::min(s_rep, c_rep);
    const long keep_all = std::min(s_rep, r);
    if (keep_all > 0) ++keep_all_size;
    if (keep > 0) {
      ++keep_size;
      const long good = std::min(keep, r);
      if (good > 0) {
        keep_p_sum += static_cast<double>(good) / keep;
        keep_r_sum += static_cast<double>(good) / keep_all;
      }
    }

    const long del = s_rep - c_rep;
    if (del > 0) {
      ++del_size;
      const long good = std::max(0L, del - r);
      del_p_sum += static_cast<double>(good) / del;
    }
  }

  OrderScores scores;
  const double keep_p = keep_size > 0 ? keep_p_sum / keep_size : 0.0;
  const double keep_r = keep_all_size > 0 ? keep_r_sum / keep_all_size : 0.0;
  scores.keep = f1(keep_p, keep_r);
  scores.del = del_size > 0 ? del_p_sum / del_size : 0.0;

  // add: grams in the output that were not in the source (set semantics)
  std::size_t added = 0;
  std::size_t added_good = 0;
  for (const auto& [gram, c] : output) {
    if (source.count(gram) != 0) continue;
    ++added;
    if (ref_counts.count(gram) != 0) ++added_good;
  }
  std::size_t addable = 0;
  for (const auto& [gram, r] : ref_counts) {
    if (source.count(gram) == 0) ++addable;
  }
  const double add_p = added > 0 ? static_cast<double>(added_good) / added : 0.0;
  const double add_r = addable > 0 ? static_cast<double>(added_good) / addable : 0.0;
  scores.add = f1(add_p, add_r);
  return scores;
}

}  // namespace

double deletions_fraction(const std::vector<std::string>& source,
                          const std::vector<std::string>& output) {
  const std::unordered_set<std::string> source_types(source.begin(), source.end());
  if (source_types.empty()) return 0.0;
  const std::unordered_set<std::string> output_types(output.begin(), output.end());
  std::size_t deleted = 0;
  for (const auto& type : source_types) {
    if (output_types.count(type) == 0) ++deleted;
  }
  return static_cast<double>(deleted) / static_cast<double>(source_types.size());
}

SariScore sari(const std::vector<std::string>& source, const std::vector<std::string>& output,
               const std::vector<std::vector<std::string>>& references) {
  if (references.empty()) throw Error(ErrorCode::NoReferences, "SARI needs at least one reference");
  const std::set<std::vector<std::string>> distinct(references.begin(), references.end());

  SariScore score;
  for (std::size_t order = 1; order <= 4; ++order) {
    std::vector<Counter> refs;
    refs.reserve(distinct.size());
    for (const auto& ref : distinct) refs.push_back(ngrams(ref, order));
    const auto scores = score_order(ngrams(source, order), ngrams(output, order), refs);
    score.keep_f1 += scores.keep / 4.0;
    score.del_precision += scores.del / 4.0;
    score.add_f1 += scores.add / 4.0;
  }
  score.overall = (score.add_f1 + score.keep_f1 + score.del_precision) / 3.0;
  score.deletions_fraction = deletions_fraction(source, output);
  return score;
}

SariScore sari(const TextUnit& source, const TextUnit& output,
               const std::vector<TextUnit>& references) {
  std::vector<std::vector<std::string>> refs;
  refs.reserve(references.size());
  for (const auto& ref : references) refs.push_back(ref.lower_tokens());
  return sari(source.lower_tokens(), output.lower_tokens(), refs);
}

}  // namespace plainloop::metrics
