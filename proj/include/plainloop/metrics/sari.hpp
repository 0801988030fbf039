#pragma once

#include <string>
#include <vector>

#include "plainloop/metrics/text_unit.hpp"

namespace plainloop::metrics {

// SARI over n-gram orders 1..4 on lowercased tokens. Keep and add are F1
// scores; the deletion component is deletion precision, as in the
// original formulation. `overall` is the mean of the three components.
struct SariScore {
  double add_f1 = 0.0;
  double keep_f1 = 0.0;
  double del_precision = 0.0;
  double overall = 0.0;
  // Distinct source unigrams absent from the output / distinct source
  // unigrams. 0 for an empty source.
  double deletions_fraction = 0.0;

  bool operator==(const SariScore&) const = default;
};

double deletions_fraction(const std::vector<std::string>& source,
                          const std::vector<std::string>& output);

// References are a set: identical references count once. Throws
// NoReferences when `references` is empty.
SariScore sari(const std::vector<std::string>& source, const std::vector<std::string>& output,
               const std::vector<std::vector<std::string>>& references);

SariScore sari(const TextUnit& source, const TextUnit& output,
               const std::vector<TextUnit>& references);

}  // namespace plainloop::metrics
