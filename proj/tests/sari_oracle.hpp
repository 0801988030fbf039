#pragma once

// Brute-force SARI used only by tests. It enumerates the n-gram universe of
// each order explicitly and builds the KEEP / DEL / ADD sets one gram at a
// time, independent of the counter arithmetic in the library.

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace plainloop::testing {

struct OracleSari {
  double add = 0, keep = 0, del = 0, overall = 0, deletions_fraction = 0;
};

using Gram = std::vector<std::string>;

inline std::map<Gram, int> oracle_grams(const std::vector<std::string>& tokens, std::size_t n) {
  std::map<Gram, int> out;
  for (std::size_t i = 0; i + n <= tokens.size(); ++i) {
    out[Gram(tokens.begin() + static_cast<long>(i), tokens.begin() + static_cast<long>(i + n))]++;
  }
  return out;
}

inline int oracle_get(const std::map<Gram, int>& m, const Gram& g) {
  auto it = m.find(g);
  return it == m.end() ? 0 : it->second;
}

inline double oracle_f1(double p, double r) { return (p + r) > 0 ? 2 * p * r / (p + r) : 0; }

inline OracleSari oracle_sari(const std::vector<std::string>& src, const std::vector<std::string>& out,
                              std::vector<std::vector<std::string>> refs) {
  std::sort(refs.begin(), refs.end());
  refs.erase(std::unique(refs.begin(), refs.end()), refs.end());
  const int numref = static_cast<int>(refs.size());
  double keep_sum = 0, del_sum = 0, add_sum = 0;
  for (std::size_t n = 1; n <= 4; ++n) {
    const auto S = oracle_grams(src, n);
    const auto C = oracle_grams(out, n);
    std::map<Gram, int> R;
    for (const auto& ref : refs)
      for (const auto& [g, k] : oracle_grams(ref, n)) R[g] += k;

    std::set<Gram> universe;
    for (const std::map<Gram, int>* m : {&S, &C, static_cast<const std::map<Gram, int>*>(&R)})
      for (const auto& [g, k] : *m) universe.insert(g);

    // KEEP
    std::vector<Gram> keep_set, keep_all_set;
    for (const auto& g : universe) {
      if (std::min(oracle_get(S, g), oracle_get(C, g)) > 0) keep_set.push_back(g);
      if (std::min(oracle_get(S, g) * numref, oracle_get(R, g)) > 0) keep_all_set.push_back(g);
    }
    double kp = 0, kr = 0;
    for (const auto& g : keep_set) {
      const double kept = std::min(oracle_get(S, g), oracle_get(C, g)) * numref;
      const double good = std::min<double>(kept, oracle_get(R, g));
      const double all = std::min(oracle_get(S, g) * numref, oracle_get(R, g));
      kp += good / kept;
      if (good > 0) kr += good / all;
    }
    const double keep_p = keep_set.empty() ? 0 : kp / static_cast<double>(keep_set.size());
    const double keep_r = keep_all_set.empty() ? 0 : kr / static_cast<double>(keep_all_set.size());
    keep_sum += oracle_f1(keep_p, keep_r);

    // DEL
    std::vector<Gram> del_set;
    for (const auto& g : universe)
      if (oracle_get(S, g) > oracle_get(C, g)) del_set.push_back(g);
    double dp = 0;
    for (const auto& g : del_set) {
      const double removed = (oracle_get(S, g) - oracle_get(C, g)) * numref;
      const double good = std::max(0.0, removed - oracle_get(R, g));
      dp += good / removed;
    }
    del_sum += del_set.empty() ? 0 : dp / static_cast<double>(del_set.size());

    // ADD
    std::set<Gram> added, added_good, addable;
    for (const auto& g : universe) {
      const bool in_s = oracle_get(S, g) > 0, in_c = oracle_get(C, g) > 0, in_r = oracle_get(R, g) > 0;
      if (in_c && !in_s) added.insert(g);
      if (in_c && !in_s && in_r) added_good.insert(g);
      if (in_r && !in_s) addable.insert(g);
    }
    const double ap = added.empty() ? 0 : double(added_good.size()) / double(added.size());
    const double ar = addable.empty() ? 0 : double(added_good.size()) / double(addable.size());
    add_sum += oracle_f1(ap, ar);
  }
  OracleSari r;
  r.keep = keep_sum / 4;
  r.del = del_sum / 4;
  r.add = add_sum / 4;
  r.overall = (r.keep + r.del + r.add) / 3;
  std::set<std::string> s_types(src.begin(), src.end()), o_types(out.begin(), out.end());
  int gone = 0;
  for (const auto& t : s_types) gone += o_types.count(t) == 0;
  r.deletions_fraction = s_types.empty() ? 0 : double(gone) / double(s_types.size());
  return r;
}

}  // namespace plainloop::testing
