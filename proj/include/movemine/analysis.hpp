#pragma once

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "movemine/error.hpp"
#include "movemine/types.hpp"

namespace movemine {

// One observation's mined pattern set plus identity: the unit that unions,
// overlap reports and feature rows are built from.
struct MinedObservation {
  std::string observation_id;
  std::string position;  // may be empty until joined with sequence data
  PatternKind kind = PatternKind::Contiguous;
  std::set<std::string> patterns;
};

// Union of per-observation pattern sets for one algorithm. frequency maps
// each pattern to the number of observations whose mined set contains it.
struct UniquePatternSet {
  PatternKind kind = PatternKind::Contiguous;
  std::map<std::string, int> frequency;

  std::set<std::string> pattern_set() const {
    std::set<std::string> s;
    for (const auto& [p, _] : frequency) s.insert(p);
    return s;
  }
  std::string algorithm() const { return algorithm_name(kind); }
};

inline UniquePatternSet union_patterns(
    const std::vector<MinedObservation>& observations) {
  if (observations.empty()) fail("empty-input", "union_patterns: no observations");
  UniquePatternSet u{observations.front().kind, {}};
  for (const auto& o : observations) {
    if (o.kind != u.kind)
      fail("kind-mismatch", "observation " + o.observation_id + " holds " +
                                to_string(o.kind) + " patterns, expected " +
                                to_string(u.kind));
    for (const auto& p : o.patterns) ++u.frequency[p];
  }
  return u;
}

inline double jaccard(const std::set<std::string>& x,
                      const std::set<std::string>& y) {
  if (x.empty() && y.empty())
    fail("undefined-input", "jaccard of two empty sets");
  size_t inter = 0;
  for (const auto& p : x) inter += y.count(p);
  size_t uni = x.size() + y.size() - inter;
  return double(inter) / double(uni);
}

enum class FrequencyEnd { Most, Least };

struct OverlapEntry {
  std::string pattern;
  int freq_a = 0;
  int freq_b = 0;

  bool operator==(const OverlapEntry&) const = default;
};

// The k most (or least) frequent patterns of a set; equal frequencies are
// broken ASCII-ascending, then the list is truncated.
inline std::vector<std::pair<std::string, int>> top_k_by_frequency(
    const UniquePatternSet& s, int k, FrequencyEnd end) {
  if (k < 1) fail("config", "k must be >= 1");
  std::vector<std::pair<std::string, int>> v(s.frequency.begin(),
                                             s.frequency.end());
  std::sort(v.begin(), v.end(), [&](const auto& a, const auto& b) {
    if (a.second != b.second)
      return end == FrequencyEnd::Most ? a.second > b.second
                                       : a.second < b.second;
    return a.first < b.first;
  });
  if (v.size() > size_t(k)) v.resize(size_t(k));
  return v;
}

// Exact-match intersection of A's and B's independent top-k (or bottom-k)
// lists, ordered by A's frequency descending.
inline std::vector<OverlapEntry> overlap_topk(const UniquePatternSet& a,
                                              const UniquePatternSet& b, int k,
                                              FrequencyEnd end) {
  auto ta = top_k_by_frequency(a, k, end);
  auto tb = top_k_by_frequency(b, k, end);
  std::set<std::string> in_b;
  for (const auto& [p, _] : tb) in_b.insert(p);

  std::vector<OverlapEntry> out;
  for (const auto& [p, fa] : ta)
    if (in_b.count(p)) out.push_back({p, fa, b.frequency.at(p)});
  std::sort(out.begin(), out.end(), [](const OverlapEntry& x, const OverlapEntry& y) {
    if (x.freq_a != y.freq_a) return x.freq_a > y.freq_a;
    return x.pattern < y.pattern;
  });
  return out;
}

// Per-position pattern unions split into position-exclusive and shared parts.
// only_a / only_b map patterns to their frequency within their own position;
// shared maps to (frequency in a, frequency in b). With every observation in
// a single position the result degenerates to only_a = that union and empty
// shared / only_b.
struct PositionOverlap {
  std::string position_a, position_b;  // ASCII order; b empty when degenerate
  std::map<std::string, int> only_a, only_b;
  std::map<std::string, std::pair<int, int>> shared;
};

inline PositionOverlap position_overlap(
    const std::vector<MinedObservation>& observations) {
  if (observations.empty())
    fail("empty-input", "position_overlap: no observations");
  std::set<std::string> positions;
  for (const auto& o : observations) {
    if (o.position.empty())
      fail("missing-class",
           "observation " + o.observation_id + " has no position label");
    positions.insert(o.position);
  }
  if (positions.size() > 2)
    fail("config", "more than two position labels present");

  PositionOverlap out;
  auto it = positions.begin();
  out.position_a = *it;
  if (positions.size() == 2) out.position_b = *++it;

  auto union_for = [&](const std::string& pos) {
    std::vector<MinedObservation> subset;
    for (const auto& o : observations)
      if (o.position == pos) subset.push_back(o);
    return union_patterns(subset);
  };

  UniquePatternSet ua = union_for(out.position_a);
  if (out.position_b.empty()) {
    out.only_a = ua.frequency;
    return out;
  }
  UniquePatternSet ub = union_for(out.position_b);
  for (const auto& [p, fa] : ua.frequency) {
    auto fb = ub.frequency.find(p);
    if (fb == ub.frequency.end())
      out.only_a.emplace(p, fa);
    else
      out.shared.emplace(p, std::make_pair(fa, fb->second));
  }
  for (const auto& [p, fb] : ub.frequency)
    if (!ua.frequency.count(p)) out.only_b.emplace(p, fb);
  return out;
}

}  // namespace movemine
