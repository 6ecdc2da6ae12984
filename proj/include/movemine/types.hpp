#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "movemine/alphabet.hpp"
#include "movemine/error.hpp"

namespace movemine {

struct TrackingSample {
  double t = 0.0;          // seconds, on a 0.1 s grid
  double velocity = 0.0;   // m/s
  std::optional<double> acceleration;   // m/s^2, derivable
  std::optional<double> turning_angle;  // deg in [0, 180], derivable
  std::optional<double> heading;        // deg in [0, 360)
};

// All samples of one player within one match, time-ordered.
struct TrackingStream {
  std::string player_id;
  std::string match_id;
  std::string position;
  std::vector<TrackingSample> samples;

  std::string id() const { return player_id + ":" + match_id; }
};

struct MovementSequence {
  std::string symbols;
  double start_t = 0.0;
  double end_t = 0.0;
};

// One player-match: the unit of mining and of classification rows.
struct ObservationSet {
  std::string player_id;
  std::string match_id;
  std::string position;
  std::vector<MovementSequence> sequences;

  std::string id() const { return player_id + ":" + match_id; }

  std::vector<std::string> sequence_strings() const {
    std::vector<std::string> out;
    out.reserve(sequences.size());
    for (const auto& s : sequences) out.push_back(s.symbols);
    return out;
  }
};

enum class PatternKind { Contiguous, Itemset, Subsequence };

inline const char* to_string(PatternKind k) {
  switch (k) {
    case PatternKind::Contiguous: return "contiguous";
    case PatternKind::Itemset: return "itemset";
    case PatternKind::Subsequence: return "subsequence";
  }
  return "?";
}

inline PatternKind pattern_kind_from_string(std::string_view s) {
  if (s == "contiguous") return PatternKind::Contiguous;
  if (s == "itemset") return PatternKind::Itemset;
  if (s == "subsequence") return PatternKind::Subsequence;
  fail("format", "unknown pattern kind '" + std::string(s) + "'");
}

// Mining algorithm names as used on the CLI and in reports.
inline const char* algorithm_name(PatternKind k) {
  switch (k) {
    case PatternKind::Contiguous: return "lccspm";
    case PatternKind::Itemset: return "aprioriclose";
    case PatternKind::Subsequence: return "smp-lcs";
  }
  return "?";
}

inline PatternKind kind_for_algorithm(std::string_view algo) {
  if (algo == "lccspm") return PatternKind::Contiguous;
  if (algo == "aprioriclose") return PatternKind::Itemset;
  if (algo == "smp-lcs") return PatternKind::Subsequence;
  fail("config", "unknown algorithm '" + std::string(algo) +
                     "' (expected lccspm, aprioriclose or smp-lcs)");
}

struct Pattern {
  PatternKind kind = PatternKind::Contiguous;
  std::string symbols;
  int support_count = 0;
  double support_fraction = 0.0;

  bool operator==(const Pattern&) const = default;
};

struct MinerConfig {
  double min_support = 0.05;  // fraction of sequences, (0, 1]
  int max_len = 20;

  void validate() const {
    if (!(min_support > 0.0 && min_support <= 1.0))
      fail("config", "min_support must be in (0, 1]");
    if (max_len < 1) fail("config", "max_len must be >= 1");
  }
};

// Absolute support threshold: at least min_support of n sequences, never
// below 1. The epsilon guards against 0.05 * 40 evaluating to 2.0000...04.
inline int support_threshold(const MinerConfig& cfg, size_t n) {
  int t = int(std::ceil(cfg.min_support * double(n) - 1e-9));
  return std::max(1, t);
}

// Canonical output order shared by all miners: support descending, then
// length ascending, then ASCII.
inline void sort_patterns_canonical(std::vector<Pattern>& ps) {
  std::sort(ps.begin(), ps.end(), [](const Pattern& a, const Pattern& b) {
    if (a.support_count != b.support_count)
      return a.support_count > b.support_count;
    if (a.symbols.size() != b.symbols.size())
      return a.symbols.size() < b.symbols.size();
    return a.symbols < b.symbols;
  });
}

}  // namespace movemine
