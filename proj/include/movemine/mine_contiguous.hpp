#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "movemine/error.hpp"
#include "movemine/types.hpp"

namespace movemine {

// Sequence-level support: the number of sequences containing `pattern` as a
// contiguous substring, each sequence counted at most once.
inline int support_contiguous(std::string_view pattern,
                              const std::vector<std::string>& sequences) {
  if (pattern.empty()) fail("empty-input", "support_contiguous: empty pattern");
  int n = 0;
  for (const auto& s : sequences)
    if (s.find(pattern) != std::string::npos) ++n;
  return n;
}

namespace detail {

struct StringHash {
  using is_transparent = void;
  size_t operator()(std::string_view s) const {
    return std::hash<std::string_view>{}(s);
  }
  size_t operator()(const std::string& s) const {
    return std::hash<std::string_view>{}(s);
  }
};

}  // namespace detail

// Frequent closed contiguous patterns of length <= cfg.max_len.
//
// Support is sequence-level and the threshold is ceil(min_support * n),
// never below 1. A pattern is closed when no contiguous super-pattern inside
// the length bound has equal support; patterns of length exactly max_len are
// kept even if a longer equal-support extension exists beyond the bound.
//
// Levelwise n-gram counting with Apriori pruning: a window of length L is
// only counted when both of its (L-1)-subwindows are frequent. Closure then
// only needs the one-symbol extensions: an equal-support frequent pattern of
// length L+1 absorbs its two length-L subpatterns.
inline std::vector<Pattern> mine_closed_contiguous(
    const std::vector<std::string>& sequences, const MinerConfig& cfg) {
  cfg.validate();
  if (sequences.empty())
    fail("empty-input", "mine_closed_contiguous: no sequences");
  const int thr = support_threshold(cfg, sequences.size());

  struct Info {
    int support = 0;
    uint32_t last_seq = UINT32_MAX;
    bool closed = true;
  };
  using Level =
      std::unordered_map<std::string, Info, detail::StringHash, std::equal_to<>>;
  std::vector<Level> levels;  // levels[L-1]: frequent patterns of length L

  for (int len = 1; len <= cfg.max_len; ++len) {
    Level counts;
    const Level* prev = len > 1 ? &levels[len - 2] : nullptr;
    for (uint32_t si = 0; si < sequences.size(); ++si) {
      const std::string& s = sequences[si];
      if (s.size() < size_t(len)) continue;
      for (size_t i = 0; i + len <= s.size(); ++i) {
        std::string_view window(s.data() + i, size_t(len));
        if (prev) {
          if (!prev->contains(window.substr(0, len - 1))) continue;
          if (!prev->contains(window.substr(1))) continue;
        }
        auto it = counts.find(window);
        if (it == counts.end())
          it = counts.emplace(std::string(window), Info{}).first;
        if (it->second.last_seq != si) {
          it->second.last_seq = si;
          ++it->second.support;
        }
      }
    }
    Level freq;
    for (auto& [p, info] : counts)
      if (info.support >= thr) freq.emplace(p, info);
    if (freq.empty()) break;
    levels.push_back(std::move(freq));
  }

  for (size_t li = 1; li < levels.size(); ++li) {
    for (const auto& [q, qi] : levels[li]) {
      auto absorb = [&](std::string_view sub) {
        auto it = levels[li - 1].find(sub);
        if (it != levels[li - 1].end() && it->second.support == qi.support)
          it->second.closed = false;
      };
      std::string_view qv(q);
      absorb(qv.substr(0, qv.size() - 1));
      absorb(qv.substr(1));
    }
  }

  std::vector<Pattern> out;
  for (const auto& level : levels)
    for (const auto& [p, info] : level)
      if (info.closed)
        out.push_back({PatternKind::Contiguous, p, info.support,
                       double(info.support) / double(sequences.size())});
  sort_patterns_canonical(out);
  return out;
}

}  // namespace movemine
