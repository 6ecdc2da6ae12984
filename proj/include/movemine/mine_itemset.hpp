#pragma once

#include <array>
#include <bit>
#include <cstdint>
#include <functional>
#include <string>
#include <string_view>
#include <vector>

#include "movemine/error.hpp"
#include "movemine/types.hpp"

namespace movemine {

// The distinct symbols of one sequence, ASCII-ascending. Repetition and
// order are deliberately discarded.
inline std::string to_transaction(std::string_view sequence) {
  if (sequence.empty()) fail("empty-input", "to_transaction: empty sequence");
  std::array<bool, 256> seen{};
  for (unsigned char c : sequence) seen[c] = true;
  std::string t;
  for (int c = 0; c < 256; ++c)
    if (seen[c]) t.push_back(char(c));
  return t;
}

// One transaction per sequence; transactions are kept per-sequence, not
// deduplicated across sequences.
inline std::vector<std::string> to_transactions(
    const std::vector<std::string>& sequences) {
  if (sequences.empty()) fail("empty-input", "to_transactions: no sequences");
  std::vector<std::string> out;
  out.reserve(sequences.size());
  for (const auto& s : sequences) out.push_back(to_transaction(s));
  return out;
}

namespace detail {

inline int popcount_bits(const std::vector<uint64_t>& v) {
  int n = 0;
  for (uint64_t w : v) n += std::popcount(w);
  return n;
}

inline bool is_subset_bits(const std::vector<uint64_t>& a,
                           const std::vector<uint64_t>& b) {
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] & ~b[i]) return false;
  return true;
}

}  // namespace detail

// Closed frequent itemsets over per-sequence symbol sets.
//
// An itemset is frequent when at least ceil(min_support * n) transactions
// contain it and closed when no strict superset has equal support. Closure
// is evaluated over all supersets; the max_len cap is applied to the results
// afterwards. Itemset strings are rendered ASCII-ascending.
//
// Enumeration walks closed sets directly via tidset intersections: extending
// a closed set by item i, taking the closure of the new tidset, and skipping
// extensions whose closure reaches back before i (those are generated from
// their least item instead). Each closed frequent itemset is visited exactly
// once, so the generator lattice is never materialized.
inline std::vector<Pattern> mine_closed_itemsets(
    const std::vector<std::string>& transactions, const MinerConfig& cfg) {
  cfg.validate();
  if (transactions.empty())
    fail("empty-input", "mine_closed_itemsets: no transactions");

  std::array<bool, 256> seen{};
  for (const auto& t : transactions) {
    if (t.empty()) fail("empty-input", "empty transaction");
    for (unsigned char c : t) seen[c] = true;
  }
  std::vector<char> items;  // ascending unsigned char == ASCII order
  for (int c = 0; c < 256; ++c)
    if (seen[c]) items.push_back(char(c));
  const int m = int(items.size());
  if (m > 64) fail("config", "more than 64 distinct symbols");
  std::array<int, 256> item_of{};
  item_of.fill(-1);
  for (int i = 0; i < m; ++i) item_of[(unsigned char)items[i]] = i;

  const size_t n = transactions.size();
  const int thr = support_threshold(cfg, n);
  const size_t words = (n + 63) / 64;

  std::vector<std::vector<uint64_t>> tids(m, std::vector<uint64_t>(words, 0));
  for (size_t ti = 0; ti < n; ++ti)
    for (unsigned char c : transactions[ti])
      tids[item_of[c]][ti >> 6] |= uint64_t(1) << (ti & 63);

  auto mask_string = [&](uint64_t mask) {
    std::string s;
    for (int i = 0; i < m; ++i)
      if (mask >> i & 1) s.push_back(items[i]);
    return s;
  };

  std::vector<Pattern> out;

  std::function<void(uint64_t, const std::vector<uint64_t>&, int)> expand =
      [&](uint64_t closure, const std::vector<uint64_t>& tset, int start) {
        for (int i = start; i < m; ++i) {
          if (closure >> i & 1) continue;
          std::vector<uint64_t> next(words);
          for (size_t w = 0; w < words; ++w) next[w] = tset[w] & tids[i][w];
          int supp = detail::popcount_bits(next);
          if (supp < thr) continue;

          uint64_t cmask = closure | uint64_t(1) << i;
          for (int j = 0; j < m; ++j) {
            if (cmask >> j & 1) continue;
            if (detail::is_subset_bits(next, tids[j])) cmask |= uint64_t(1) << j;
          }
          // Already reachable through a smaller item: skip this branch.
          if (cmask & ~closure & ((uint64_t(1) << i) - 1)) continue;

          int size = std::popcount(cmask);
          if (size <= cfg.max_len)
            out.push_back({PatternKind::Itemset, mask_string(cmask), supp,
                           double(supp) / double(n)});
          // Descendants are strict supersets; once at the cap they can only
          // exceed it.
          if (size < cfg.max_len) expand(cmask, next, i + 1);
        }
      };

  std::vector<uint64_t> all(words, ~uint64_t(0));
  if (n & 63) all[words - 1] = (uint64_t(1) << (n & 63)) - 1;
  expand(0, all, 0);

  sort_patterns_canonical(out);
  return out;
}

}  // namespace movemine
