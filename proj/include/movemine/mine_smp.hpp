#pragma once

#include <algorithm>
#include <cstdint>
#include <limits>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "movemine/error.hpp"
#include "movemine/types.hpp"

namespace movemine {

struct ClusteringConfig {
  int k = 25;  // target cluster count; effective count is min(k, n)

  void validate() const {
    if (k < 1) fail("config", "cluster count must be >= 1");
  }
};

// Bit-parallel Levenshtein distance (Hyyrö's multi-block formulation of
// Myers' algorithm): the shorter string is sliced into 64-row blocks whose
// vertical delta vectors are updated per text character, with +1/-1 carries
// chained between blocks. One word op covers 64 DP cells, which is what
// makes clustering hundreds of full-length movement sequences tractable.
inline unsigned levenshtein(std::string_view x, std::string_view y) {
  if (x.size() > y.size()) std::swap(x, y);
  const size_t m = x.size(), n = y.size();
  if (m == 0) return unsigned(n);

  const size_t blocks = (m + 63) / 64;
  std::vector<uint64_t> peq(blocks * 256, 0);
  for (size_t i = 0; i < m; ++i)
    peq[(i >> 6) * 256 + (unsigned char)x[i]] |= uint64_t(1) << (i & 63);

  std::vector<uint64_t> vp(blocks, ~uint64_t(0)), vn(blocks, 0);
  const uint64_t top_bit = uint64_t(1) << ((m - 1) & 63);
  long score = long(m);

  for (size_t j = 0; j < n; ++j) {
    const unsigned char c = (unsigned char)y[j];
    int carry = 1;  // D(0, j) - D(0, j-1) = +1 feeds the lowest block
    for (size_t b = 0; b < blocks; ++b) {
      uint64_t eq = peq[b * 256 + c];
      if (carry < 0) eq |= 1;
      const uint64_t xv = eq | vn[b];
      const uint64_t xh = (((eq & vp[b]) + vp[b]) ^ vp[b]) | eq;
      uint64_t ph = vn[b] | ~(xh | vp[b]);
      uint64_t mh = vp[b] & xh;

      const uint64_t msb = b + 1 == blocks ? top_bit : uint64_t(1) << 63;
      int carry_out = 0;
      if (ph & msb) carry_out = 1;
      else if (mh & msb) carry_out = -1;

      ph <<= 1;
      mh <<= 1;
      if (carry > 0) ph |= 1;
      else if (carry < 0) mh |= 1;
      vp[b] = mh | ~(xv | ph);
      vn[b] = ph & xv;
      carry = carry_out;
    }
    score += carry;
  }
  return unsigned(score);
}

// Levenshtein distance divided by the longer length; 0 for two empty strings.
inline double edit_distance_normalized(std::string_view x, std::string_view y) {
  if (x.empty() && y.empty()) return 0.0;
  return double(levenshtein(x, y)) / double(std::max(x.size(), y.size()));
}

// Agglomerative average-linkage clustering on the pairwise normalized edit
// distance matrix, cut at min(k, n) clusters. Equal-distance merges pick the
// lexicographically least (rep_a, rep_b) pair, where a cluster's rep is its
// smallest member index; merged distances follow the size-weighted average
// (Lance-Williams) update. Returned clusters hold ascending member indices
// and are ordered by rep.
inline std::vector<std::vector<int>> cluster_sequences(
    const std::vector<std::string>& sequences, const ClusteringConfig& cfg) {
  cfg.validate();
  const int n = int(sequences.size());
  if (n == 0) fail("empty-input", "cluster_sequences: no sequences");
  const int target = std::min(cfg.k, n);

  std::vector<std::vector<double>> dist(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      dist[i][j] = dist[j][i] =
          edit_distance_normalized(sequences[i], sequences[j]);

  std::vector<bool> alive(n, true);
  std::vector<int> size(n, 1);
  std::vector<std::vector<int>> members(n);
  for (int i = 0; i < n; ++i) members[i] = {i};

  int active = n;
  while (active > target) {
    int best_a = -1, best_b = -1;
    double best_d = std::numeric_limits<double>::infinity();
    for (int a = 0; a < n; ++a) {
      if (!alive[a]) continue;
      for (int b = a + 1; b < n; ++b) {
        if (!alive[b]) continue;
        if (dist[a][b] < best_d) {
          best_d = dist[a][b];
          best_a = a;
          best_b = b;
        }
        // ties: the scan order is already lexicographic in (a, b)
      }
    }
    for (int c = 0; c < n; ++c) {
      if (!alive[c] || c == best_a || c == best_b) continue;
      double d = (size[best_a] * dist[best_a][c] + size[best_b] * dist[best_b][c]) /
                 double(size[best_a] + size[best_b]);
      dist[best_a][c] = dist[c][best_a] = d;
    }
    members[best_a].insert(members[best_a].end(), members[best_b].begin(),
                           members[best_b].end());
    size[best_a] += size[best_b];
    alive[best_b] = false;
    --active;
  }

  std::vector<std::vector<int>> out;
  for (int i = 0; i < n; ++i) {
    if (!alive[i]) continue;
    std::sort(members[i].begin(), members[i].end());
    out.push_back(std::move(members[i]));
  }
  return out;  // slot index == smallest member, so already ordered by rep
}

// One longest common subsequence via dynamic programming over suffixes, with
// a fixed backtrace priority (take the diagonal match, else drop a symbol of
// x, else of y) so the result is deterministic.
inline std::string lcs_pair(std::string_view x, std::string_view y) {
  const size_t nx = x.size(), ny = y.size();
  if (nx == 0 || ny == 0) return {};
  std::vector<int> dp((nx + 1) * (ny + 1), 0);
  auto at = [&](size_t i, size_t j) -> int& { return dp[i * (ny + 1) + j]; };
  for (size_t i = nx; i-- > 0;)
    for (size_t j = ny; j-- > 0;)
      at(i, j) = x[i] == y[j] ? at(i + 1, j + 1) + 1
                              : std::max(at(i + 1, j), at(i, j + 1));
  std::string out;
  out.reserve(size_t(at(0, 0)));
  size_t i = 0, j = 0;
  while (i < nx && j < ny) {
    if (x[i] == y[j]) {
      out.push_back(x[i]);
      ++i;
      ++j;
    } else if (at(i + 1, j) >= at(i, j + 1)) {
      ++i;
    } else {
      ++j;
    }
  }
  return out;
}

inline bool is_subsequence(std::string_view needle, std::string_view hay) {
  size_t i = 0;
  for (char c : hay) {
    if (i < needle.size() && needle[i] == c) ++i;
  }
  return i == needle.size();
}

// Cluster-then-LCS pattern extraction. Within each cluster the LCS is folded
// progressively over members sorted by descending length then ASCII, which
// guarantees a common subsequence of every member (exact multi-string LCS is
// not attempted). Non-empty folds no longer than max_len symbols are emitted;
// support counts non-contiguous containment over all input sequences.
inline std::vector<Pattern> smp_extract(const std::vector<std::string>& sequences,
                                        const ClusteringConfig& cfg,
                                        int max_len = 20) {
  if (sequences.empty()) fail("empty-input", "smp_extract: no sequences");
  if (max_len < 1) fail("config", "max_len must be >= 1");
  auto clusters = cluster_sequences(sequences, cfg);

  std::set<std::string> found;
  for (const auto& cluster : clusters) {
    std::vector<std::string> ms;
    ms.reserve(cluster.size());
    for (int idx : cluster) ms.push_back(sequences[idx]);
    std::sort(ms.begin(), ms.end(), [](const std::string& a, const std::string& b) {
      if (a.size() != b.size()) return a.size() > b.size();
      return a < b;
    });
    std::string acc = ms.front();
    for (size_t i = 1; i < ms.size() && !acc.empty(); ++i)
      acc = lcs_pair(acc, ms[i]);
    if (!acc.empty() && acc.size() <= size_t(max_len)) found.insert(acc);
  }

  std::vector<Pattern> out;
  for (const auto& p : found) {
    int supp = 0;
    for (const auto& s : sequences)
      if (is_subsequence(p, s)) ++supp;
    out.push_back({PatternKind::Subsequence, p, supp,
                   double(supp) / double(sequences.size())});
  }
  sort_patterns_canonical(out);
  return out;
}

}  // namespace movemine
