#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "movemine/analysis.hpp"
#include "movemine/error.hpp"

namespace movemine {

// Binary observations x unique-patterns matrix. value(r, c) = 1 exactly when
// pattern c is in observation r's mined set. Columns are ordered by union
// frequency descending, then ASCII; rows keep the observation input order.
struct FeatureMatrix {
  std::vector<std::string> columns;
  std::vector<std::string> row_ids;
  std::vector<std::string> labels;
  std::vector<std::vector<uint8_t>> values;

  size_t rows() const { return row_ids.size(); }
  size_t cols() const { return columns.size(); }
};

inline FeatureMatrix featurize(const UniquePatternSet& unique,
                               const std::vector<MinedObservation>& observations) {
  if (observations.empty()) fail("empty-input", "featurize: no observations");

  FeatureMatrix m;
  {
    std::vector<std::pair<std::string, int>> cols(unique.frequency.begin(),
                                                  unique.frequency.end());
    std::sort(cols.begin(), cols.end(), [](const auto& a, const auto& b) {
      if (a.second != b.second) return a.second > b.second;
      return a.first < b.first;
    });
    for (auto& [p, _] : cols) m.columns.push_back(std::move(p));
  }
  std::map<std::string, size_t> col_of;
  for (size_t c = 0; c < m.columns.size(); ++c) col_of[m.columns[c]] = c;

  std::vector<int> col_sums(m.columns.size(), 0);
  for (const auto& o : observations) {
    if (o.kind != unique.kind)
      fail("kind-mismatch", "observation " + o.observation_id + " holds " +
                                to_string(o.kind) + " patterns, expected " +
                                to_string(unique.kind));
    if (o.position.empty())
      fail("missing-class",
           "observation " + o.observation_id + " has no position label");
    std::vector<uint8_t> row(m.columns.size(), 0);
    for (const auto& p : o.patterns) {
      auto it = col_of.find(p);
      if (it == col_of.end())
        fail("state", "pattern '" + p + "' of observation " + o.observation_id +
                          " is missing from the unique set");
      row[it->second] = 1;
      ++col_sums[it->second];
    }
    m.row_ids.push_back(o.observation_id);
    m.labels.push_back(o.position);
    m.values.push_back(std::move(row));
  }

  // By construction of the union every column must be hit at least once and
  // column sums must reproduce the union frequencies.
  for (size_t c = 0; c < m.columns.size(); ++c)
    if (col_sums[c] != unique.frequency.at(m.columns[c]))
      fail("state", "column sum for pattern '" + m.columns[c] +
                        "' does not match its union frequency");
  return m;
}

}  // namespace movemine
