#pragma once

#include <algorithm>
#include <charconv>
#include <cstdio>
#include <istream>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

#include "movemine/analysis.hpp"
#include "movemine/csv.hpp"
#include "movemine/discretize.hpp"
#include "movemine/error.hpp"
#include "movemine/featurize.hpp"
#include "movemine/types.hpp"

namespace movemine {

namespace detail {

inline double parse_double(const std::string& s, const char* what) {
  double v = 0.0;
  auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || p != s.data() + s.size())
    fail("format", std::string("cannot parse ") + what + " value '" + s + "'");
  return v;
}

inline std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.9g", v);
  return buf;
}

inline std::string json_id(const nlohmann::json& j) {
  return j.is_string() ? j.get<std::string>() : j.dump();
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Tracking CSV: header
//   player_id,match_id,position,t,velocity[,acceleration][,heading][,turning_angle]
// Unknown columns are ignored; rows are grouped into one stream per
// (player_id, match_id), ordered by that pair.

inline std::vector<TrackingStream> read_tracking_csv(std::istream& is) {
  std::vector<std::string> header;
  if (!read_csv_row(is, header)) fail("empty-input", "tracking CSV has no header");

  std::map<std::string, int> col;
  for (size_t i = 0; i < header.size(); ++i) col[header[i]] = int(i);
  for (const char* required :
       {"player_id", "match_id", "position", "t", "velocity"})
    if (!col.count(required))
      fail("format", std::string("tracking CSV is missing column '") + required + "'");

  auto opt_col = [&](const char* name) {
    auto it = col.find(name);
    return it == col.end() ? -1 : it->second;
  };
  const int c_player = col["player_id"], c_match = col["match_id"],
            c_pos = col["position"], c_t = col["t"], c_vel = col["velocity"];
  const int c_acc = opt_col("acceleration"), c_head = opt_col("heading"),
            c_turn = opt_col("turning_angle");

  std::map<std::pair<std::string, std::string>, TrackingStream> groups;
  std::vector<std::string> row;
  size_t line_no = 1;
  while (read_csv_row(is, row)) {
    ++line_no;
    if (row.size() < header.size())
      fail("format", "tracking CSV row " + std::to_string(line_no) +
                         " has too few fields");
    auto cell = [&](int c) -> const std::string& { return row[size_t(c)]; };
    TrackingSample s;
    s.t = detail::parse_double(cell(c_t), "t");
    s.velocity = detail::parse_double(cell(c_vel), "velocity");
    if (c_acc >= 0 && !cell(c_acc).empty())
      s.acceleration = detail::parse_double(cell(c_acc), "acceleration");
    if (c_head >= 0 && !cell(c_head).empty())
      s.heading = detail::parse_double(cell(c_head), "heading");
    if (c_turn >= 0 && !cell(c_turn).empty())
      s.turning_angle = detail::parse_double(cell(c_turn), "turning_angle");

    auto key = std::make_pair(cell(c_player), cell(c_match));
    auto& stream = groups[key];
    if (stream.samples.empty()) {
      stream.player_id = key.first;
      stream.match_id = key.second;
      stream.position = cell(c_pos);
      if (stream.position.empty())
        fail("format", "empty position at CSV row " + std::to_string(line_no));
    } else if (stream.position != cell(c_pos)) {
      fail("format", "conflicting position for " + stream.id() + " at CSV row " +
                         std::to_string(line_no));
    }
    stream.samples.push_back(s);
  }
  if (groups.empty()) fail("empty-input", "tracking CSV has no data rows");

  std::vector<TrackingStream> out;
  out.reserve(groups.size());
  for (auto& [_, stream] : groups) {
    for (size_t i = 1; i < stream.samples.size(); ++i)
      if (stream.samples[i].t <= stream.samples[i - 1].t)
        fail("format", "samples of " + stream.id() + " are not sorted by t");
    out.push_back(std::move(stream));
  }
  return out;
}

inline void write_tracking_csv(std::ostream& os,
                               const std::vector<TrackingStream>& streams) {
  write_csv_row(os, {"player_id", "match_id", "position", "t", "velocity",
                     "acceleration", "turning_angle"});
  char tbuf[32];
  for (const auto& st : streams) {
    for (const auto& s : st.samples) {
      std::snprintf(tbuf, sizeof tbuf, "%.1f", s.t);
      write_csv_row(os, {st.player_id, st.match_id, st.position, tbuf,
                         detail::format_double(s.velocity),
                         s.acceleration ? detail::format_double(*s.acceleration) : "",
                         s.turning_angle ? detail::format_double(*s.turning_angle) : ""});
    }
  }
}

// ---------------------------------------------------------------------------
// Observations JSONL: one object per observation,
//   {"player_id": ..., "match_id": ..., "position": ..., "sequences": [...]}

inline void write_observations_jsonl(std::ostream& os,
                                     const std::vector<ObservationSet>& observations) {
  for (const auto& o : observations) {
    nlohmann::ordered_json j;
    j["player_id"] = o.player_id;
    j["match_id"] = o.match_id;
    j["position"] = o.position;
    j["sequences"] = o.sequence_strings();
    os << j.dump() << '\n';
  }
}

inline std::vector<ObservationSet> read_observations_jsonl(std::istream& is) {
  std::vector<ObservationSet> out;
  std::string line;
  size_t line_no = 0;
  while (std::getline(is, line)) {
    ++line_no;
    if (line.empty() || line.find_first_not_of(" \t\r") == std::string::npos)
      continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      fail("format", "JSONL line " + std::to_string(line_no) + ": " + e.what());
    }
    ObservationSet o;
    if (!j.contains("player_id") || !j.contains("match_id") ||
        !j.contains("position") || !j.contains("sequences"))
      fail("format", "JSONL line " + std::to_string(line_no) +
                         " is missing a required field");
    o.player_id = detail::json_id(j["player_id"]);
    o.match_id = detail::json_id(j["match_id"]);
    o.position = j["position"].get<std::string>();
    for (const auto& s : j["sequences"]) {
      std::string symbols = s.get<std::string>();
      if (!valid_sequence(symbols))
        fail("format", "JSONL line " + std::to_string(line_no) +
                           ": sequence with symbols outside the alphabet");
      MovementSequence seq;
      seq.symbols = std::move(symbols);
      seq.start_t = 0.0;
      seq.end_t = kSamplePeriod * double(seq.symbols.size() - 1);
      o.sequences.push_back(std::move(seq));
    }
    out.push_back(std::move(o));
  }
  if (out.empty()) fail("empty-input", "JSONL stream has no observations");
  return out;
}

// ---------------------------------------------------------------------------
// Pattern CSV: observation_id,kind,pattern,support_count,support_fraction

struct PatternRow {
  std::string observation_id;
  Pattern pattern;
};

inline void write_patterns_csv(std::ostream& os,
                               const std::vector<PatternRow>& rows) {
  write_csv_row(os, {"observation_id", "kind", "pattern", "support_count",
                     "support_fraction"});
  for (const auto& r : rows)
    write_csv_row(os, {r.observation_id, to_string(r.pattern.kind),
                       r.pattern.symbols, std::to_string(r.pattern.support_count),
                       detail::format_double(r.pattern.support_fraction)});
}

inline std::vector<PatternRow> read_patterns_csv(std::istream& is) {
  std::vector<std::string> header;
  if (!read_csv_row(is, header)) fail("empty-input", "pattern CSV has no header");
  const std::vector<std::string> expected = {"observation_id", "kind", "pattern",
                                             "support_count", "support_fraction"};
  if (header != expected) fail("format", "unexpected pattern CSV header");

  std::vector<PatternRow> out;
  std::vector<std::string> row;
  while (read_csv_row(is, row)) {
    if (row.size() != expected.size())
      fail("format", "pattern CSV row has wrong field count");
    PatternRow r;
    r.observation_id = row[0];
    r.pattern.kind = pattern_kind_from_string(row[1]);
    r.pattern.symbols = row[2];
    r.pattern.support_count = int(detail::parse_double(row[3], "support_count"));
    r.pattern.support_fraction = detail::parse_double(row[4], "support_fraction");
    out.push_back(std::move(r));
  }
  return out;
}

// Groups pattern rows by observation in first-appearance order. Positions
// are left empty; join_positions fills them from observation data.
inline std::vector<MinedObservation> group_pattern_rows(
    const std::vector<PatternRow>& rows) {
  std::vector<MinedObservation> out;
  std::map<std::string, size_t> index;
  for (const auto& r : rows) {
    auto [it, inserted] = index.try_emplace(r.observation_id, out.size());
    if (inserted) {
      MinedObservation o;
      o.observation_id = r.observation_id;
      o.kind = r.pattern.kind;
      out.push_back(std::move(o));
    }
    MinedObservation& o = out[it->second];
    if (o.kind != r.pattern.kind)
      fail("kind-mismatch",
           "observation " + r.observation_id + " mixes pattern kinds");
    o.patterns.insert(r.pattern.symbols);
  }
  return out;
}

inline void join_positions(std::vector<MinedObservation>& mined,
                           const std::vector<ObservationSet>& observations) {
  std::map<std::string, std::string> pos;
  for (const auto& o : observations) pos[o.id()] = o.position;
  for (auto& m : mined) {
    auto it = pos.find(m.observation_id);
    if (it == pos.end())
      fail("missing-class", "observation " + m.observation_id +
                                " has no matching sequence data");
    m.position = it->second;
  }
}

// ---------------------------------------------------------------------------
// Feature matrix CSV: observation_id,label,<one column per pattern>

inline void write_matrix_csv(std::ostream& os, const FeatureMatrix& m) {
  std::vector<std::string> header = {"observation_id", "label"};
  header.insert(header.end(), m.columns.begin(), m.columns.end());
  write_csv_row(os, header);
  for (size_t r = 0; r < m.rows(); ++r) {
    std::vector<std::string> row = {m.row_ids[r], m.labels[r]};
    for (uint8_t v : m.values[r]) row.push_back(v ? "1" : "0");
    write_csv_row(os, row);
  }
}

inline FeatureMatrix read_matrix_csv(std::istream& is) {
  std::vector<std::string> header;
  if (!read_csv_row(is, header)) fail("empty-input", "matrix CSV has no header");
  if (header.size() < 2 || header[0] != "observation_id" || header[1] != "label")
    fail("format", "matrix CSV must start with observation_id,label");

  FeatureMatrix m;
  m.columns.assign(header.begin() + 2, header.end());
  std::vector<std::string> row;
  while (read_csv_row(is, row)) {
    if (row.size() != header.size())
      fail("format", "matrix CSV row has wrong field count");
    m.row_ids.push_back(row[0]);
    m.labels.push_back(row[1]);
    std::vector<uint8_t> values;
    values.reserve(m.columns.size());
    for (size_t i = 2; i < row.size(); ++i) {
      if (row[i] == "0") values.push_back(0);
      else if (row[i] == "1") values.push_back(1);
      else fail("format", "matrix cell must be 0 or 1, got '" + row[i] + "'");
    }
    m.values.push_back(std::move(values));
  }
  if (m.rows() == 0) fail("empty-input", "matrix CSV has no rows");
  return m;
}

}  // namespace movemine
