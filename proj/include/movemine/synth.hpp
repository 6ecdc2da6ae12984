#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <map>
#include <random>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "movemine/alphabet.hpp"
#include "movemine/discretize.hpp"
#include "movemine/error.hpp"
#include "movemine/rng.hpp"
#include "movemine/types.hpp"

namespace movemine {

struct MotifSpec {
  std::string pattern;
  double rate_per_100 = 0.0;  // expected splices per 100 generated symbols
};

struct SynthConfig {
  std::vector<std::string> positions = {"hooker", "winger"};
  int players_per_position = 10;
  // optional per-position override (cohorts need not be balanced)
  std::map<std::string, int> players_by_position;
  int matches_per_player = 5;
  uint64_t seed = 1;
  // 48x48 row-stochastic transition matrix; empty = default_base_chain().
  std::vector<std::vector<double>> base_chain;
  // Symbols the chain may start from / move through; empty = whole alphabet.
  // Ignored when base_chain is given explicitly.
  std::string active_symbols;
  std::map<std::string, std::vector<MotifSpec>> motifs;  // position -> motifs
  std::pair<int, int> sequence_length_range{40, 80};
  std::pair<int, int> sequences_per_observation_range{8, 12};

  void validate() const;
};

// Transition weights decay with velocity-band distance (speed changes
// gradually), uniform across the 12 symbols of each target band. `allowed`
// restricts the support; rows of excluded symbols fall back to a uniform
// step back into the allowed set.
inline std::vector<std::vector<double>> restricted_base_chain(
    std::string_view allowed) {
  std::array<bool, kAlphabetSize> ok{};
  int n_allowed = 0;
  if (allowed.empty()) {
    ok.fill(true);
    n_allowed = kAlphabetSize;
  } else {
    for (char c : allowed) {
      int idx = char_index(c);
      if (idx < 0)
        fail("config", std::string("chain symbol '") + c +
                           "' is outside the 48-symbol alphabet");
      if (!ok[idx]) ++n_allowed;
      ok[idx] = true;
    }
  }
  static constexpr double band_weight[4] = {8.0, 2.0, 0.5, 0.125};
  std::vector<std::vector<double>> chain(
      kAlphabetSize, std::vector<double>(kAlphabetSize, 0.0));
  for (int from = 0; from < kAlphabetSize; ++from) {
    int from_band = from / (kNumAccelBands * kNumTurnBands);
    double total = 0.0;
    for (int to = 0; to < kAlphabetSize; ++to) {
      if (!ok[to]) continue;
      int to_band = to / (kNumAccelBands * kNumTurnBands);
      chain[from][to] = band_weight[std::abs(from_band - to_band)];
      total += chain[from][to];
    }
    if (!ok[from] || total == 0.0) {
      for (int to = 0; to < kAlphabetSize; ++to)
        chain[from][to] = ok[to] ? 1.0 / double(n_allowed) : 0.0;
    } else {
      for (int to = 0; to < kAlphabetSize; ++to) chain[from][to] /= total;
    }
  }
  return chain;
}

inline std::vector<std::vector<double>> default_base_chain() {
  return restricted_base_chain({});
}

inline void SynthConfig::validate() const {
  if (positions.empty()) fail("config", "at least one position is required");
  for (const auto& p : positions)
    if (p.empty()) fail("config", "empty position label");
  if (players_per_position < 1) fail("config", "players_per_position must be >= 1");
  for (const auto& [position, count] : players_by_position) {
    bool known = false;
    for (const auto& p : positions) known = known || p == position;
    if (!known)
      fail("config", "players_by_position references unknown position '" +
                         position + "'");
    if (count < 1) fail("config", "players_by_position counts must be >= 1");
  }
  if (matches_per_player < 1) fail("config", "matches_per_player must be >= 1");
  if (sequence_length_range.first < 2 ||
      sequence_length_range.first > sequence_length_range.second)
    fail("config", "sequence length range must satisfy 2 <= min <= max");
  if (sequences_per_observation_range.first < 1 ||
      sequences_per_observation_range.first > sequences_per_observation_range.second)
    fail("config", "sequences per observation range must satisfy 1 <= min <= max");
  if (!base_chain.empty()) {
    if (base_chain.size() != kAlphabetSize)
      fail("config", "base chain must have 48 rows");
    for (const auto& row : base_chain) {
      if (row.size() != kAlphabetSize)
        fail("config", "base chain rows must have 48 entries");
      double sum = 0.0;
      for (double p : row) {
        if (p < 0.0) fail("config", "base chain probabilities must be >= 0");
        sum += p;
      }
      if (std::fabs(sum - 1.0) > 1e-9)
        fail("config", "base chain rows must sum to 1");
    }
  }
  for (const auto& [position, specs] : motifs) {
    bool known = false;
    for (const auto& p : positions) known = known || p == position;
    if (!known)
      fail("config", "motifs reference unknown position '" + position + "'");
    for (const auto& m : specs) {
      if (m.pattern.empty()) fail("config", "empty motif pattern");
      for (char c : m.pattern)
        if (!valid_symbol(c))
          fail("config", std::string("motif symbol '") + c +
                             "' is outside the 48-symbol alphabet");
      if (m.rate_per_100 < 0.0) fail("config", "motif rate must be >= 0");
    }
  }
}

namespace detail {

inline int sample_chain_row(std::mt19937_64& rng, const std::vector<double>& row) {
  double r = rand01(rng);
  double acc = 0.0;
  for (size_t i = 0; i < row.size(); ++i) {
    acc += row[i];
    if (r < acc) return int(i);
  }
  for (size_t i = row.size(); i-- > 0;)  // numeric tail: last nonzero entry
    if (row[i] > 0.0) return int(i);
  return int(row.size()) - 1;
}

// Representative kinematics strictly inside each band.
inline double band_velocity(VelocityBand b) {
  switch (b) {
    case VelocityBand::Walk: return 0.85;
    case VelocityBand::Jog: return 2.80;
    case VelocityBand::Run: return 4.45;
    case VelocityBand::Sprint: return 5.50;
  }
  return 0.85;
}
inline double band_accel(AccelBand b) {
  switch (b) {
    case AccelBand::Deceleration: return -1.0;
    case AccelBand::Neutral: return 0.0;
    case AccelBand::Acceleration: return 1.0;
  }
  return 0.0;
}
inline double band_turn(TurnBand b) {
  switch (b) {
    case TurnBand::Straight: return 5.0;
    case TurnBand::Acute: return 25.0;
    case TurnBand::Large: return 60.0;
    case TurnBand::Backwards: return 120.0;
  }
  return 5.0;
}

}  // namespace detail

inline constexpr size_t kSynthGapSamples = 25;  // 2.5 s of sub-threshold rest

// Deterministic synthetic cohort: per observation, a seeded first-order
// Markov walk over the alphabet with position-specific motifs spliced in at
// the configured rate (overwriting in place, so lengths are unchanged).
// Observations come back ordered by (player_id, match_id).
inline std::vector<ObservationSet> generate_cohort(const SynthConfig& cfg) {
  cfg.validate();
  const auto chain = !cfg.base_chain.empty()
                         ? cfg.base_chain
                         : restricted_base_chain(cfg.active_symbols);

  std::vector<int> start_symbols;
  for (int s = 0; s < kAlphabetSize; ++s) {
    bool reachable = false;
    for (int from = 0; from < kAlphabetSize && !reachable; ++from)
      reachable = chain[from][s] > 0.0;
    if (reachable) start_symbols.push_back(s);
  }
  if (start_symbols.empty()) fail("config", "base chain has no reachable symbol");

  std::vector<ObservationSet> cohort;
  for (size_t pi = 0; pi < cfg.positions.size(); ++pi) {
    const std::string& position = cfg.positions[pi];
    const auto motif_it = cfg.motifs.find(position);
    const auto count_it = cfg.players_by_position.find(position);
    const int n_players = count_it != cfg.players_by_position.end()
                              ? count_it->second
                              : cfg.players_per_position;
    for (int player = 0; player < n_players; ++player) {
      char player_id[64];
      std::snprintf(player_id, sizeof player_id, "%s-%03d", position.c_str(),
                    player + 1);
      for (int match = 0; match < cfg.matches_per_player; ++match) {
        char match_id[32];
        std::snprintf(match_id, sizeof match_id, "match-%03d", match + 1);
        std::mt19937_64 rng(derive_seed(cfg.seed, pi, uint64_t(player),
                                        uint64_t(match)));

        ObservationSet obs;
        obs.player_id = player_id;
        obs.match_id = match_id;
        obs.position = position;

        int n_seqs = int(uniform_int(rng, cfg.sequences_per_observation_range.first,
                                     cfg.sequences_per_observation_range.second));
        for (int s = 0; s < n_seqs; ++s) {
          int len = int(uniform_int(rng, cfg.sequence_length_range.first,
                                    cfg.sequence_length_range.second));
          std::string symbols;
          symbols.reserve(size_t(len));
          int state =
              start_symbols[uniform_below(rng, start_symbols.size())];
          symbols.push_back(index_char(state));
          for (int i = 1; i < len; ++i) {
            state = detail::sample_chain_row(rng, chain[state]);
            symbols.push_back(index_char(state));
          }
          if (motif_it != cfg.motifs.end()) {
            for (const auto& motif : motif_it->second) {
              const size_t mlen = motif.pattern.size();
              if (mlen > symbols.size()) continue;
              double p = motif.rate_per_100 / 100.0;
              for (size_t i = 0; i + mlen <= symbols.size();) {
                if (rand01(rng) < p) {
                  symbols.replace(i, mlen, motif.pattern);
                  i += mlen;
                } else {
                  ++i;
                }
              }
            }
          }
          MovementSequence seq;
          seq.symbols = std::move(symbols);
          obs.sequences.push_back(std::move(seq));
        }
        cohort.push_back(std::move(obs));
      }
    }
  }
  std::sort(cohort.begin(), cohort.end(),
            [](const ObservationSet& a, const ObservationSet& b) {
              if (a.player_id != b.player_id) return a.player_id < b.player_id;
              return a.match_id < b.match_id;
            });

  // Lay down the 0.1 s timeline each observation's raw stream will use:
  // sequences separated by 2.5 s rest gaps.
  for (auto& obs : cohort) {
    size_t at = 0;
    for (auto& seq : obs.sequences) {
      seq.start_t = double(at) * kSamplePeriod;
      at += seq.symbols.size();
      seq.end_t = double(at - 1) * kSamplePeriod;
      at += kSynthGapSamples;
    }
  }
  return cohort;
}

// Realizes an observation as a raw 10 Hz stream whose discretization
// reproduces the sequences exactly: every symbol becomes a sample strictly
// inside its bands, and sequences are separated by 2.5 s of near-zero
// velocity that the inactive filter (defaults) removes.
inline TrackingStream realize_stream(const ObservationSet& obs) {
  TrackingStream stream;
  stream.player_id = obs.player_id;
  stream.match_id = obs.match_id;
  stream.position = obs.position;
  size_t at = 0;
  auto push = [&](double v, double a, double ta) {
    TrackingSample s;
    s.t = double(at++) * kSamplePeriod;
    s.velocity = v;
    s.acceleration = a;
    s.turning_angle = ta;
    stream.samples.push_back(s);
  };
  for (size_t si = 0; si < obs.sequences.size(); ++si) {
    if (si > 0)
      for (size_t g = 0; g < kSynthGapSamples; ++g) push(0.0, 0.0, 0.0);
    for (char c : obs.sequences[si].symbols) {
      MovementUnit u = unit_from_char(c);
      push(detail::band_velocity(u.velocity), detail::band_accel(u.acceleration),
           detail::band_turn(u.turning));
    }
  }
  return stream;
}

inline std::vector<TrackingStream> realize_streams(
    const std::vector<ObservationSet>& cohort) {
  std::vector<TrackingStream> out;
  out.reserve(cohort.size());
  for (const auto& obs : cohort) out.push_back(realize_stream(obs));
  return out;
}

}  // namespace movemine
