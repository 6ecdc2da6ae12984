#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "movemine/alphabet.hpp"
#include "movemine/classify/cv.hpp"
#include "movemine/discretize.hpp"
#include "movemine/error.hpp"
#include "movemine/mine_smp.hpp"
#include "movemine/synth.hpp"
#include "movemine/types.hpp"

namespace movemine {

namespace detail {

template <class T>
void read_field(const nlohmann::json& j, const char* key, T& out) {
  if (!j.contains(key)) return;
  try {
    out = j.at(key).get<T>();
  } catch (const nlohmann::json::exception& e) {
    fail("config", std::string("field '") + key + "': " + e.what());
  }
}

inline void read_range(const nlohmann::json& j, const char* key,
                       std::pair<int, int>& out) {
  if (!j.contains(key)) return;
  const auto& v = j.at(key);
  if (!v.is_array() || v.size() != 2)
    fail("config", std::string("field '") + key + "' must be [min, max]");
  out.first = v[0].get<int>();
  out.second = v[1].get<int>();
}

}  // namespace detail

// Thresholds JSON: {"velocity": [walk_max, jog_max, run_max],
//                   "acceleration": [decel_max, accel_min],
//                   "turning": [straight_max, acute_max, large_max]}
inline BandThresholds thresholds_from_json(const nlohmann::json& j) {
  BandThresholds bt;
  if (j.contains("velocity")) {
    const auto& v = j.at("velocity");
    if (!v.is_array() || v.size() != 3)
      fail("config", "thresholds.velocity must hold 3 cut points");
    bt.walk_max = v[0].get<double>();
    bt.jog_max = v[1].get<double>();
    bt.run_max = v[2].get<double>();
  }
  if (j.contains("acceleration")) {
    const auto& v = j.at("acceleration");
    if (!v.is_array() || v.size() != 2)
      fail("config", "thresholds.acceleration must hold 2 cut points");
    bt.decel_max = v[0].get<double>();
    bt.accel_min = v[1].get<double>();
  }
  if (j.contains("turning")) {
    const auto& v = j.at("turning");
    if (!v.is_array() || v.size() != 3)
      fail("config", "thresholds.turning must hold 3 cut points");
    bt.straight_max = v[0].get<double>();
    bt.acute_max = v[1].get<double>();
    bt.large_max = v[2].get<double>();
  }
  bt.validate();
  return bt;
}

inline SynthConfig synth_config_from_json(const nlohmann::json& j) {
  SynthConfig cfg;
  detail::read_field(j, "positions", cfg.positions);
  detail::read_field(j, "players_per_position", cfg.players_per_position);
  detail::read_field(j, "players_by_position", cfg.players_by_position);
  detail::read_field(j, "matches_per_player", cfg.matches_per_player);
  detail::read_field(j, "seed", cfg.seed);
  detail::read_field(j, "base_chain", cfg.base_chain);
  detail::read_field(j, "active_symbols", cfg.active_symbols);
  detail::read_range(j, "sequence_length_range", cfg.sequence_length_range);
  detail::read_range(j, "sequences_per_observation_range",
                     cfg.sequences_per_observation_range);
  if (j.contains("motifs")) {
    for (const auto& [position, specs] : j.at("motifs").items()) {
      std::vector<MotifSpec> list;
      for (const auto& spec : specs) {
        MotifSpec m;
        m.pattern = spec.at("pattern").get<std::string>();
        detail::read_field(spec, "rate_per_100", m.rate_per_100);
        list.push_back(std::move(m));
      }
      cfg.motifs[position] = std::move(list);
    }
  }
  cfg.validate();
  return cfg;
}

}  // namespace movemine
