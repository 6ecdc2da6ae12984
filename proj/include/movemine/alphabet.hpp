#pragma once

#include <cmath>
#include <string>
#include <string_view>

#include "movemine/error.hpp"

namespace movemine {

// A movement unit is the joint (velocity band, acceleration band, turning
// band) of one 0.1 s tracking sample, encoded as a single character of a
// 48-symbol alphabet.

enum class VelocityBand : int { Walk = 0, Jog, Run, Sprint };
enum class AccelBand : int { Deceleration = 0, Neutral, Acceleration };
enum class TurnBand : int { Straight = 0, Acute, Large, Backwards };

inline constexpr int kNumVelocityBands = 4;
inline constexpr int kNumAccelBands = 3;
inline constexpr int kNumTurnBands = 4;
inline constexpr int kAlphabetSize =
    kNumVelocityBands * kNumAccelBands * kNumTurnBands;  // 48

inline const char* to_string(VelocityBand b) {
  switch (b) {
    case VelocityBand::Walk: return "Walk";
    case VelocityBand::Jog: return "Jog";
    case VelocityBand::Run: return "Run";
    case VelocityBand::Sprint: return "Sprint";
  }
  return "?";
}

inline const char* to_string(AccelBand b) {
  switch (b) {
    case AccelBand::Deceleration: return "Deceleration";
    case AccelBand::Neutral: return "Neutral";
    case AccelBand::Acceleration: return "Acceleration";
  }
  return "?";
}

inline const char* to_string(TurnBand b) {
  switch (b) {
    case TurnBand::Straight: return "Straight";
    case TurnBand::Acute: return "Acute-Change";
    case TurnBand::Large: return "Large-Change";
    case TurnBand::Backwards: return "Backwards";
  }
  return "?";
}

// Band triples are enumerated velocity-major (Walk..Sprint), then
// acceleration (Deceleration, Neutral, Acceleration), then turning
// (Straight, Acute, Large, Backwards), and assigned 'a'..'z' followed by
// 'A'..'V'. The triple <-> character map is a bijection over all 48
// combinations.
constexpr int unit_index(VelocityBand v, AccelBand a, TurnBand t) {
  return int(v) * (kNumAccelBands * kNumTurnBands) + int(a) * kNumTurnBands +
         int(t);
}

constexpr char index_char(int idx) {
  return idx < 26 ? char('a' + idx) : char('A' + (idx - 26));
}

constexpr int char_index(char c) {  // -1 when outside the alphabet
  if (c >= 'a' && c <= 'z') return c - 'a';
  if (c >= 'A' && c <= 'V') return 26 + (c - 'A');
  return -1;
}

constexpr char unit_char(VelocityBand v, AccelBand a, TurnBand t) {
  return index_char(unit_index(v, a, t));
}

constexpr bool valid_symbol(char c) { return char_index(c) >= 0; }

inline bool valid_sequence(std::string_view s) {
  for (char c : s)
    if (!valid_symbol(c)) return false;
  return !s.empty();
}

struct MovementUnit {
  VelocityBand velocity;
  AccelBand acceleration;
  TurnBand turning;
  char character;
};

inline MovementUnit unit_from_char(char c) {
  int idx = char_index(c);
  if (idx < 0)
    fail("config",
         std::string("character '") + c + "' is outside the 48-symbol alphabet");
  auto v = VelocityBand(idx / (kNumAccelBands * kNumTurnBands));
  auto a = AccelBand((idx / kNumTurnBands) % kNumAccelBands);
  auto t = TurnBand(idx % kNumTurnBands);
  return {v, a, t, c};
}

// Banding thresholds. The interval shapes are fixed; only the cut points are
// configurable:
//   velocity:  Walk [0, walk_max)   Jog [walk_max, jog_max]
//              Run (jog_max, run_max)   Sprint [run_max, inf)
//   accel:     Deceleration (-inf, decel_max]   Neutral (decel_max, accel_min)
//              Acceleration [accel_min, inf)
//   turning:   Straight [0, straight_max)   Acute [straight_max, acute_max)
//              Large [acute_max, large_max)   Backwards [large_max, 180]
struct BandThresholds {
  double walk_max = 1.70;    // m/s
  double jog_max = 3.90;     // m/s
  double run_max = 5.00;     // m/s
  double decel_max = -0.20;  // m/s^2
  double accel_min = 0.20;   // m/s^2
  double straight_max = 10.0;  // deg
  double acute_max = 45.0;     // deg
  double large_max = 90.0;     // deg

  void validate() const {
    if (!(0.0 < walk_max && walk_max < jog_max && jog_max < run_max))
      fail("config", "velocity cut points must be ascending and positive");
    if (!(decel_max < accel_min))
      fail("config", "acceleration cut points must be ascending");
    if (!(0.0 < straight_max && straight_max < acute_max &&
          acute_max < large_max && large_max <= 180.0))
      fail("config", "turning cut points must be ascending and within (0, 180]");
  }
};

inline VelocityBand velocity_band(double v, const BandThresholds& b) {
  if (v < b.walk_max) return VelocityBand::Walk;
  if (v <= b.jog_max) return VelocityBand::Jog;
  if (v < b.run_max) return VelocityBand::Run;
  return VelocityBand::Sprint;
}

inline AccelBand accel_band(double a, const BandThresholds& b) {
  if (a <= b.decel_max) return AccelBand::Deceleration;
  if (a < b.accel_min) return AccelBand::Neutral;
  return AccelBand::Acceleration;
}

inline TurnBand turn_band(double t, const BandThresholds& b) {
  if (t < b.straight_max) return TurnBand::Straight;
  if (t < b.acute_max) return TurnBand::Acute;
  if (t < b.large_max) return TurnBand::Large;
  return TurnBand::Backwards;
}

}  // namespace movemine
