#include <catch2/catch.hpp>

#include <random>
#include <set>

#include "movemine/alphabet.hpp"

using namespace movemine;

TEST_CASE("the 48 band triples map to 48 distinct characters") {
  std::set<char> chars;
  for (int v = 0; v < kNumVelocityBands; ++v)
    for (int a = 0; a < kNumAccelBands; ++a)
      for (int t = 0; t < kNumTurnBands; ++t)
        chars.insert(unit_char(VelocityBand(v), AccelBand(a), TurnBand(t)));
  CHECK(chars.size() == 48);
  CHECK(*chars.begin() == 'A');   // uppercase block
  CHECK(*chars.rbegin() == 'z');  // lowercase block
}

TEST_CASE("character -> triple -> character round-trips over the alphabet") {
  for (int idx = 0; idx < kAlphabetSize; ++idx) {
    char c = index_char(idx);
    MovementUnit u = unit_from_char(c);
    CHECK(unit_char(u.velocity, u.acceleration, u.turning) == c);
    CHECK(char_index(c) == idx);
  }
  CHECK(char_index('W') == -1);  // first character past the alphabet
  CHECK(char_index('0') == -1);
  CHECK_THROWS_AS(unit_from_char('!'), error);
}

TEST_CASE("attested character assignments") {
  auto c = [](VelocityBand v, AccelBand a, TurnBand t) {
    return unit_char(v, a, t);
  };
  using V = VelocityBand;
  using A = AccelBand;
  using T = TurnBand;

  // Walk block, straight through backwards
  CHECK(c(V::Walk, A::Deceleration, T::Acute) == 'b');
  CHECK(c(V::Walk, A::Deceleration, T::Backwards) == 'd');
  CHECK(c(V::Walk, A::Neutral, T::Straight) == 'e');
  CHECK(c(V::Walk, A::Neutral, T::Acute) == 'f');
  CHECK(c(V::Walk, A::Neutral, T::Backwards) == 'h');
  CHECK(c(V::Walk, A::Acceleration, T::Straight) == 'i');
  CHECK(c(V::Walk, A::Acceleration, T::Acute) == 'j');
  CHECK(c(V::Walk, A::Acceleration, T::Large) == 'k');
  // Jog acceleration
  CHECK(c(V::Jog, A::Acceleration, T::Straight) == 'u');
  CHECK(c(V::Jog, A::Acceleration, T::Acute) == 'v');
  // Run / sprint acceleration
  CHECK(c(V::Run, A::Acceleration, T::Straight) == 'G');
  CHECK(c(V::Run, A::Acceleration, T::Acute) == 'H');
  CHECK(c(V::Sprint, A::Acceleration, T::Straight) == 'S');
  CHECK(c(V::Sprint, A::Acceleration, T::Acute) == 'T');
}

TEST_CASE("band boundaries follow the printed inequalities") {
  BandThresholds bt;

  CHECK(velocity_band(0.0, bt) == VelocityBand::Walk);
  CHECK(velocity_band(1.69, bt) == VelocityBand::Walk);
  CHECK(velocity_band(1.70, bt) == VelocityBand::Jog);  // closed lower bound
  CHECK(velocity_band(3.90, bt) == VelocityBand::Jog);  // closed upper bound
  CHECK(velocity_band(3.95, bt) == VelocityBand::Run);
  CHECK(velocity_band(4.99, bt) == VelocityBand::Run);
  CHECK(velocity_band(5.00, bt) == VelocityBand::Sprint);
  CHECK(velocity_band(12.0, bt) == VelocityBand::Sprint);

  CHECK(accel_band(-5.0, bt) == AccelBand::Deceleration);
  CHECK(accel_band(-0.20, bt) == AccelBand::Deceleration);  // closed bound
  CHECK(accel_band(-0.19, bt) == AccelBand::Neutral);
  CHECK(accel_band(0.0, bt) == AccelBand::Neutral);
  CHECK(accel_band(0.19, bt) == AccelBand::Neutral);
  CHECK(accel_band(0.20, bt) == AccelBand::Acceleration);  // closed bound
  CHECK(accel_band(7.0, bt) == AccelBand::Acceleration);

  CHECK(turn_band(0.0, bt) == TurnBand::Straight);
  CHECK(turn_band(9.99, bt) == TurnBand::Straight);
  CHECK(turn_band(10.0, bt) == TurnBand::Acute);
  CHECK(turn_band(44.9, bt) == TurnBand::Acute);
  CHECK(turn_band(45.0, bt) == TurnBand::Large);
  CHECK(turn_band(89.9, bt) == TurnBand::Large);
  CHECK(turn_band(90.0, bt) == TurnBand::Backwards);
  CHECK(turn_band(180.0, bt) == TurnBand::Backwards);
}

TEST_CASE("every finite signal triple lands in exactly one band character") {
  BandThresholds bt;
  std::mt19937_64 rng(7);
  auto pick = [&](std::initializer_list<double> special, double lo, double hi) {
    if (rng() % 4 == 0) {
      auto it = special.begin();
      std::advance(it, rng() % special.size());
      return *it;
    }
    return lo + (hi - lo) * double(rng() % 10000) / 10000.0;
  };
  for (int i = 0; i < 10000; ++i) {
    double v = pick({0.0, 1.70, 3.90, 5.00}, 0.0, 12.0);
    double a = pick({-0.20, 0.0, 0.20}, -8.0, 8.0);
    double t = pick({0.0, 10.0, 45.0, 90.0, 180.0}, 0.0, 180.0);
    char c = unit_char(velocity_band(v, bt), accel_band(a, bt), turn_band(t, bt));
    REQUIRE(valid_symbol(c));
    MovementUnit u = unit_from_char(c);
    CHECK(u.velocity == velocity_band(v, bt));
    CHECK(u.acceleration == accel_band(a, bt));
    CHECK(u.turning == turn_band(t, bt));
  }
}

TEST_CASE("threshold validation rejects non-ascending cut points") {
  BandThresholds bt;
  bt.jog_max = bt.walk_max;
  CHECK_THROWS_AS(bt.validate(), error);
  BandThresholds bt2;
  bt2.accel_min = -1.0;
  CHECK_THROWS_AS(bt2.validate(), error);
}
