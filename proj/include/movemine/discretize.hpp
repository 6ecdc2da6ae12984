#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "movemine/alphabet.hpp"
#include "movemine/error.hpp"
#include "movemine/types.hpp"

namespace movemine {

inline constexpr double kSamplePeriod = 0.1;  // 10 Hz
inline constexpr double kGridTolerance = 1e-6;

struct InactiveConfig {
  double v_min = 0.1;    // m/s: below this a sample counts as inactive
  double min_dur = 2.0;  // s: inactive runs at least this long are removed
  int min_seq_len = 2;   // symbols: shorter segments are discarded

  void validate() const {
    if (v_min < 0.0) fail("config", "inactive velocity must be >= 0");
    if (min_dur <= 0.0) fail("config", "inactive duration must be > 0");
    if (min_seq_len < 1) fail("config", "minimum segment length must be >= 1");
  }
};

// Optional accounting filled by build_sequences; total samples always equals
// emitted symbols + samples inside removed inactive runs + symbols in
// discarded short segments.
struct SegmentationStats {
  size_t total_samples = 0;
  size_t inactive_removed = 0;
  size_t short_discarded = 0;
  size_t emitted_symbols = 0;
};

// Fills missing accelerations by backward finite difference on the 0.1 s
// grid: a[i] = (v[i] - v[i-1]) / 0.1, a[0] = 0. Samples that already carry
// an acceleration are left untouched.
inline void derive_acceleration(std::vector<TrackingSample>& samples) {
  for (size_t i = 0; i < samples.size(); ++i) {
    if (i > 0) {
      double dt = samples[i].t - samples[i - 1].t;
      if (std::fabs(dt - kSamplePeriod) > kGridTolerance)
        fail("gap", "non-uniform 0.1 s grid at t=" + std::to_string(samples[i].t));
    }
    if (samples[i].acceleration) continue;
    samples[i].acceleration =
        (i == 0) ? 0.0
                 : (samples[i].velocity - samples[i - 1].velocity) / kSamplePeriod;
  }
}

// Fills missing turning angles from heading: |h[i] - h[i-1]| folded into
// [0, 180] via min(d, 360 - d); 0 at the stream head. Headings are taken
// modulo 360.
inline void derive_turning_angle(std::vector<TrackingSample>& samples) {
  auto norm_heading = [](double h) {
    double m = std::fmod(h, 360.0);
    return m < 0 ? m + 360.0 : m;
  };
  for (size_t i = 0; i < samples.size(); ++i) {
    if (samples[i].turning_angle) continue;
    if (i == 0) {
      samples[i].turning_angle = 0.0;
      continue;
    }
    if (!samples[i].heading || !samples[i - 1].heading)
      fail("unrecoverable-input",
           "sample at t=" + std::to_string(samples[i].t) +
               " has neither turning_angle nor heading");
    double d = std::fabs(norm_heading(*samples[i].heading) -
                         norm_heading(*samples[i - 1].heading));
    samples[i].turning_angle = std::min(d, 360.0 - d);
  }
}

// Maps one sample to its movement unit. Negative velocities and turning
// angles outside [0, 180] are clamped with a warning; non-finite signals are
// rejected.
inline MovementUnit discretize_sample(const TrackingSample& s,
                                      const BandThresholds& bt,
                                      std::vector<std::string>* warnings = nullptr) {
  if (!s.acceleration || !s.turning_angle)
    fail("invalid-sample", "sample at t=" + std::to_string(s.t) +
                               " is missing acceleration or turning angle");
  double v = s.velocity;
  double a = *s.acceleration;
  double ta = *s.turning_angle;
  if (!std::isfinite(v) || !std::isfinite(a) || !std::isfinite(ta))
    fail("invalid-sample", "non-finite signal at t=" + std::to_string(s.t));
  if (v < 0.0) {
    warn(warnings, "negative velocity clamped to 0 at t=" + std::to_string(s.t));
    v = 0.0;
  }
  if (ta < 0.0 || ta > 180.0) {
    warn(warnings,
         "turning angle clamped into [0,180] at t=" + std::to_string(s.t));
    ta = std::clamp(ta, 0.0, 180.0);
  }
  MovementUnit u{velocity_band(v, bt), accel_band(a, bt), turn_band(ta, bt), 0};
  u.character = unit_char(u.velocity, u.acceleration, u.turning);
  return u;
}

namespace detail {

// Splits [0, n) into maximal runs of consecutive samples 0.1 s apart.
// Spacing larger than the grid marks a stream gap; smaller is an error.
inline std::vector<std::pair<size_t, size_t>> grid_runs(
    const std::vector<TrackingSample>& samples) {
  std::vector<std::pair<size_t, size_t>> runs;
  size_t begin = 0;
  for (size_t i = 1; i < samples.size(); ++i) {
    double dt = samples[i].t - samples[i - 1].t;
    if (std::fabs(dt - kSamplePeriod) <= kGridTolerance) continue;
    if (dt < kSamplePeriod - kGridTolerance)
      fail("gap", "samples closer than the 0.1 s grid at t=" +
                      std::to_string(samples[i].t));
    runs.emplace_back(begin, i);
    begin = i;
  }
  if (!samples.empty()) runs.emplace_back(begin, samples.size());
  return runs;
}

}  // namespace detail

// Turns one player-match stream into its set of movement sequences:
//  1. split at stream gaps,
//  2. fill missing accelerations / turning angles per contiguous run,
//  3. remove maximal runs of velocity < v_min lasting >= min_dur,
//  4. discretize what remains, dropping segments shorter than min_seq_len.
// An observation left with zero sequences is reported through `warnings`;
// the caller decides whether to exclude it.
inline ObservationSet build_sequences(const TrackingStream& stream,
                                      const BandThresholds& bt,
                                      const InactiveConfig& cfg,
                                      std::vector<std::string>* warnings = nullptr,
                                      SegmentationStats* stats = nullptr) {
  bt.validate();
  cfg.validate();
  ObservationSet out{stream.player_id, stream.match_id, stream.position, {}};
  if (stats) *stats = SegmentationStats{};
  if (stats) stats->total_samples = stream.samples.size();

  const size_t min_inactive =
      size_t(std::ceil(cfg.min_dur / kSamplePeriod - 1e-9));

  for (auto [rb, re] : detail::grid_runs(stream.samples)) {
    std::vector<TrackingSample> run(stream.samples.begin() + rb,
                                    stream.samples.begin() + re);
    derive_acceleration(run);
    derive_turning_angle(run);

    // Segment boundaries around removed inactive runs.
    size_t i = 0;
    const size_t n = run.size();
    std::vector<std::pair<size_t, size_t>> segments;
    size_t seg_begin = 0;
    while (i < n) {
      if (run[i].velocity < cfg.v_min) {
        size_t j = i;
        while (j < n && run[j].velocity < cfg.v_min) ++j;
        if (j - i >= min_inactive) {
          if (i > seg_begin) segments.emplace_back(seg_begin, i);
          if (stats) stats->inactive_removed += j - i;
          seg_begin = j;
        }
        i = j;
      } else {
        ++i;
      }
    }
    if (n > seg_begin) segments.emplace_back(seg_begin, n);

    for (auto [sb, se] : segments) {
      if (se - sb < size_t(cfg.min_seq_len)) {
        if (stats) stats->short_discarded += se - sb;
        continue;
      }
      MovementSequence seq;
      seq.symbols.reserve(se - sb);
      for (size_t k = sb; k < se; ++k)
        seq.symbols.push_back(discretize_sample(run[k], bt, warnings).character);
      seq.start_t = run[sb].t;
      seq.end_t = run[se - 1].t;
      if (stats) stats->emitted_symbols += seq.symbols.size();
      out.sequences.push_back(std::move(seq));
    }
  }

  if (out.sequences.empty())
    warn(warnings, "observation " + out.id() + " has no active sequences");
  return out;
}

}  // namespace movemine
