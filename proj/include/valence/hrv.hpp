#pragma once

#include <optional>
#include <string>
#include <vector>

#include "valence/preprocess.hpp"
#include "valence/types.hpp"

namespace valence {

// interval cleaning bounds
inline constexpr double kMinIntervalMs = 300.0;
inline constexpr double kMaxIntervalMs = 2000.0;
inline constexpr double kMaxSuccessiveChange = 0.30;
inline constexpr int kMinAcceptedIntervals = 10;

// plausible heart-rate band for elevation selection
inline constexpr double kMinPlausibleBpm = 40.0;
inline constexpr double kMaxPlausibleBpm = 180.0;
// maximum RR scatter (sd / mean) a candidate may show before it is
// treated as noise rather than a rhythm
inline constexpr double kMaxRrScatter = 0.35;

// Adaptive-threshold beat detection on a filtered segment: a 0.75 s moving
// average is raised by a fraction of the segment amplitude; the elevation
// whose implied BPM is plausible and whose RR spread is smallest wins.
// Peak times are refined to sub-sample precision. Throws NoPlausiblePeaks.
NnSeries detect_peaks(const PpgSegment &segment);

// Successive peak-time differences, then artifact rejection: intervals
// outside [300, 2000] ms or deviating more than 30% from the previous
// accepted interval are dropped. Throws TooFewIntervals when fewer than
// min_accepted remain.
NnSeries nn_intervals(const NnSeries &peaks,
                      int min_accepted = kMinAcceptedIntervals);

// bpm, ibi, sdnn, rmssd, pnn20, pnn50, hr_mad (population statistics,
// strict pNN thresholds, median absolute deviation)
HrvFeatures time_domain_features(const NnSeries &nn);

// sd1, sd2, s = pi*sd1*sd2, sd1/sd2 (missing when sd2 = 0), written into
// a copy of `base`
HrvFeatures poincare_features(const NnSeries &nn, HrvFeatures base = {});

// Cubic-spline resampling of the NN series onto a 4 Hz grid, periodogram,
// peak frequency within [0.1, 0.4] Hz. Missing when the series spans less
// than 20 s, has fewer than 10 intervals, or the peak power is ~zero.
std::optional<double> breathing_rate(const NnSeries &nn);

struct FeatureExtraction {
  std::optional<HrvFeatures> features;
  std::string failure_stage;   // "peak_detection" | "interval_cleaning"
  std::string failure_reason;  // stable error code

  bool ok() const { return features.has_value(); }
};

// detect_peaks -> nn_intervals -> feature ops; a stage failure yields a
// missing row tagged with the stage.
FeatureExtraction compute_features(const PpgSegment &segment);

}  // namespace valence
