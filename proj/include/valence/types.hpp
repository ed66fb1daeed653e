#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace valence {

struct PpgSample {
  std::int64_t timestamp_ms = 0;
  double value = 0.0;  // raw PPG-green ADC reading, dimensionless
};

struct PpgSession {
  std::string session_id;
  std::string participant_id;
  double sample_rate_hz = 25.0;
  std::vector<PpgSample> samples;  // strictly increasing timestamps
};

// The ten PANAS-10 items, fixed order: five positive then five negative.
enum class Emotion {
  Active,
  Inspired,
  Attentive,
  Determined,
  Alert,
  Hostile,
  Nervous,
  Upset,
  Afraid,
  Ashamed,
};

inline constexpr int kEmotionCount = 10;
inline constexpr int kPositiveItemCount = 5;

const std::array<std::string_view, kEmotionCount> &emotion_names();
std::string_view to_string(Emotion e);
std::optional<Emotion> emotion_from_string(std::string_view name);

struct SurveyResponse {
  std::string participant_id;
  std::string session_id;  // empty when reported on phone (no signal)
  std::int64_t timestamp_ms = 0;
  std::array<int, kEmotionCount> item_scores{};  // each 1..5, Emotion order
  int cognitive_load = 1;                        // 1..5

  int score(Emotion e) const {
    return item_scores[static_cast<std::size_t>(e)];
  }

  bool operator==(const SurveyResponse &) const = default;
};

struct AffectScores {
  int positive_affect = 0;  // 5..25
  int negative_affect = 0;  // 5..25

  bool operator==(const AffectScores &) const = default;
};

struct HrvFeatures {
  double bpm = 0.0;     // beats/min
  double ibi = 0.0;     // ms, mean interbeat interval
  double sdnn = 0.0;    // ms
  double rmssd = 0.0;   // ms
  double pnn20 = 0.0;   // proportion 0..1
  double pnn50 = 0.0;   // proportion 0..1
  double hr_mad = 0.0;  // ms
  double sd1 = 0.0;     // ms
  double sd2 = 0.0;     // ms
  double s = 0.0;       // ms^2, Poincare ellipse area
  std::optional<double> sd1_sd2;         // missing when sd2 = 0
  std::optional<double> breathing_rate;  // Hz, missing when undetectable
};

inline constexpr int kFeatureCount = 12;
const std::array<std::string_view, kFeatureCount> &feature_names();

// Feature vector in feature_names() order; unset entries are missing.
std::array<std::optional<double>, kFeatureCount> feature_values(
    const HrvFeatures &f);

struct NnSeries {
  std::vector<double> peak_times_ms;  // detected beat timestamps
  std::vector<double> intervals_ms;   // NN intervals, each > 0
};

struct LabeledSample {
  std::string participant_id;
  std::int64_t timestamp_ms = 0;
  HrvFeatures features;
  AffectScores affect;
  std::array<int, kEmotionCount> item_scores{};
  int label = 0;  // +1 or -1
};

// Checks every PpgSession invariant; one entry per violation. Never throws.
std::vector<std::string> validate_session(const PpgSession &session);

}  // namespace valence
