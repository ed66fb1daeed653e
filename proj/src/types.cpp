#include "valence/types.hpp"

#include <cmath>

namespace valence {

const std::array<std::string_view, kEmotionCount> &emotion_names() {
  static const std::array<std::string_view, kEmotionCount> names = {
      "active", "inspired", "attentive", "determined", "alert",
      "hostile", "nervous",  "upset",     "afraid",     "ashamed"};
  return names;
}

std::string_view to_string(Emotion e) {
  return emotion_names()[static_cast<std::size_t>(e)];
}

std::optional<Emotion> emotion_from_string(std::string_view name) {
  const auto &names = emotion_names();
  for (std::size_t i = 0; i < names.size(); ++i)
    if (names[i] == name) return static_cast<Emotion>(i);
  return std::nullopt;
}

const std::array<std::string_view, kFeatureCount> &feature_names() {
  static const std::array<std::string_view, kFeatureCount> names = {
      "bpm",  "ibi", "sdnn", "rmssd", "pnn20",   "pnn50",
      "hr_mad", "sd1", "sd2",  "s",     "sd1_sd2", "breathing_rate"};
  return names;
}

std::array<std::optional<double>, kFeatureCount> feature_values(
    const HrvFeatures &f) {
  return {f.bpm,  f.ibi, f.sdnn, f.rmssd, f.pnn20,   f.pnn50,
          f.hr_mad, f.sd1, f.sd2,  f.s,     f.sd1_sd2, f.breathing_rate};
}

std::vector<std::string> validate_session(const PpgSession &session) {
  std::vector<std::string> violations;
  if (session.session_id.empty()) violations.push_back("empty session_id");
  if (!(session.sample_rate_hz > 0.0))
    violations.push_back("non-positive sample_rate_hz");
  for (std::size_t i = 0; i < session.samples.size(); ++i) {
    const auto &s = session.samples[i];
    if (s.timestamp_ms < 0)
      violations.push_back("negative timestamp at index " + std::to_string(i));
    if (!std::isfinite(s.value))
      violations.push_back("non-finite value at index " + std::to_string(i));
    if (i > 0 && s.timestamp_ms <= session.samples[i - 1].timestamp_ms)
      violations.push_back("non-increasing timestamp at index " +
                           std::to_string(i));
  }
  return violations;
}

}  // namespace valence
