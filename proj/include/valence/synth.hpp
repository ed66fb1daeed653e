#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "valence/types.hpp"

namespace valence {

// Ground-truth signal generator. Either an explicit IBI sequence or the
// generator params (mean/sdnn/respiratory modulation) drive beat timing;
// the waveform is a train of asymmetric raised-cosine pulses plus slow
// baseline drift and optional Gaussian noise. Fully determined by `seed`.
struct SynthSpec {
  std::vector<double> ibi_sequence_ms;  // when empty, generator params apply
  double mean_ibi_ms = 1000.0;
  double sdnn_target_ms = 0.0;          // white jitter sd
  double respiratory_mod_hz = 0.0;
  double respiratory_mod_depth_ms = 0.0;
  double duration_s = 60.0;
  double noise_sd = 0.0;
  double sample_rate_hz = 25.0;
  std::uint64_t seed = 0;

  std::string session_id = "synth";
  std::string participant_id = "synthetic";
  std::int64_t start_ms = 0;
};

struct GroundTruth {
  std::vector<double> beat_times_ms;  // absolute, template maxima
  std::vector<double> nn_ms;          // successive differences
};

struct SynthResult {
  PpgSession session;
  GroundTruth truth;
};

SynthResult gen_ppg(const SynthSpec &spec);

struct CohortSpec {
  int participants = 15;
  int responses_per_participant = 20;
  double effect = 0.0;            // class separation in units of spread
  double phone_only_fraction = 0.0;
  std::uint64_t seed = 0;
};

struct GroundTruthLabel {
  std::string participant_id;
  std::string session_id;  // empty for phone-only responses
  std::int64_t timestamp_ms = 0;
  int valence = 0;  // +1 high, -1 low, 0 neutral
};

struct Cohort {
  std::vector<PpgSession> sessions;
  std::vector<SurveyResponse> surveys;
  std::vector<GroundTruthLabel> labels;
};

// High-valence responses get shorter, more variable interbeat intervals;
// effect = 0 makes the signal independent of the drawn class. A fixed
// tenth of responses is neutral (excluded by the default label rule) and
// phone-only responses are spread evenly and carry no session.
Cohort gen_cohort(const CohortSpec &spec);

}  // namespace valence
