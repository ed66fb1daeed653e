#include "valence/synth.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "valence/errors.hpp"
#include "valence/util.hpp"

namespace valence {

namespace {

// asymmetric raised cosine: 120 ms rise, 180 ms fall, maximum at tau = 0
constexpr double kRiseMs = 120.0;
constexpr double kFallMs = 180.0;
constexpr double kPulseAmplitude = 100.0;
constexpr double kBaseline = 512.0;
constexpr double kDriftAmplitude = 30.0;
constexpr double kDriftHz = 0.05;

double pulse_shape(double tau_ms) {
  if (tau_ms < -kRiseMs || tau_ms > kFallMs) return 0.0;
  const double half_width = tau_ms < 0.0 ? kRiseMs : kFallMs;
  return 0.5 * (1.0 + std::cos(std::numbers::pi * tau_ms / half_width));
}

}  // namespace

SynthResult gen_ppg(const SynthSpec &spec) {
  if (spec.sample_rate_hz <= 0.0) throw InvalidSpec("sample_rate_hz <= 0");
  if (spec.noise_sd < 0.0) throw InvalidSpec("noise_sd < 0");
  if (spec.duration_s <= 1.0) throw InvalidSpec("duration_s too small");
  for (double ibi : spec.ibi_sequence_ms)
    if (ibi < 300.0 || ibi > 2000.0)
      throw InvalidSpec("explicit IBI outside [300, 2000] ms");
  if (spec.ibi_sequence_ms.empty() &&
      (spec.mean_ibi_ms < 300.0 || spec.mean_ibi_ms > 2000.0))
    throw InvalidSpec("mean_ibi_ms outside [300, 2000] ms");

  Rng rng(spec.seed);
  const double duration_ms = spec.duration_s * 1000.0;
  // Guard margin for the first/last beat: clear of the pulse support and
  // of the zero-phase filter's boundary transients downstream.
  const double edge_ms = 480.0;

  GroundTruth truth;
  if (!spec.ibi_sequence_ms.empty()) {
    double t = edge_ms;
    truth.beat_times_ms.push_back(t);
    for (double ibi : spec.ibi_sequence_ms) {
      t += ibi;
      if (t > duration_ms - edge_ms) break;
      truth.beat_times_ms.push_back(t);
    }
  } else {
    double t = edge_ms;
    while (true) {
      truth.beat_times_ms.push_back(t);
      double ibi = spec.mean_ibi_ms + rng.gauss(0.0, spec.sdnn_target_ms);
      if (spec.respiratory_mod_hz > 0.0)
        ibi += spec.respiratory_mod_depth_ms *
               std::sin(2.0 * std::numbers::pi * spec.respiratory_mod_hz * t /
                        1000.0);
      ibi = std::clamp(ibi, 300.0, 2000.0);
      t += ibi;
      if (t > duration_ms - edge_ms) break;
    }
  }
  for (std::size_t i = 0; i + 1 < truth.beat_times_ms.size(); ++i)
    truth.nn_ms.push_back(truth.beat_times_ms[i + 1] - truth.beat_times_ms[i]);

  const double drift_phase = rng.uniform(0.0, 2.0 * std::numbers::pi);

  PpgSession session;
  session.session_id = spec.session_id;
  session.participant_id = spec.participant_id;
  session.sample_rate_hz = spec.sample_rate_hz;
  const double dt_ms = 1000.0 / spec.sample_rate_hz;
  const auto n_samples = static_cast<std::size_t>(
      std::floor(duration_ms / dt_ms));
  session.samples.reserve(n_samples);

  std::size_t beat_lo = 0;
  for (std::size_t i = 0; i < n_samples; ++i) {
    const double t = static_cast<double>(i) * dt_ms;
    while (beat_lo < truth.beat_times_ms.size() &&
           truth.beat_times_ms[beat_lo] < t - kFallMs - dt_ms)
      ++beat_lo;
    double value = kBaseline +
                   kDriftAmplitude *
                       std::sin(2.0 * std::numbers::pi * kDriftHz * t / 1000.0 +
                                drift_phase);
    for (std::size_t k = beat_lo; k < truth.beat_times_ms.size(); ++k) {
      const double tau = t - truth.beat_times_ms[k];
      if (tau < -kRiseMs - dt_ms) break;
      value += kPulseAmplitude * pulse_shape(tau);
    }
    if (spec.noise_sd > 0.0) value += rng.gauss(0.0, spec.noise_sd);
    session.samples.push_back(
        {spec.start_ms + static_cast<std::int64_t>(std::llround(t)), value});
  }

  // shift ground truth to absolute time
  for (auto &bt : truth.beat_times_ms) bt += static_cast<double>(spec.start_ms);

  return {std::move(session), std::move(truth)};
}

namespace {

// cohort generation constants
constexpr double kBaseIbiLowMs = 820.0;
constexpr double kBaseIbiHighMs = 880.0;
constexpr double kSpreadMs = 40.0;          // effect unit
constexpr double kWithinSigmaMs = 12.0;     // response-to-response wobble
constexpr double kBaseJitterMs = 25.0;      // white NN jitter
constexpr double kJitterModPerEffect = 0.35;
constexpr double kRespDepthMs = 20.0;
constexpr double kSignalNoiseSd = 4.0;
constexpr double kSessionDurationS = 72.0;
constexpr std::int64_t kEpochBaseMs = 1677628800000;  // 2023-03-01 00:00 UTC

int skewed_low_score(Rng &rng) {
  const double u = rng.uniform01();
  if (u < 0.70) return 1;
  if (u < 0.90) return 2;
  if (u < 0.97) return 3;
  if (u < 0.995) return 4;
  return 5;
}

std::string zero_padded(int v, int width) {
  std::string s = std::to_string(v);
  while (static_cast<int>(s.size()) < width) s.insert(s.begin(), '0');
  return s;
}

}  // namespace

Cohort gen_cohort(const CohortSpec &spec) {
  if (spec.effect < 0.0) throw InvalidSpec("effect < 0");
  if (spec.participants < 1 || spec.responses_per_participant < 1)
    throw InvalidSpec("cohort counts must be positive");
  if (spec.phone_only_fraction < 0.0 || spec.phone_only_fraction > 1.0)
    throw InvalidSpec("phone_only_fraction outside [0, 1]");

  const int responses = spec.responses_per_participant;
  const int n_phone = static_cast<int>(
      std::lround(spec.phone_only_fraction * responses));

  struct MemberData {
    std::vector<PpgSession> sessions;
    std::vector<SurveyResponse> surveys;
    std::vector<GroundTruthLabel> labels;
  };
  std::vector<MemberData> members(static_cast<std::size_t>(spec.participants));

  parallel_for(static_cast<std::size_t>(spec.participants), [&](std::size_t p) {
    Rng rng(Rng::derive_seed(spec.seed, p));
    MemberData &member = members[p];
    const std::string participant_id =
        "p" + zero_padded(static_cast<int>(p) + 1, 2);

    const double base_ibi = rng.uniform(kBaseIbiLowMs, kBaseIbiHighMs);
    const double resp_hz = rng.uniform(0.15, 0.35);

    for (int r = 0; r < responses; ++r) {
      // two reports per day inside working hours, spaced apart
      const int day = r / 2;
      const int hour =
          r % 2 == 0 ? rng.uniform_int(8, 12) : rng.uniform_int(13, 18);
      const int minute = rng.uniform_int(0, 59);
      const int second = rng.uniform_int(0, 59);
      const std::int64_t timestamp =
          kEpochBaseMs + static_cast<std::int64_t>(p) * 1000 +
          static_cast<std::int64_t>(day) * 86400000LL + hour * 3600000LL +
          minute * 60000LL + second * 1000LL;

      // valence class: every tenth response neutral, rest a fair coin
      int valence;
      if (r % 10 == 9) {
        valence = 0;
        rng.uniform01();  // keep the draw count class-independent
      } else {
        valence = rng.uniform01() < 0.5 ? 1 : -1;
      }

      SurveyResponse survey;
      survey.participant_id = participant_id;
      survey.timestamp_ms = timestamp;
      if (valence > 0) {
        for (int i = 0; i < kPositiveItemCount; ++i)
          survey.item_scores[static_cast<std::size_t>(i)] =
              rng.uniform_int(4, 5);
      } else if (valence < 0) {
        for (int i = 0; i < kPositiveItemCount; ++i)
          survey.item_scores[static_cast<std::size_t>(i)] =
              rng.uniform_int(1, 2);
      } else {
        for (int i = 0; i < kPositiveItemCount; ++i)
          survey.item_scores[static_cast<std::size_t>(i)] = 3;
        const int bump = rng.uniform_int(0, 1);  // sum 15 or 16: neutral band
        survey.item_scores[static_cast<std::size_t>(rng.uniform_int(0, 4))] +=
            bump;
      }
      for (int i = kPositiveItemCount; i < kEmotionCount; ++i)
        survey.item_scores[static_cast<std::size_t>(i)] = skewed_low_score(rng);
      survey.cognitive_load =
          std::clamp(static_cast<int>(std::lround(rng.gauss(3.0, 1.0))), 1, 5);

      // Bresenham spread marks exactly n_phone responses phone-only
      const bool phone_only =
          ((r + 1) * n_phone) / responses > (r * n_phone) / responses;

      GroundTruthLabel label;
      label.participant_id = participant_id;
      label.timestamp_ms = timestamp;
      label.valence = valence;

      if (!phone_only) {
        const std::string session_id =
            "s-" + participant_id + "-" + zero_padded(r + 1, 3);
        survey.session_id = session_id;
        label.session_id = session_id;

        const double shift =
            static_cast<double>(valence) * spec.effect * kSpreadMs / 2.0;
        const double jitter_scale = 1.0 + kJitterModPerEffect * spec.effect;

        SynthSpec signal;
        signal.mean_ibi_ms = std::clamp(
            base_ibi + rng.gauss(0.0, kWithinSigmaMs) - shift, 450.0, 1400.0);
        signal.sdnn_target_ms = valence > 0   ? kBaseJitterMs * jitter_scale
                                : valence < 0 ? kBaseJitterMs / jitter_scale
                                              : kBaseJitterMs;
        signal.respiratory_mod_hz = resp_hz;
        signal.respiratory_mod_depth_ms = kRespDepthMs;
        signal.duration_s = kSessionDurationS;
        signal.noise_sd = kSignalNoiseSd;
        signal.seed = rng.next_u64();
        signal.session_id = session_id;
        signal.participant_id = participant_id;
        signal.start_ms =
            timestamp - static_cast<std::int64_t>(kSessionDurationS * 500.0);
        member.sessions.push_back(gen_ppg(signal).session);
      }

      member.surveys.push_back(std::move(survey));
      member.labels.push_back(std::move(label));
    }
  });

  Cohort cohort;
  for (auto &member : members) {
    std::move(member.sessions.begin(), member.sessions.end(),
              std::back_inserter(cohort.sessions));
    std::move(member.surveys.begin(), member.surveys.end(),
              std::back_inserter(cohort.surveys));
    std::move(member.labels.begin(), member.labels.end(),
              std::back_inserter(cohort.labels));
  }
  return cohort;
}

}  // namespace valence
