#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracles.hpp"
#include "valence/errors.hpp"
#include "valence/hrv.hpp"
#include "valence/preprocess.hpp"
#include "valence/synth.hpp"

using namespace valence;

namespace {

NnSeries series_from_peaks(std::vector<double> peak_times) {
  NnSeries s;
  s.peak_times_ms = std::move(peak_times);
  for (std::size_t i = 0; i + 1 < s.peak_times_ms.size(); ++i)
    s.intervals_ms.push_back(s.peak_times_ms[i + 1] - s.peak_times_ms[i]);
  return s;
}

NnSeries series_from_intervals(std::vector<double> intervals) {
  NnSeries s;
  s.intervals_ms = std::move(intervals);
  return s;
}

PpgSegment filtered_segment_for(const SynthSpec &spec,
                                SynthResult *result_out = nullptr) {
  auto result = gen_ppg(spec);
  PpgSegment segment;
  segment.sample_rate_hz = result.session.sample_rate_hz;
  segment.start_ms = result.session.samples.front().timestamp_ms;
  for (const auto &s : result.session.samples)
    segment.values.push_back(s.value);
  if (result_out != nullptr) *result_out = std::move(result);
  return bandpass(segment);
}

std::vector<double> random_nn(std::mt19937_64 &rng, std::size_t n,
                              double mean = 900.0, double sd = 60.0) {
  std::normal_distribution<double> dist(mean, sd);
  std::vector<double> nn(n);
  for (auto &v : nn) v = std::clamp(dist(rng), 400.0, 1800.0);
  return nn;
}

}  // namespace

TEST_CASE("nn_intervals keeps a constant series") {
  const auto nn = nn_intervals(series_from_peaks({0, 1000, 2000, 3000}), 2);
  CHECK(nn.intervals_ms == std::vector<double>{1000, 1000, 1000});
}

TEST_CASE("nn_intervals rejects a 40% deviation against the last accepted") {
  const auto nn =
      nn_intervals(series_from_peaks({0, 1000, 2000, 2600, 3600}), 2);
  CHECK(nn.intervals_ms == std::vector<double>{1000, 1000, 1000});
}

TEST_CASE("nn_intervals throws when too few intervals survive") {
  CHECK_THROWS_AS(nn_intervals(series_from_peaks({0, 250}), 1),
                  TooFewIntervals);
  // 9 accepted < default minimum of 10
  std::vector<double> peaks;
  for (int i = 0; i <= 9; ++i) peaks.push_back(i * 800.0);
  CHECK_THROWS_AS(nn_intervals(series_from_peaks(peaks)), TooFewIntervals);
  CHECK_NOTHROW(nn_intervals(series_from_peaks(peaks), 9));
}

TEST_CASE("nn_intervals drops out-of-bounds intervals") {
  const auto nn = nn_intervals(
      series_from_peaks({0, 250, 1250, 2250, 3250, 5500, 6500}), 2);
  // 250 too short, 2250 too long; the rest pass the 30% rule
  CHECK(nn.intervals_ms == std::vector<double>{1000, 1000, 1000, 1000});
}

TEST_CASE("time_domain_features on a constant series") {
  const auto f = time_domain_features(
      series_from_intervals(std::vector<double>(12, 1000.0)));
  CHECK(f.bpm == doctest::Approx(60.0).epsilon(1e-12));
  CHECK(f.ibi == doctest::Approx(1000.0).epsilon(1e-12));
  CHECK(f.sdnn == 0.0);
  CHECK(f.rmssd == 0.0);
  CHECK(f.pnn20 == 0.0);
  CHECK(f.pnn50 == 0.0);
  CHECK(f.hr_mad == 0.0);
}

TEST_CASE("time_domain_features two-point case") {
  const auto f = time_domain_features(series_from_intervals({800, 1000}));
  CHECK(f.sdnn == doctest::Approx(100.0).epsilon(1e-12));  // population sd
  CHECK(f.rmssd == doctest::Approx(200.0).epsilon(1e-12));
}

TEST_CASE("time_domain_features hand-evaluated three-point case") {
  const auto f = time_domain_features(series_from_intervals({800, 860, 865}));
  CHECK(f.pnn50 == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(f.pnn20 == doctest::Approx(0.5).epsilon(1e-12));
  CHECK(f.hr_mad == doctest::Approx(5.0).epsilon(1e-12));
}

TEST_CASE("pnn thresholds are strict") {
  const auto f =
      time_domain_features(series_from_intervals({800, 820, 870, 890}));
  // diffs: 20, 50, 20 -> none strictly over their thresholds except 50 > 20
  CHECK(f.pnn20 == doctest::Approx(1.0 / 3.0).epsilon(1e-12));
  CHECK(f.pnn50 == 0.0);
}

TEST_CASE("bpm times ibi is the minute constant") {
  std::mt19937_64 rng(42);
  for (int trial = 0; trial < 20; ++trial) {
    const auto f =
        time_domain_features(series_from_intervals(random_nn(rng, 30)));
    CHECK(std::abs(f.bpm * f.ibi - 60000.0) < 60000.0 * 1e-9);
  }
}

TEST_CASE("poincare_features on a constant series") {
  const auto f = poincare_features(
      series_from_intervals(std::vector<double>(12, 900.0)));
  CHECK(f.sd1 == 0.0);
  CHECK(f.sd2 == 0.0);
  CHECK(f.s == 0.0);
  CHECK(!f.sd1_sd2.has_value());  // ratio undefined, not infinity
}

TEST_CASE("poincare_features alternating series") {
  const auto f = poincare_features(
      series_from_intervals({800, 1000, 800, 1000, 800}));
  CHECK(f.sd1 == doctest::Approx(141.421356).epsilon(1e-6));
  CHECK(f.sd2 == doctest::Approx(0.0));
  CHECK(f.s == doctest::Approx(0.0));
  CHECK(!f.sd1_sd2.has_value());
}

TEST_CASE("poincare_features monotone series") {
  const auto f = poincare_features(
      series_from_intervals({800, 850, 900, 950, 1000}));
  CHECK(f.sd1 == doctest::Approx(0.0));
  CHECK(f.sd2 > 0.0);
}

TEST_CASE("poincare matches the direct pairwise definition") {
  std::mt19937_64 rng(5);
  const auto nn = random_nn(rng, 40);
  const auto f = poincare_features(series_from_intervals(nn));
  CHECK(f.sd1 == doctest::Approx(oracles::poincare_sd1(nn)).epsilon(1e-12));
  CHECK(f.sd2 == doctest::Approx(oracles::poincare_sd2(nn)).epsilon(1e-12));
  CHECK(f.s == doctest::Approx(std::numbers::pi * f.sd1 * f.sd2));
}

TEST_CASE("breathing_rate recovers the modulation frequency") {
  for (const double mod_hz : {0.25, 0.15}) {
    std::vector<double> nn;
    double t = 0.0;
    while (t < 60000.0) {
      const double interval =
          1000.0 + 100.0 * std::sin(2.0 * std::numbers::pi * mod_hz * t / 1000.0);
      nn.push_back(interval);
      t += interval;
    }
    const auto rate = breathing_rate(series_from_intervals(nn));
    REQUIRE(rate.has_value());
    CHECK(*rate == doctest::Approx(mod_hz).epsilon(0.02 / mod_hz));
  }
}

TEST_CASE("breathing_rate is missing for degenerate series") {
  // constant series: flat spectrum, peak power ~ 0
  CHECK(!breathing_rate(series_from_intervals(std::vector<double>(40, 1000.0)))
             .has_value());
  // too short a span
  CHECK(!breathing_rate(series_from_intervals(std::vector<double>(12, 900.0)))
             .has_value());
  CHECK(!breathing_rate(series_from_intervals({1000, 1001, 999}))
             .has_value());
}

TEST_CASE("detect_peaks finds every beat of a clean 60 BPM signal") {
  SynthSpec spec;
  spec.mean_ibi_ms = 1000.0;
  spec.duration_s = 60.0;
  spec.noise_sd = 0.0;
  spec.seed = 11;
  SynthResult result;
  const auto segment = filtered_segment_for(spec, &result);
  const auto peaks = detect_peaks(segment);

  CHECK(peaks.peak_times_ms.size() >= 59);
  CHECK(peaks.peak_times_ms.size() <= 61);

  // every detected peak within +-1 sample (40 ms) of a true beat
  for (const double detected : peaks.peak_times_ms) {
    double best = 1e18;
    for (const double truth : result.truth.beat_times_ms)
      best = std::min(best, std::abs(detected - truth));
    CHECK(best <= 40.0);
  }
}

TEST_CASE("detect_peaks rejects an all-zero segment") {
  PpgSegment segment;
  segment.sample_rate_hz = 25.0;
  segment.values.assign(1500, 0.0);
  segment.filtered = true;
  CHECK_THROWS_AS(detect_peaks(segment), NoPlausiblePeaks);
}

TEST_CASE("detect_peaks tracks extreme heart rates within 2%") {
  for (const double bpm : {45.0, 170.0}) {
    SynthSpec spec;
    spec.mean_ibi_ms = 60000.0 / bpm;
    spec.sdnn_target_ms = 0.02 * spec.mean_ibi_ms;
    spec.duration_s = 60.0;
    spec.noise_sd = 0.0;
    spec.seed = 21;
    SynthResult result;
    const auto segment = filtered_segment_for(spec, &result);
    const auto peaks = detect_peaks(segment);
    REQUIRE(peaks.intervals_ms.size() >= 2);
    const double detected_bpm =
        60000.0 / oracles::mean_of(peaks.intervals_ms);
    const double truth_bpm = 60000.0 / oracles::mean_of(result.truth.nn_ms);
    CHECK(std::abs(detected_bpm - truth_bpm) <= 0.02 * truth_bpm);
  }
}

TEST_CASE("compute_features matches a 72 BPM oracle within 1%") {
  SynthSpec spec;
  spec.mean_ibi_ms = 60000.0 / 72.0;
  spec.sdnn_target_ms = 20.0;
  spec.duration_s = 65.0;
  spec.noise_sd = 0.0;
  spec.seed = 31;
  const auto segment = filtered_segment_for(spec);
  const auto extraction = compute_features(segment);
  REQUIRE(extraction.ok());
  CHECK(std::abs(extraction.features->bpm - 72.0) <= 0.72);
}

TEST_CASE("compute_features matches direct formulas on the prescribed NN list") {
  std::mt19937_64 rng(77);
  SynthSpec spec;
  spec.ibi_sequence_ms = random_nn(rng, 70, 850.0, 30.0);
  spec.duration_s = 70.0;
  spec.noise_sd = 0.0;
  spec.seed = 41;
  SynthResult result;
  const auto segment = filtered_segment_for(spec, &result);
  const auto extraction = compute_features(segment);
  REQUIRE(extraction.ok());

  const auto &truth_nn = result.truth.nn_ms;
  CHECK(std::abs(extraction.features->sdnn - oracles::population_sd(truth_nn)) <=
        0.02 * oracles::population_sd(truth_nn));
  CHECK(std::abs(extraction.features->rmssd - oracles::rmssd_of(truth_nn)) <=
        0.02 * oracles::rmssd_of(truth_nn));
}

TEST_CASE("compute_features tags white-noise segments as failed") {
  for (unsigned seed = 1; seed <= 10; ++seed) {
    PpgSegment segment;
    segment.sample_rate_hz = 25.0;
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> noise(0.0, 1.0);
    for (int i = 0; i < 1500; ++i) segment.values.push_back(noise(rng));
    segment.filtered = true;
    const auto extraction = compute_features(segment);
    CHECK(!extraction.ok());
    CHECK((extraction.failure_stage == "peak_detection" ||
           extraction.failure_stage == "interval_cleaning"));
    CHECK(!extraction.failure_reason.empty());
  }
}

TEST_CASE("pnn50 never exceeds pnn20") {
  std::mt19937_64 rng(19);
  for (int trial = 0; trial < 50; ++trial) {
    const auto f = time_domain_features(
        series_from_intervals(random_nn(rng, 25, 900.0, 80.0)));
    CHECK(f.pnn50 <= f.pnn20);
  }
}

TEST_CASE("time-reversal leaves sd1, rmssd, sdnn and pnn invariant") {
  std::mt19937_64 rng(23);
  const auto nn = random_nn(rng, 30);
  auto reversed = nn;
  std::reverse(reversed.begin(), reversed.end());

  const auto f = time_domain_features(series_from_intervals(nn));
  const auto fr = time_domain_features(series_from_intervals(reversed));
  CHECK(f.sdnn == doctest::Approx(fr.sdnn).epsilon(1e-12));
  CHECK(f.rmssd == doctest::Approx(fr.rmssd).epsilon(1e-12));
  CHECK(f.pnn20 == doctest::Approx(fr.pnn20));
  CHECK(f.pnn50 == doctest::Approx(fr.pnn50));

  const auto p = poincare_features(series_from_intervals(nn));
  const auto pr = poincare_features(series_from_intervals(reversed));
  CHECK(p.sd1 == doctest::Approx(pr.sd1).epsilon(1e-12));
}

TEST_CASE("scaling the NN series scales the features accordingly") {
  std::mt19937_64 rng(29);
  const auto nn = random_nn(rng, 30);
  const double c = 1.4;
  auto scaled = nn;
  for (auto &v : scaled) v *= c;

  const auto f = poincare_features(series_from_intervals(nn),
                                   time_domain_features(series_from_intervals(nn)));
  const auto fc = poincare_features(
      series_from_intervals(scaled),
      time_domain_features(series_from_intervals(scaled)));

  CHECK(fc.ibi == doctest::Approx(c * f.ibi).epsilon(1e-12));
  CHECK(fc.sdnn == doctest::Approx(c * f.sdnn).epsilon(1e-12));
  CHECK(fc.rmssd == doctest::Approx(c * f.rmssd).epsilon(1e-12));
  CHECK(fc.hr_mad == doctest::Approx(c * f.hr_mad).epsilon(1e-12));
  CHECK(fc.sd1 == doctest::Approx(c * f.sd1).epsilon(1e-12));
  CHECK(fc.sd2 == doctest::Approx(c * f.sd2).epsilon(1e-12));
  CHECK(fc.s == doctest::Approx(c * c * f.s).epsilon(1e-12));
  CHECK(*fc.sd1_sd2 == doctest::Approx(*f.sd1_sd2).epsilon(1e-12));
  CHECK(fc.bpm == doctest::Approx(f.bpm / c).epsilon(1e-12));
}

TEST_CASE("sd1^2 + sd2^2 approaches 2 sdnn^2 on stationary series") {
  std::mt19937_64 rng(31);
  const auto nn = random_nn(rng, 400, 900.0, 50.0);
  const auto td = time_domain_features(series_from_intervals(nn));
  const auto pc = poincare_features(series_from_intervals(nn));
  const double lhs = pc.sd1 * pc.sd1 + pc.sd2 * pc.sd2;
  const double rhs = 2.0 * td.sdnn * td.sdnn;
  CHECK(lhs == doctest::Approx(rhs).epsilon(0.05));
}
