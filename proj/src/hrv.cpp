#include "valence/hrv.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <numeric>
#include <stdexcept>

#include "valence/errors.hpp"

namespace valence {

namespace {

double mean_of(const std::vector<double> &v) {
  return std::accumulate(v.begin(), v.end(), 0.0) /
         static_cast<double>(v.size());
}

double population_sd(const std::vector<double> &v) {
  const double m = mean_of(v);
  double acc = 0.0;
  for (double x : v) acc += (x - m) * (x - m);
  return std::sqrt(acc / static_cast<double>(v.size()));
}

double median_of(std::vector<double> v) {
  const std::size_t n = v.size();
  std::sort(v.begin(), v.end());
  if (n % 2 == 1) return v[n / 2];
  return 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

// centered moving average with shrinking windows at the edges
std::vector<double> moving_average(const std::vector<double> &v, int window) {
  const int n = static_cast<int>(v.size());
  const int half = std::max(window, 1) / 2;
  std::vector<double> prefix(static_cast<std::size_t>(n) + 1, 0.0);
  for (int i = 0; i < n; ++i) prefix[i + 1] = prefix[i] + v[i];
  std::vector<double> out(static_cast<std::size_t>(n));
  for (int i = 0; i < n; ++i) {
    const int lo = std::max(0, i - half);
    const int hi = std::min(n - 1, i + half);
    out[i] = (prefix[hi + 1] - prefix[lo]) / static_cast<double>(hi - lo + 1);
  }
  return out;
}

// parabolic refinement of a local maximum, offset in (-0.5, 0.5) samples
double subsample_offset(const std::vector<double> &v, int idx) {
  if (idx <= 0 || idx + 1 >= static_cast<int>(v.size())) return 0.0;
  const double denom = v[idx - 1] - 2.0 * v[idx] + v[idx + 1];
  if (denom == 0.0) return 0.0;
  const double offset = 0.5 * (v[idx - 1] - v[idx + 1]) / denom;
  return std::clamp(offset, -0.5, 0.5);
}

// Band-limited peak localisation. The filtered signal lives well below
// Nyquist, so a Hann-windowed sinc reconstruction around the sample-grid
// maximum pins the true extremum to a fraction of a millisecond, which
// the successive-difference statistics (rmssd, sd1) need.
double sinc_refined_position(const std::vector<double> &v, int idx) {
  constexpr int kHalfTaps = 12;
  const int lo = std::max(0, idx - kHalfTaps);
  const int hi = std::min(static_cast<int>(v.size()) - 1, idx + kHalfTaps);
  if (lo == idx || hi == idx) return static_cast<double>(idx);

  constexpr double pi = std::numbers::pi;
  auto value_at = [&](double t) {
    double acc = 0.0;
    for (int k = lo; k <= hi; ++k) {
      const double x = t - static_cast<double>(k);
      if (std::abs(x) >= kHalfTaps) continue;
      const double core = x == 0.0 ? 1.0 : std::sin(pi * x) / (pi * x);
      const double window = 0.5 * (1.0 + std::cos(pi * x / kHalfTaps));
      acc += v[static_cast<std::size_t>(k)] * core * window;
    }
    return acc;
  };

  // coarse grid over +-1 sample, then a parabola on the finest triplet
  constexpr int kSteps = 64;
  double best_t = idx;
  double best_v = value_at(best_t);
  for (int s = -kSteps; s <= kSteps; ++s) {
    const double t = idx + static_cast<double>(s) / kSteps;
    const double val = value_at(t);
    if (val > best_v) {
      best_v = val;
      best_t = t;
    }
  }
  const double h = 1.0 / kSteps;
  const double left = value_at(best_t - h);
  const double right = value_at(best_t + h);
  const double denom = left - 2.0 * best_v + right;
  if (denom < 0.0) {
    const double offset = 0.5 * (left - right) / denom;
    best_t += std::clamp(offset, -1.0, 1.0) * h;
  }
  return best_t;
}

struct Candidate {
  std::vector<int> peak_indices;
  double rr_sd = 0.0;
  bool valid = false;
};

Candidate detect_at_elevation(const PpgSegment &segment,
                              const std::vector<double> &rolling_mean,
                              double elevation_abs) {
  const auto &v = segment.values;
  const int n = static_cast<int>(v.size());
  const double dt_ms = 1000.0 / segment.sample_rate_hz;

  Candidate cand;
  int region_start = -1;
  for (int i = 0; i <= n; ++i) {
    const bool above = i < n && v[i] > rolling_mean[i] + elevation_abs;
    if (above && region_start < 0) region_start = i;
    if (!above && region_start >= 0) {
      int best = region_start;
      for (int j = region_start + 1; j < i; ++j)
        if (v[j] > v[best]) best = j;
      cand.peak_indices.push_back(best);
      region_start = -1;
    }
  }

  if (cand.peak_indices.size() < 2) return cand;
  std::vector<double> rr(cand.peak_indices.size() - 1);
  for (std::size_t i = 0; i + 1 < cand.peak_indices.size(); ++i) {
    const double a =
        cand.peak_indices[i] + subsample_offset(v, cand.peak_indices[i]);
    const double b = cand.peak_indices[i + 1] +
                     subsample_offset(v, cand.peak_indices[i + 1]);
    rr[i] = (b - a) * dt_ms;
  }
  const double mean_rr = mean_of(rr);
  const double bpm = 60000.0 / mean_rr;
  cand.rr_sd = population_sd(rr);
  // Regularity gate: band-limited noise mimics a plausible rate but its
  // spacings scatter at ~0.6-0.8 of the mean; real rhythms stay far below.
  cand.valid = bpm >= kMinPlausibleBpm && bpm <= kMaxPlausibleBpm &&
               cand.rr_sd <= kMaxRrScatter * mean_rr;
  return cand;
}

}  // namespace

NnSeries detect_peaks(const PpgSegment &segment) {
  if (!segment.filtered)
    throw std::invalid_argument("detect_peaks requires a filtered segment");
  const auto &v = segment.values;
  if (v.size() < 2) throw NoPlausiblePeaks();

  const double amplitude =
      *std::max_element(v.begin(), v.end()) -
      *std::min_element(v.begin(), v.end());
  const int ma_window =
      static_cast<int>(std::lround(0.75 * segment.sample_rate_hz));
  const auto rolling_mean = moving_average(v, ma_window);

  static constexpr double kElevations[] = {0.05, 0.10, 0.15, 0.20,
                                           0.30, 0.40, 0.60, 1.0};
  Candidate best;
  for (double e : kElevations) {
    auto cand = detect_at_elevation(segment, rolling_mean, e * amplitude);
    if (!cand.valid) continue;
    if (!best.valid || cand.rr_sd < best.rr_sd) best = std::move(cand);
  }
  if (!best.valid) throw NoPlausiblePeaks();

  const double dt_ms = 1000.0 / segment.sample_rate_hz;
  NnSeries series;
  series.peak_times_ms.reserve(best.peak_indices.size());
  for (int idx : best.peak_indices)
    series.peak_times_ms.push_back(static_cast<double>(segment.start_ms) +
                                   sinc_refined_position(v, idx) * dt_ms);
  series.intervals_ms.resize(series.peak_times_ms.size() - 1);
  for (std::size_t i = 0; i + 1 < series.peak_times_ms.size(); ++i)
    series.intervals_ms[i] =
        series.peak_times_ms[i + 1] - series.peak_times_ms[i];
  return series;
}

NnSeries nn_intervals(const NnSeries &peaks, int min_accepted) {
  std::vector<double> raw = peaks.intervals_ms;
  if (raw.empty() && peaks.peak_times_ms.size() >= 2) {
    raw.resize(peaks.peak_times_ms.size() - 1);
    for (std::size_t i = 0; i + 1 < peaks.peak_times_ms.size(); ++i)
      raw[i] = peaks.peak_times_ms[i + 1] - peaks.peak_times_ms[i];
  }

  std::vector<double> accepted;
  accepted.reserve(raw.size());
  for (double interval : raw) {
    if (interval < kMinIntervalMs || interval > kMaxIntervalMs) continue;
    if (!accepted.empty() &&
        std::abs(interval - accepted.back()) >
            kMaxSuccessiveChange * accepted.back())
      continue;
    accepted.push_back(interval);
  }
  if (static_cast<int>(accepted.size()) < min_accepted)
    throw TooFewIntervals(static_cast<int>(accepted.size()));

  NnSeries out;
  out.peak_times_ms = peaks.peak_times_ms;
  out.intervals_ms = std::move(accepted);
  return out;
}

HrvFeatures time_domain_features(const NnSeries &nn) {
  const auto &intervals = nn.intervals_ms;
  if (intervals.size() < 2)
    throw TooFewIntervals(static_cast<int>(intervals.size()));

  HrvFeatures f;
  f.ibi = mean_of(intervals);
  f.bpm = 60000.0 / f.ibi;
  f.sdnn = population_sd(intervals);

  std::vector<double> diffs(intervals.size() - 1);
  for (std::size_t i = 0; i + 1 < intervals.size(); ++i)
    diffs[i] = intervals[i + 1] - intervals[i];

  double sq = 0.0;
  int over20 = 0, over50 = 0;
  for (double d : diffs) {
    sq += d * d;
    if (std::abs(d) > 20.0) ++over20;
    if (std::abs(d) > 50.0) ++over50;
  }
  f.rmssd = std::sqrt(sq / static_cast<double>(diffs.size()));
  f.pnn20 = static_cast<double>(over20) / static_cast<double>(diffs.size());
  f.pnn50 = static_cast<double>(over50) / static_cast<double>(diffs.size());

  const double med = median_of(intervals);
  std::vector<double> abs_dev(intervals.size());
  for (std::size_t i = 0; i < intervals.size(); ++i)
    abs_dev[i] = std::abs(intervals[i] - med);
  f.hr_mad = median_of(abs_dev);
  return f;
}

HrvFeatures poincare_features(const NnSeries &nn, HrvFeatures base) {
  const auto &intervals = nn.intervals_ms;
  if (intervals.size() < 2)
    throw TooFewIntervals(static_cast<int>(intervals.size()));

  constexpr double inv_sqrt2 = std::numbers::sqrt2 / 2.0;
  std::vector<double> minor_axis(intervals.size() - 1);
  std::vector<double> major_axis(intervals.size() - 1);
  for (std::size_t i = 0; i + 1 < intervals.size(); ++i) {
    minor_axis[i] = (intervals[i + 1] - intervals[i]) * inv_sqrt2;
    major_axis[i] = (intervals[i + 1] + intervals[i]) * inv_sqrt2;
  }
  base.sd1 = population_sd(minor_axis);
  base.sd2 = population_sd(major_axis);
  base.s = std::numbers::pi * base.sd1 * base.sd2;
  if (base.sd2 != 0.0)
    base.sd1_sd2 = base.sd1 / base.sd2;
  else
    base.sd1_sd2 = std::nullopt;  // RatioUndefined: reported missing
  return base;
}

std::optional<double> breathing_rate(const NnSeries &nn) {
  const auto &intervals = nn.intervals_ms;
  if (static_cast<int>(intervals.size()) < kMinAcceptedIntervals)
    return std::nullopt;  // SpanTooShort

  // cumulative beat times (ms)
  std::vector<double> t(intervals.size());
  std::partial_sum(intervals.begin(), intervals.end(), t.begin());
  const double span_ms = t.back() - t.front();
  if (span_ms < 20000.0) return std::nullopt;  // SpanTooShort

  // natural cubic spline second derivatives (Thomas algorithm)
  const std::size_t n = intervals.size();
  std::vector<double> h(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) h[i] = t[i + 1] - t[i];
  // interior equations, natural ends (m2[0] = m2[n-1] = 0)
  std::vector<double> m2(n, 0.0);
  std::vector<double> c_prime(n, 0.0), d_prime(n, 0.0);
  for (std::size_t i = 1; i + 1 < n; ++i) {
    const double a_i = h[i - 1];
    const double b_i = 2.0 * (h[i - 1] + h[i]);
    const double c_i = h[i];
    const double r_i = 6.0 * ((intervals[i + 1] - intervals[i]) / h[i] -
                              (intervals[i] - intervals[i - 1]) / h[i - 1]);
    if (i == 1) {
      c_prime[i] = c_i / b_i;
      d_prime[i] = r_i / b_i;
    } else {
      const double denom = b_i - a_i * c_prime[i - 1];
      c_prime[i] = c_i / denom;
      d_prime[i] = (r_i - a_i * d_prime[i - 1]) / denom;
    }
  }
  for (std::size_t i = n - 2; i >= 1; --i)
    m2[i] = d_prime[i] - c_prime[i] * m2[i + 1];

  auto spline_eval = [&](double x) {
    auto it = std::upper_bound(t.begin(), t.end(), x);
    std::size_t k = it == t.begin()
                        ? 0
                        : static_cast<std::size_t>(it - t.begin()) - 1;
    if (k + 1 >= n) k = n - 2;
    const double hk = h[k];
    const double left = t[k + 1] - x;
    const double right = x - t[k];
    return m2[k] * left * left * left / (6.0 * hk) +
           m2[k + 1] * right * right * right / (6.0 * hk) +
           (intervals[k] / hk - m2[k] * hk / 6.0) * left +
           (intervals[k + 1] / hk - m2[k + 1] * hk / 6.0) * right;
  };

  // resample at 4 Hz, remove mean
  constexpr double step_ms = 250.0;
  const std::size_t grid_n =
      static_cast<std::size_t>(std::floor(span_ms / step_ms)) + 1;
  std::vector<double> resampled(grid_n);
  for (std::size_t j = 0; j < grid_n; ++j)
    resampled[j] = spline_eval(t.front() + static_cast<double>(j) * step_ms);
  const double m = mean_of(resampled);
  for (auto &x : resampled) x -= m;

  // periodogram, argmax of power within [0.1, 0.4] Hz
  const double grid_rate_hz = 1000.0 / step_ms;
  const double df = grid_rate_hz / static_cast<double>(grid_n);
  double best_power = -1.0;
  double best_freq = 0.0;
  for (std::size_t k = 1; k <= grid_n / 2; ++k) {
    const double freq = static_cast<double>(k) * df;
    if (freq < 0.1 || freq > 0.4) continue;
    std::complex<double> acc(0.0, 0.0);
    const double w = -2.0 * std::numbers::pi * static_cast<double>(k) /
                     static_cast<double>(grid_n);
    for (std::size_t j = 0; j < grid_n; ++j)
      acc += resampled[j] *
             std::polar(1.0, w * static_cast<double>(j));
    const double power = std::norm(acc) / static_cast<double>(grid_n);
    if (power > best_power) {
      best_power = power;
      best_freq = freq;
    }
  }
  if (best_power < 1e-12) return std::nullopt;
  return best_freq;
}

FeatureExtraction compute_features(const PpgSegment &segment) {
  FeatureExtraction result;
  NnSeries peaks;
  try {
    peaks = detect_peaks(segment);
  } catch (const NoPlausiblePeaks &e) {
    result.failure_stage = "peak_detection";
    result.failure_reason = e.code();
    return result;
  }

  NnSeries nn;
  try {
    nn = nn_intervals(peaks);
  } catch (const TooFewIntervals &e) {
    result.failure_stage = "interval_cleaning";
    result.failure_reason = e.code();
    return result;
  }

  HrvFeatures f = time_domain_features(nn);
  f = poincare_features(nn, f);
  f.breathing_rate = breathing_rate(nn);
  result.features = f;
  return result;
}

}  // namespace valence
