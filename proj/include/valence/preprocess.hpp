#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

#include "valence/types.hpp"

namespace valence {

struct PpgSegment {
  std::vector<double> values;
  double sample_rate_hz = 25.0;
  std::int64_t start_ms = 0;  // timestamp of the first sample
  bool filtered = false;

  double duration_s() const {
    return static_cast<double>(values.size()) / sample_rate_hz;
  }
};

// Digital IIR transfer function, a[0] = 1.
struct FilterDesign {
  std::vector<double> b;
  std::vector<double> a;
};

// Butterworth bandpass via analog prototype + lowpass->bandpass transform
// + bilinear transform with prewarped edges. `order` is the prototype
// order; the digital filter has 2*order+1 coefficients.
FilterDesign butter_bandpass(int order, double low_hz, double high_hz,
                             double sample_rate_hz);

// Single-pass amplitude response |H(e^{i 2 pi f / fs})|.
double filter_response(const FilterDesign &design, double freq_hz,
                       double sample_rate_hz);

// Forward-backward (zero phase) filtering with odd-reflection padding of
// `pad_len` samples per side and steady-state initial conditions.
std::vector<double> filtfilt(const FilterDesign &design,
                             std::span<const double> x, int pad_len);

// All samples with timestamp in [report - half_width, report + half_width);
// at least half_width seconds of data must be present.
PpgSegment extract_window(const PpgSession &session,
                          std::int64_t report_time_ms,
                          double half_width_s = 30.0);

PpgSegment bandpass(const PpgSegment &segment, double low_hz = 0.5,
                    double high_hz = 4.0, int order = 2);

}  // namespace valence
