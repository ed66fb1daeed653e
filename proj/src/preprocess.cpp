#include "valence/preprocess.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "valence/errors.hpp"

namespace valence {

namespace {

using cdouble = std::complex<double>;

// expand prod (x - r_k) into monic polynomial coefficients
std::vector<cdouble> poly_from_roots(const std::vector<cdouble> &roots) {
  std::vector<cdouble> coeffs{cdouble(1.0, 0.0)};
  for (const auto &r : roots) {
    std::vector<cdouble> next(coeffs.size() + 1, cdouble(0.0, 0.0));
    for (std::size_t i = 0; i < coeffs.size(); ++i) {
      next[i] += coeffs[i];
      next[i + 1] -= coeffs[i] * r;
    }
    coeffs = std::move(next);
  }
  return coeffs;
}

// Steady-state initial conditions for a step of height 1 (direct form II
// transposed). Solves (I - A^T) zi = B with A the companion matrix of a.
std::vector<double> lfilter_zi(const FilterDesign &d) {
  const std::size_t n = d.a.size() - 1;
  std::vector<std::vector<double>> m(n, std::vector<double>(n + 1, 0.0));
  for (std::size_t i = 0; i < n; ++i) {
    m[i][0] += d.a[i + 1];
    m[i][i] += 1.0;
    if (i + 1 < n) m[i][i + 1] -= 1.0;
    m[i][n] = d.b[i + 1] - d.a[i + 1] * d.b[0];
  }
  // gaussian elimination with partial pivoting
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    for (std::size_t row = col + 1; row < n; ++row)
      if (std::abs(m[row][col]) > std::abs(m[pivot][col])) pivot = row;
    std::swap(m[col], m[pivot]);
    for (std::size_t row = 0; row < n; ++row) {
      if (row == col || m[row][col] == 0.0) continue;
      const double factor = m[row][col] / m[col][col];
      for (std::size_t k = col; k <= n; ++k) m[row][k] -= factor * m[col][k];
    }
  }
  std::vector<double> zi(n);
  for (std::size_t i = 0; i < n; ++i) zi[i] = m[i][n] / m[i][i];
  return zi;
}

std::vector<double> lfilter(const FilterDesign &d, std::span<const double> x,
                            std::vector<double> z) {
  const std::size_t ntap = d.b.size();
  std::vector<double> y(x.size());
  for (std::size_t i = 0; i < x.size(); ++i) {
    const double xi = x[i];
    const double yi = d.b[0] * xi + z[0];
    for (std::size_t j = 0; j + 2 < ntap; ++j)
      z[j] = d.b[j + 1] * xi + z[j + 1] - d.a[j + 1] * yi;
    z[ntap - 2] = d.b[ntap - 1] * xi - d.a[ntap - 1] * yi;
    y[i] = yi;
  }
  return y;
}

}  // namespace

FilterDesign butter_bandpass(int order, double low_hz, double high_hz,
                             double sample_rate_hz) {
  if (order < 1) throw InvalidBand("order must be >= 1");
  if (!(0.0 < low_hz && low_hz < high_hz && high_hz < sample_rate_hz / 2.0))
    throw InvalidBand("need 0 < low < high < sample_rate/2");

  constexpr double pi = std::numbers::pi;
  const double fs2 = 2.0 * sample_rate_hz;
  const double warped_low = fs2 * std::tan(pi * low_hz / sample_rate_hz);
  const double warped_high = fs2 * std::tan(pi * high_hz / sample_rate_hz);
  const double bw = warped_high - warped_low;
  const double center_sq = warped_low * warped_high;

  // analog Butterworth prototype, cutoff 1 rad/s
  std::vector<cdouble> lp_poles;
  for (int k = 0; k < order; ++k) {
    const double theta = pi * (2.0 * k + order + 1.0) / (2.0 * order);
    lp_poles.emplace_back(std::cos(theta), std::sin(theta));
  }

  // lowpass -> bandpass: each pole splits in two, `order` zeros at s=0
  std::vector<cdouble> s_poles;
  for (const auto &p : lp_poles) {
    const cdouble scaled = p * (bw / 2.0);
    const cdouble disc = std::sqrt(scaled * scaled - center_sq);
    s_poles.push_back(scaled + disc);
    s_poles.push_back(scaled - disc);
  }
  std::vector<cdouble> s_zeros(static_cast<std::size_t>(order),
                               cdouble(0.0, 0.0));
  double gain = std::pow(bw, order);

  // bilinear transform
  const cdouble fs2c(fs2, 0.0);
  cdouble num(1.0, 0.0);
  cdouble den(1.0, 0.0);
  std::vector<cdouble> z_zeros, z_poles;
  for (const auto &z : s_zeros) {
    z_zeros.push_back((fs2c + z) / (fs2c - z));
    num *= fs2c - z;
  }
  for (const auto &p : s_poles) {
    z_poles.push_back((fs2c + p) / (fs2c - p));
    den *= fs2c - p;
  }
  while (z_zeros.size() < z_poles.size()) z_zeros.emplace_back(-1.0, 0.0);
  gain *= (num / den).real();

  const auto bz = poly_from_roots(z_zeros);
  const auto az = poly_from_roots(z_poles);
  FilterDesign design;
  design.b.reserve(bz.size());
  design.a.reserve(az.size());
  for (const auto &c : bz) design.b.push_back(gain * c.real());
  for (const auto &c : az) design.a.push_back(c.real());
  return design;
}

double filter_response(const FilterDesign &design, double freq_hz,
                       double sample_rate_hz) {
  const double omega = 2.0 * std::numbers::pi * freq_hz / sample_rate_hz;
  const cdouble z_inv = std::polar(1.0, -omega);
  cdouble num(0.0, 0.0), den(0.0, 0.0);
  cdouble zk(1.0, 0.0);
  for (std::size_t k = 0; k < design.b.size(); ++k) {
    num += design.b[k] * zk;
    den += design.a[k] * zk;
    zk *= z_inv;
  }
  return std::abs(num / den);
}

std::vector<double> filtfilt(const FilterDesign &design,
                             std::span<const double> x, int pad_len) {
  const std::size_t n = x.size();
  if (n < 2) throw InvalidBand("filtfilt needs at least 2 samples");
  const std::size_t pad =
      std::min<std::size_t>(static_cast<std::size_t>(std::max(pad_len, 0)),
                            n - 1);

  // odd reflection about both endpoints
  std::vector<double> ext;
  ext.reserve(n + 2 * pad);
  for (std::size_t i = 0; i < pad; ++i)
    ext.push_back(2.0 * x[0] - x[pad - i]);
  ext.insert(ext.end(), x.begin(), x.end());
  for (std::size_t i = 0; i < pad; ++i)
    ext.push_back(2.0 * x[n - 1] - x[n - 2 - i]);

  const auto zi = lfilter_zi(design);
  auto scaled_zi = [&zi](double x0) {
    std::vector<double> z(zi);
    for (auto &v : z) v *= x0;
    return z;
  };

  auto y = lfilter(design, ext, scaled_zi(ext.front()));
  std::reverse(y.begin(), y.end());
  y = lfilter(design, y, scaled_zi(y.front()));
  std::reverse(y.begin(), y.end());

  return {y.begin() + static_cast<std::ptrdiff_t>(pad),
          y.end() - static_cast<std::ptrdiff_t>(pad)};
}

PpgSegment extract_window(const PpgSession &session,
                          std::int64_t report_time_ms, double half_width_s) {
  const auto half_ms = static_cast<std::int64_t>(half_width_s * 1000.0);
  const std::int64_t lo = report_time_ms - half_ms;
  const std::int64_t hi = report_time_ms + half_ms;  // exclusive

  const auto &samples = session.samples;
  const auto first = std::lower_bound(
      samples.begin(), samples.end(), lo,
      [](const PpgSample &s, std::int64_t t) { return s.timestamp_ms < t; });
  const auto last = std::lower_bound(
      first, samples.end(), hi,
      [](const PpgSample &s, std::int64_t t) { return s.timestamp_ms < t; });

  if (first == last) throw EmptyWindow();

  PpgSegment segment;
  segment.sample_rate_hz = session.sample_rate_hz;
  segment.start_ms = first->timestamp_ms;
  segment.values.reserve(static_cast<std::size_t>(last - first));
  for (auto it = first; it != last; ++it) segment.values.push_back(it->value);
  segment.filtered = false;

  if (segment.duration_s() < half_width_s)
    throw WindowTooShort(segment.duration_s());
  return segment;
}

PpgSegment bandpass(const PpgSegment &segment, double low_hz, double high_hz,
                    int order) {
  if (segment.filtered) throw AlreadyFiltered();
  const auto design =
      butter_bandpass(order, low_hz, high_hz, segment.sample_rate_hz);
  PpgSegment out = segment;
  out.values = filtfilt(design, segment.values, 3 * order);
  out.filtered = true;
  return out;
}

}  // namespace valence
