// Test-only oracles: independent computation routes used to freeze and
// cross-check expected values. None of these call into the library paths
// they verify.
#pragma once

#include <cmath>
#include <cstddef>
#include <stdexcept>
#include <vector>

namespace oracles {

// Pearson r by the direct summation formula (single pass, no centering),
// algebraically distinct from the library's centered two-pass form.
inline double pearson_direct(const std::vector<double> &x,
                             const std::vector<double> &y) {
  const double n = static_cast<double>(x.size());
  double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
  for (std::size_t i = 0; i < x.size(); ++i) {
    sx += x[i];
    sy += y[i];
    sxx += x[i] * x[i];
    syy += y[i] * y[i];
    sxy += x[i] * y[i];
  }
  return (n * sxy - sx * sy) /
         std::sqrt((n * sxx - sx * sx) * (n * syy - sy * sy));
}

namespace detail {

inline double t_pdf(double u, double df) {
  const double c = std::exp(std::lgamma((df + 1.0) / 2.0) -
                            std::lgamma(df / 2.0)) /
                   std::sqrt(df * M_PI);
  return c * std::pow(1.0 + u * u / df, -(df + 1.0) / 2.0);
}

template <typename F>
double adaptive_simpson(F f, double a, double b, double fa, double fm,
                        double fb, double whole, double tol, int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  const double flm = f(lm), frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return adaptive_simpson(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1);
}

template <typename F>
double integrate(F f, double a, double b, double tol) {
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 60);
}

}  // namespace detail

// Two-sided t-test p-value by adaptive Simpson quadrature of the t
// density. For |t| > 1 the tail is integrated under the substitution
// u = 1/w to keep the domain finite.
inline double t_p_value_quadrature(double t, double df) {
  const double at = std::abs(t);
  if (at == 0.0) return 1.0;
  if (at <= 1.0) {
    const double body = detail::integrate(
        [df](double u) { return detail::t_pdf(u, df); }, 0.0, at, 1e-13);
    return 1.0 - 2.0 * body;
  }
  const double tail = detail::integrate(
      [df](double w) {
        if (w <= 0.0) return 0.0;
        const double u = 1.0 / w;
        return detail::t_pdf(u, df) * u * u;
      },
      0.0, 1.0 / at, 1e-13);
  return 2.0 * tail;
}

// Naive Bayes by explicit probability products (no logs). Priors and
// per-class distributions are recomputed from the raw definition.
struct BayesOracle {
  std::vector<double> theta_pos, theta_neg;
  double prior_pos = 0.5, prior_neg = 0.5;

  static BayesOracle fit(const std::vector<std::vector<double>> &x,
                         const std::vector<int> &y, double alpha) {
    BayesOracle o;
    const std::size_t nfeat = x[0].size();
    o.theta_pos.assign(nfeat, 0.0);
    o.theta_neg.assign(nfeat, 0.0);
    double n_pos = 0, n_neg = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
      auto &theta = y[i] > 0 ? o.theta_pos : o.theta_neg;
      (y[i] > 0 ? n_pos : n_neg) += 1.0;
      for (std::size_t f = 0; f < nfeat; ++f) theta[f] += x[i][f];
    }
    for (auto *theta : {&o.theta_pos, &o.theta_neg}) {
      double mass = 0.0;
      for (double v : *theta) mass += v;
      for (double &v : *theta)
        v = (v + alpha) / (mass + alpha * static_cast<double>(nfeat));
    }
    o.prior_pos = n_pos / (n_pos + n_neg);
    o.prior_neg = n_neg / (n_pos + n_neg);
    return o;
  }

  int predict(const std::vector<double> &x) const {
    double p_pos = prior_pos, p_neg = prior_neg;
    for (std::size_t f = 0; f < x.size(); ++f) {
      p_pos *= std::pow(theta_pos[f], x[f]);
      p_neg *= std::pow(theta_neg[f], x[f]);
    }
    return p_pos >= p_neg ? 1 : -1;  // ties resolve to +1
  }
};

// Dominant frequency of an unevenly sampled series by direct sin/cos
// projection (Lomb-style scan), independent of any resampling scheme.
inline double dominant_frequency(const std::vector<double> &times_s,
                                 const std::vector<double> &values,
                                 double f_lo, double f_hi, double f_step) {
  double mean = 0.0;
  for (double v : values) mean += v;
  mean /= static_cast<double>(values.size());

  double best_power = -1.0, best_freq = f_lo;
  for (double f = f_lo; f <= f_hi + 1e-12; f += f_step) {
    double c = 0.0, s = 0.0;
    for (std::size_t i = 0; i < values.size(); ++i) {
      const double phase = 2.0 * M_PI * f * times_s[i];
      c += (values[i] - mean) * std::cos(phase);
      s += (values[i] - mean) * std::sin(phase);
    }
    const double power = c * c + s * s;
    if (power > best_power) {
      best_power = power;
      best_freq = f;
    }
  }
  return best_freq;
}

// population statistics straight from the definitions
inline double mean_of(const std::vector<double> &v) {
  double acc = 0.0;
  for (double x : v) acc += x;
  return acc / static_cast<double>(v.size());
}

inline double population_sd(const std::vector<double> &v) {
  const double m = mean_of(v);
  double acc = 0.0;
  for (double x : v) acc += (x - m) * (x - m);
  return std::sqrt(acc / static_cast<double>(v.size()));
}

inline double rmssd_of(const std::vector<double> &v) {
  double acc = 0.0;
  for (std::size_t i = 0; i + 1 < v.size(); ++i) {
    const double d = v[i + 1] - v[i];
    acc += d * d;
  }
  return std::sqrt(acc / static_cast<double>(v.size() - 1));
}

inline double poincare_sd1(const std::vector<double> &v) {
  std::vector<double> d;
  for (std::size_t i = 0; i + 1 < v.size(); ++i)
    d.push_back((v[i + 1] - v[i]) / std::sqrt(2.0));
  return population_sd(d);
}

inline double poincare_sd2(const std::vector<double> &v) {
  std::vector<double> d;
  for (std::size_t i = 0; i + 1 < v.size(); ++i)
    d.push_back((v[i + 1] + v[i]) / std::sqrt(2.0));
  return population_sd(d);
}

}  // namespace oracles
