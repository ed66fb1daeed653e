#include "valence/stats.hpp"

#include <cmath>
#include <limits>

#include "valence/errors.hpp"

namespace valence {

namespace {

// Lentz's continued fraction for the incomplete beta (Numerical Recipes
// form); converges quickly for x < (a+1)/(a+b+2).
double beta_continued_fraction(double a, double b, double x) {
  constexpr int kMaxIterations = 500;
  constexpr double kEps = 3e-16;
  constexpr double kTiny = 1e-300;

  const double qab = a + b;
  const double qap = a + 1.0;
  const double qam = a - 1.0;
  double c = 1.0;
  double d = 1.0 - qab * x / qap;
  if (std::abs(d) < kTiny) d = kTiny;
  d = 1.0 / d;
  double h = d;
  for (int m = 1; m <= kMaxIterations; ++m) {
    const double m2 = 2.0 * m;
    double aa = m * (b - m) * x / ((qam + m2) * (a + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    h *= d * c;
    aa = -(a + m) * (qab + m) * x / ((a + m2) * (qap + m2));
    d = 1.0 + aa * d;
    if (std::abs(d) < kTiny) d = kTiny;
    c = 1.0 + aa / c;
    if (std::abs(c) < kTiny) c = kTiny;
    d = 1.0 / d;
    const double del = d * c;
    h *= del;
    if (std::abs(del - 1.0) < kEps) break;
  }
  return h;
}

}  // namespace

double regularized_incomplete_beta(double a, double b, double x) {
  if (x <= 0.0) return 0.0;
  if (x >= 1.0) return 1.0;
  const double log_front = std::lgamma(a + b) - std::lgamma(a) -
                           std::lgamma(b) + a * std::log(x) +
                           b * std::log1p(-x);
  const double front = std::exp(log_front);
  if (x < (a + 1.0) / (a + b + 2.0))
    return front * beta_continued_fraction(a, b, x) / a;
  return 1.0 - front * beta_continued_fraction(b, a, 1.0 - x) / b;
}

double pearson_p_value(double r, std::size_t n) {
  const double df = static_cast<double>(n) - 2.0;
  const double r2 = r * r;
  if (r2 >= 1.0) return 0.0;
  // p = I_{df/(df + t^2)}(df/2, 1/2) with t^2 = r^2 df / (1 - r^2)
  const double t2 = r2 * df / (1.0 - r2);
  return regularized_incomplete_beta(df / 2.0, 0.5, df / (df + t2));
}

PearsonResult pearson(const std::vector<double> &x,
                      const std::vector<double> &y) {
  if (x.size() != y.size()) throw LengthMismatch(x.size(), y.size());
  const std::size_t n = x.size();
  if (n < 3) throw TooFewSamples(n);

  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    mx += x[i];
    my += y[i];
  }
  mx /= static_cast<double>(n);
  my /= static_cast<double>(n);

  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    const double dx = x[i] - mx;
    const double dy = y[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx == 0.0 || syy == 0.0) throw ConstantInput();

  PearsonResult result;
  result.r = sxy / std::sqrt(sxx * syy);
  // guard rounding just past +/-1
  if (result.r > 1.0) result.r = 1.0;
  if (result.r < -1.0) result.r = -1.0;
  result.p = pearson_p_value(result.r, n);
  return result;
}

CorrelationMatrix correlation_matrix(
    const std::vector<std::vector<std::optional<double>>> &rows,
    const std::vector<std::string> &variable_names, double alpha) {
  const std::size_t nvars = variable_names.size();
  constexpr double nan = std::numeric_limits<double>::quiet_NaN();

  CorrelationMatrix matrix;
  matrix.variable_names = variable_names;
  matrix.alpha = alpha;
  matrix.r.assign(nvars, std::vector<double>(nvars, nan));
  matrix.p.assign(nvars, std::vector<double>(nvars, nan));
  matrix.n.assign(nvars, std::vector<int>(nvars, 0));
  matrix.state.assign(nvars,
                      std::vector<CellState>(nvars, CellState::Undefined));

  for (std::size_t i = 0; i < nvars; ++i) {
    int count = 0;
    for (const auto &row : rows)
      if (row[i].has_value()) ++count;
    matrix.r[i][i] = 1.0;
    matrix.p[i][i] = 0.0;
    matrix.n[i][i] = count;
    matrix.state[i][i] = CellState::Significant;
  }

  for (std::size_t i = 0; i < nvars; ++i) {
    for (std::size_t j = i + 1; j < nvars; ++j) {
      std::vector<double> x, y;
      for (const auto &row : rows) {
        if (row[i].has_value() && row[j].has_value()) {
          x.push_back(*row[i]);
          y.push_back(*row[j]);
        }
      }
      matrix.n[i][j] = matrix.n[j][i] = static_cast<int>(x.size());
      if (x.size() < 3) continue;  // Undefined
      try {
        const auto cell = pearson(x, y);
        matrix.r[i][j] = matrix.r[j][i] = cell.r;
        matrix.p[i][j] = matrix.p[j][i] = cell.p;
        const CellState state = cell.p < alpha ? CellState::Significant
                                               : CellState::Masked;
        matrix.state[i][j] = matrix.state[j][i] = state;
      } catch (const ConstantInput &) {
        // masked-undefined cell; r/p stay NaN
      }
    }
  }
  return matrix;
}

}  // namespace valence
