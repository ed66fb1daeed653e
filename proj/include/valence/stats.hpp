#pragma once

#include <optional>
#include <string>
#include <vector>

namespace valence {

// Regularized incomplete beta I_x(a, b), continued-fraction evaluation,
// absolute error well under 1e-10 over the p-value range used here.
double regularized_incomplete_beta(double a, double b, double x);

// Two-sided p-value of Pearson's r under the t-distribution with n-2
// degrees of freedom.
double pearson_p_value(double r, std::size_t n);

struct PearsonResult {
  double r = 0.0;
  double p = 1.0;
};

// Standard product-moment coefficient; throws LengthMismatch,
// TooFewSamples (n < 3), ConstantInput.
PearsonResult pearson(const std::vector<double> &x,
                      const std::vector<double> &y);

enum class CellState {
  Significant,  // p < alpha
  Masked,       // p >= alpha; value kept, flag set
  Undefined,    // constant input or fewer than 3 complete pairs
};

struct CorrelationMatrix {
  std::vector<std::string> variable_names;
  std::vector<std::vector<double>> r;  // NaN where undefined
  std::vector<std::vector<double>> p;
  std::vector<std::vector<int>> n;  // pairwise sample counts
  std::vector<std::vector<CellState>> state;
  double alpha = 0.05;

  std::size_t size() const { return variable_names.size(); }
};

// Rows are observations; entries are missing where a variable was not
// measured. Each cell uses pairwise-complete rows.
CorrelationMatrix correlation_matrix(
    const std::vector<std::vector<std::optional<double>>> &rows,
    const std::vector<std::string> &variable_names, double alpha = 0.05);

}  // namespace valence
