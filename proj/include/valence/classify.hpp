#pragma once

#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "valence/types.hpp"

namespace valence {

struct SplitResult {
  std::vector<LabeledSample> train;
  std::vector<LabeledSample> test;
};

// Per participant, chronological: first floor(train_frac * n) samples go
// to train, the rest to test; a lone sample goes to train. Throws
// EmptyTestSet when nobody contributed a test sample.
SplitResult chrono_split(const std::vector<LabeledSample> &samples,
                         double train_frac = 2.0 / 3.0);

// Per-feature min-max scaling to [0, 1]; constant features map to 0 and
// out-of-range values are clipped.
class MinMaxScaler {
 public:
  static MinMaxScaler fit(const std::vector<std::vector<double>> &train);

  std::vector<double> transform(const std::vector<double> &x) const;
  std::vector<std::vector<double>> transform_all(
      const std::vector<std::vector<double>> &rows) const;

  const std::vector<std::pair<double, double>> &ranges() const {
    return ranges_;
  }

 private:
  std::vector<std::pair<double, double>> ranges_;  // (min, max) per feature
};

// Multinomial Naive Bayes over the two labels {+1, -1} with Laplace
// smoothing; inputs must be non-negative.
class MnbModel {
 public:
  static MnbModel train(const std::vector<std::vector<double>> &x,
                        const std::vector<int> &y, double alpha = 1.0);

  struct Prediction {
    int label = 1;
    std::array<double, 2> log_scores{};  // order: +1, -1
  };

  Prediction predict(const std::vector<double> &x) const;

  std::size_t feature_count() const { return log_likelihoods_[0].size(); }
  double log_prior(int label) const { return log_priors_[label > 0 ? 0 : 1]; }
  // theta(c, f) as probabilities (exponentials of the stored logs)
  std::vector<double> likelihoods(int label) const;
  double alpha() const { return alpha_; }

 private:
  std::array<double, 2> log_priors_{};
  std::array<std::vector<double>, 2> log_likelihoods_;
  double alpha_ = 1.0;
};

struct MetricsReport {
  double accuracy = 0.0;
  double f1 = 0.0;         // weighted by true-class support
  double precision = 0.0;  // weighted
  double recall = 0.0;     // weighted
  // confusion[i][j]: true class i, predicted class j; order +1, -1
  std::array<std::array<int, 2>, 2> confusion{};
};

MetricsReport evaluate(const std::vector<int> &y_true,
                       const std::vector<int> &y_pred);

// feature matrix from labeled samples (requires complete feature vectors)
std::vector<std::vector<double>> feature_matrix(
    const std::vector<LabeledSample> &samples);
std::vector<int> label_vector(const std::vector<LabeledSample> &samples);

}  // namespace valence
