#include "valence/classify.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <stdexcept>

#include "valence/errors.hpp"

namespace valence {

SplitResult chrono_split(const std::vector<LabeledSample> &samples,
                         double train_frac) {
  std::map<std::string, std::vector<const LabeledSample *>> by_participant;
  for (const auto &s : samples) by_participant[s.participant_id].push_back(&s);

  SplitResult split;
  for (auto &[participant, rows] : by_participant) {
    std::stable_sort(rows.begin(), rows.end(),
                     [](const LabeledSample *a, const LabeledSample *b) {
                       return a->timestamp_ms < b->timestamp_ms;
                     });
    const std::size_t n = rows.size();
    // epsilon keeps floor() exact when train_frac * n is an integer
    std::size_t train_n = static_cast<std::size_t>(
        std::floor(train_frac * static_cast<double>(n) + 1e-9));
    if (n == 1) train_n = 1;
    train_n = std::min(train_n, n);
    for (std::size_t i = 0; i < n; ++i) {
      if (i < train_n)
        split.train.push_back(*rows[i]);
      else
        split.test.push_back(*rows[i]);
    }
  }
  if (split.test.empty()) throw EmptyTestSet();
  return split;
}

MinMaxScaler MinMaxScaler::fit(const std::vector<std::vector<double>> &train) {
  if (train.empty())
    throw std::invalid_argument("MinMaxScaler needs a non-empty training set");
  const std::size_t nfeat = train[0].size();
  MinMaxScaler scaler;
  scaler.ranges_.assign(nfeat, {0.0, 0.0});
  for (std::size_t f = 0; f < nfeat; ++f) {
    double lo = train[0][f], hi = train[0][f];
    for (const auto &row : train) {
      lo = std::min(lo, row[f]);
      hi = std::max(hi, row[f]);
    }
    scaler.ranges_[f] = {lo, hi};
  }
  return scaler;
}

std::vector<double> MinMaxScaler::transform(
    const std::vector<double> &x) const {
  if (x.size() != ranges_.size())
    throw FeatureMismatch(ranges_.size(), x.size());
  std::vector<double> out(x.size());
  for (std::size_t f = 0; f < x.size(); ++f) {
    const auto [lo, hi] = ranges_[f];
    if (hi == lo) {
      out[f] = 0.0;  // constant training column
      continue;
    }
    out[f] = std::clamp((x[f] - lo) / (hi - lo), 0.0, 1.0);
  }
  return out;
}

std::vector<std::vector<double>> MinMaxScaler::transform_all(
    const std::vector<std::vector<double>> &rows) const {
  std::vector<std::vector<double>> out;
  out.reserve(rows.size());
  for (const auto &row : rows) out.push_back(transform(row));
  return out;
}

MnbModel MnbModel::train(const std::vector<std::vector<double>> &x,
                         const std::vector<int> &y, double alpha) {
  if (x.size() != y.size()) throw LengthMismatch(x.size(), y.size());
  if (x.empty()) throw SingleClass();
  const std::size_t nfeat = x[0].size();

  std::array<std::size_t, 2> class_counts{0, 0};
  std::array<std::vector<double>, 2> feature_sums;
  feature_sums[0].assign(nfeat, 0.0);
  feature_sums[1].assign(nfeat, 0.0);

  for (std::size_t i = 0; i < x.size(); ++i) {
    if (x[i].size() != nfeat) throw FeatureMismatch(nfeat, x[i].size());
    const std::size_t c = y[i] > 0 ? 0 : 1;
    ++class_counts[c];
    for (std::size_t f = 0; f < nfeat; ++f) {
      if (x[i][f] < 0.0) throw NegativeFeature();
      feature_sums[c][f] += x[i][f];
    }
  }
  if (class_counts[0] == 0 || class_counts[1] == 0) throw SingleClass();

  MnbModel model;
  model.alpha_ = alpha;
  const double total = static_cast<double>(x.size());
  for (std::size_t c = 0; c < 2; ++c) {
    model.log_priors_[c] =
        std::log(static_cast<double>(class_counts[c]) / total);
    double mass = 0.0;
    for (double v : feature_sums[c]) mass += v;
    const double denom = mass + alpha * static_cast<double>(nfeat);
    model.log_likelihoods_[c].resize(nfeat);
    for (std::size_t f = 0; f < nfeat; ++f)
      model.log_likelihoods_[c][f] =
          std::log((feature_sums[c][f] + alpha) / denom);
  }
  return model;
}

MnbModel::Prediction MnbModel::predict(const std::vector<double> &x) const {
  if (x.size() != feature_count()) throw FeatureMismatch(feature_count(), x.size());
  Prediction pred;
  for (std::size_t c = 0; c < 2; ++c) {
    double score = log_priors_[c];
    for (std::size_t f = 0; f < x.size(); ++f) {
      if (x[f] < 0.0) throw NegativeFeature();
      score += x[f] * log_likelihoods_[c][f];
    }
    pred.log_scores[c] = score;
  }
  // ties resolve to +1 (class index 0)
  pred.label = pred.log_scores[1] > pred.log_scores[0] ? -1 : 1;
  return pred;
}

std::vector<double> MnbModel::likelihoods(int label) const {
  const auto &logs = log_likelihoods_[label > 0 ? 0 : 1];
  std::vector<double> theta(logs.size());
  for (std::size_t f = 0; f < logs.size(); ++f) theta[f] = std::exp(logs[f]);
  return theta;
}

MetricsReport evaluate(const std::vector<int> &y_true,
                       const std::vector<int> &y_pred) {
  if (y_true.size() != y_pred.size())
    throw LengthMismatch(y_true.size(), y_pred.size());
  if (y_true.empty()) throw LengthMismatch(0, 0);

  MetricsReport report;
  for (std::size_t i = 0; i < y_true.size(); ++i) {
    const std::size_t ti = y_true[i] > 0 ? 0 : 1;
    const std::size_t pi = y_pred[i] > 0 ? 0 : 1;
    ++report.confusion[ti][pi];
  }

  const double total = static_cast<double>(y_true.size());
  double correct = 0.0;
  for (std::size_t c = 0; c < 2; ++c)
    correct += report.confusion[c][c];
  report.accuracy = correct / total;

  double weighted_precision = 0.0, weighted_recall = 0.0, weighted_f1 = 0.0;
  for (std::size_t c = 0; c < 2; ++c) {
    const double tp = report.confusion[c][c];
    const double fp = report.confusion[1 - c][c];
    const double fn = report.confusion[c][1 - c];
    const double support = tp + fn;
    if (support == 0.0) continue;
    const double precision = (tp + fp) > 0.0 ? tp / (tp + fp) : 0.0;
    const double recall = tp / support;
    const double f1 = (precision + recall) > 0.0
                          ? 2.0 * precision * recall / (precision + recall)
                          : 0.0;
    weighted_precision += support * precision;
    weighted_recall += support * recall;
    weighted_f1 += support * f1;
  }
  report.precision = weighted_precision / total;
  report.recall = weighted_recall / total;
  report.f1 = weighted_f1 / total;
  return report;
}

std::vector<std::vector<double>> feature_matrix(
    const std::vector<LabeledSample> &samples) {
  std::vector<std::vector<double>> rows;
  rows.reserve(samples.size());
  for (const auto &s : samples) {
    std::vector<double> row;
    row.reserve(kFeatureCount);
    for (const auto &v : feature_values(s.features)) {
      if (!v.has_value())
        throw std::invalid_argument(
            "feature_matrix requires complete feature vectors");
      row.push_back(*v);
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<int> label_vector(const std::vector<LabeledSample> &samples) {
  std::vector<int> labels;
  labels.reserve(samples.size());
  for (const auto &s : samples) labels.push_back(s.label);
  return labels;
}

}  // namespace valence
