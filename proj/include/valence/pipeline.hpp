#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "valence/affect.hpp"
#include "valence/classify.hpp"
#include "valence/ingest.hpp"
#include "valence/stats.hpp"

namespace valence {

struct ExtractParams {
  double half_width_s = 30.0;
  double low_hz = 0.5;
  double high_hz = 4.0;
  int order = 2;
};

struct ExtractResult {
  std::vector<FeatureRow> rows;          // one per survey, dataset order
  std::map<std::string, int> attrition;  // reason -> count, plus ok/total
};

// window -> bandpass -> features for every dataset row; failures become
// per-row missing reasons, never aborts.
ExtractResult extract_features(const Dataset &dataset,
                               const ExtractParams &params = {});

// features file: participant_id, timestamp_ms, the 12 features, missing_reason
std::string write_features_csv(const std::vector<FeatureRow> &rows,
                               const std::vector<std::string> &extra_comments = {});

struct FeatureRecord {
  std::string participant_id;
  std::int64_t timestamp_ms = 0;
  std::optional<HrvFeatures> features;
  std::string missing_reason;
};

std::vector<FeatureRecord> parse_features_csv(std::string_view content);

// Joins surveys to feature records by (participant_id, timestamp_ms).
std::vector<FeatureRow> join_feature_rows(
    const std::vector<SurveyResponse> &surveys,
    const std::vector<FeatureRecord> &records);

// Fig. 3 ordering: 10 emotions, cognitive load, the two affect sums, then
// the 12 signal features.
std::vector<std::string> correlation_variables();

std::vector<std::vector<std::optional<double>>> stat_rows(
    const std::vector<FeatureRow> &rows);

struct TaskRun {
  LabelRule rule;
  TaskCounts counts;
  std::size_t train_size = 0;
  std::size_t test_size = 0;
  MetricsReport metrics;
};

// build_task -> chrono_split -> min-max scale -> MNB -> metrics
TaskRun run_classification(const std::vector<FeatureRow> &rows,
                           const LabelRule &rule, double smoothing_alpha = 1.0,
                           double train_frac = 2.0 / 3.0);

}  // namespace valence
