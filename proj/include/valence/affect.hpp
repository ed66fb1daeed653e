#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "valence/types.hpp"

namespace valence {

AffectScores affect_scores(const SurveyResponse &survey);

enum class AffectTarget { PositiveAffect, NegativeAffect };

// what a label rule scores: an affect sum or a single emotion
using LabelTarget = std::variant<AffectTarget, Emotion>;

std::string target_name(const LabelTarget &target);
std::optional<LabelTarget> target_from_string(std::string_view name);

struct LabelRule {
  LabelTarget target = AffectTarget::PositiveAffect;
  int high_min = 17;  // score >= high_min -> +1
  int low_max = 14;   // score <= low_max  -> -1

  // paper defaults: 17/14 for affect sums, 4/2 for single emotions
  static LabelRule defaults_for(const LabelTarget &target);
};

enum class Label { Positive, Negative, Excluded };

Label apply_label(int score, const LabelRule &rule);

int target_score(const SurveyResponse &survey, const LabelTarget &target);

// one joined row: survey plus the features extracted for it (if any)
struct FeatureRow {
  SurveyResponse survey;
  std::optional<HrvFeatures> features;
  std::string missing_reason;  // why features are absent (stage-tagged)
};

struct TaskCounts {
  int positive = 0;
  int negative = 0;
  int excluded = 0;
  int missing_features = 0;
};

struct Task {
  std::vector<LabeledSample> samples;
  TaskCounts counts;
};

// Drops rows lacking a complete feature vector or labeled excluded;
// throws EmptyClass when one class ends up empty.
Task build_task(const std::vector<FeatureRow> &rows, const LabelRule &rule);

}  // namespace valence
