#include "valence/affect.hpp"

#include <stdexcept>

#include "valence/errors.hpp"

namespace valence {

AffectScores affect_scores(const SurveyResponse &survey) {
  AffectScores scores;
  for (int i = 0; i < kPositiveItemCount; ++i)
    scores.positive_affect += survey.item_scores[static_cast<std::size_t>(i)];
  for (int i = kPositiveItemCount; i < kEmotionCount; ++i)
    scores.negative_affect += survey.item_scores[static_cast<std::size_t>(i)];
  return scores;
}

std::string target_name(const LabelTarget &target) {
  if (const auto *affect = std::get_if<AffectTarget>(&target))
    return *affect == AffectTarget::PositiveAffect ? "positive_affect"
                                                   : "negative_affect";
  return std::string(to_string(std::get<Emotion>(target)));
}

std::optional<LabelTarget> target_from_string(std::string_view name) {
  if (name == "positive_affect") return LabelTarget{AffectTarget::PositiveAffect};
  if (name == "negative_affect") return LabelTarget{AffectTarget::NegativeAffect};
  if (const auto emotion = emotion_from_string(name))
    return LabelTarget{*emotion};
  return std::nullopt;
}

LabelRule LabelRule::defaults_for(const LabelTarget &target) {
  LabelRule rule;
  rule.target = target;
  if (std::holds_alternative<Emotion>(target)) {
    rule.high_min = 4;
    rule.low_max = 2;
  } else {
    rule.high_min = 17;
    rule.low_max = 14;
  }
  return rule;
}

Label apply_label(int score, const LabelRule &rule) {
  if (score >= rule.high_min) return Label::Positive;
  if (score <= rule.low_max) return Label::Negative;
  return Label::Excluded;
}

int target_score(const SurveyResponse &survey, const LabelTarget &target) {
  if (const auto *affect = std::get_if<AffectTarget>(&target)) {
    const auto scores = affect_scores(survey);
    return *affect == AffectTarget::PositiveAffect ? scores.positive_affect
                                                   : scores.negative_affect;
  }
  return survey.score(std::get<Emotion>(target));
}

namespace {

bool features_complete(const HrvFeatures &f) {
  for (const auto &v : feature_values(f))
    if (!v.has_value()) return false;
  return true;
}

}  // namespace

Task build_task(const std::vector<FeatureRow> &rows, const LabelRule &rule) {
  if (rule.low_max >= rule.high_min)
    throw std::invalid_argument("label rule requires low_max < high_min");
  Task task;
  for (const auto &row : rows) {
    if (!row.features || !features_complete(*row.features)) {
      ++task.counts.missing_features;
      continue;
    }
    const Label label = apply_label(target_score(row.survey, rule.target), rule);
    if (label == Label::Excluded) {
      ++task.counts.excluded;
      continue;
    }
    LabeledSample sample;
    sample.participant_id = row.survey.participant_id;
    sample.timestamp_ms = row.survey.timestamp_ms;
    sample.features = *row.features;
    sample.affect = affect_scores(row.survey);
    sample.item_scores = row.survey.item_scores;
    sample.label = label == Label::Positive ? 1 : -1;
    if (sample.label > 0)
      ++task.counts.positive;
    else
      ++task.counts.negative;
    task.samples.push_back(std::move(sample));
  }
  if (task.counts.positive == 0) throw EmptyClass(1);
  if (task.counts.negative == 0) throw EmptyClass(-1);
  return task;
}

}  // namespace valence
