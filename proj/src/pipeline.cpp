#include "valence/pipeline.hpp"

#include <unordered_map>

#include "valence/csv.hpp"
#include "valence/errors.hpp"
#include "valence/hrv.hpp"
#include "valence/preprocess.hpp"
#include "valence/util.hpp"

namespace valence {

namespace {

const std::vector<std::string> kAttritionReasons = {
    "missing_signal", "window_too_short", "empty_window", "no_plausible_peaks",
    "too_few_intervals"};

std::string format_optional(const std::optional<double> &v) {
  return v ? csv::format_double(*v) : std::string();
}

}  // namespace

ExtractResult extract_features(const Dataset &dataset,
                               const ExtractParams &params) {
  ExtractResult result;
  result.rows.resize(dataset.rows.size());

  parallel_for(dataset.rows.size(), [&](std::size_t i) {
    const auto &in = dataset.rows[i];
    FeatureRow &out = result.rows[i];
    out.survey = in.survey;
    if (!in.session) {
      out.missing_reason = "missing_signal";
      return;
    }
    try {
      auto segment = extract_window(*in.session, in.survey.timestamp_ms,
                                    params.half_width_s);
      segment = bandpass(segment, params.low_hz, params.high_hz, params.order);
      auto extraction = compute_features(segment);
      if (extraction.ok()) {
        out.features = extraction.features;
      } else {
        out.missing_reason = extraction.failure_reason;
      }
    } catch (const WindowTooShort &e) {
      out.missing_reason = e.code();
    } catch (const EmptyWindow &e) {
      out.missing_reason = e.code();
    }
    // InvalidBand and friends are configuration errors and propagate
  });

  result.attrition["total"] = static_cast<int>(result.rows.size());
  result.attrition["ok"] = 0;
  for (const auto &reason : kAttritionReasons) result.attrition[reason] = 0;
  for (const auto &row : result.rows) {
    if (row.features)
      ++result.attrition["ok"];
    else
      ++result.attrition[row.missing_reason];
  }
  return result;
}

std::string write_features_csv(const std::vector<FeatureRow> &rows,
                               const std::vector<std::string> &extra_comments) {
  std::string out;
  for (const auto &comment : extra_comments) {
    out += "# ";
    out += comment;
    out += '\n';
  }
  out += "participant_id,timestamp_ms";
  for (auto name : feature_names()) {
    out += ',';
    out += name;
  }
  out += ",missing_reason\n";
  for (const auto &row : rows) {
    out += row.survey.participant_id;
    out += ',';
    out += csv::format_int(row.survey.timestamp_ms);
    if (row.features) {
      for (const auto &v : feature_values(*row.features)) {
        out += ',';
        out += format_optional(v);
      }
    } else {
      for (int f = 0; f < kFeatureCount; ++f) out += ',';
    }
    out += ',';
    out += row.missing_reason;
    out += '\n';
  }
  return out;
}

std::vector<FeatureRecord> parse_features_csv(std::string_view content) {
  const auto lines = csv::split_lines(content);
  std::size_t idx = 0;
  while (idx < lines.size() && lines[idx].rfind("#", 0) == 0) ++idx;
  if (idx >= lines.size()) throw MalformedHeader("missing column header");

  std::string expected = "participant_id,timestamp_ms";
  for (auto name : feature_names()) {
    expected += ',';
    expected += name;
  }
  expected += ",missing_reason";
  if (lines[idx] != expected)
    throw MalformedHeader("unexpected features header");

  std::vector<FeatureRecord> records;
  int data_row = 0;
  for (std::size_t li = idx + 1; li < lines.size(); ++li) {
    ++data_row;
    const auto fields = csv::split_line(lines[li]);
    if (fields.size() != 2 + kFeatureCount + 1)
      throw UnparsableValue(data_row, "wrong field count");

    FeatureRecord rec;
    rec.participant_id = std::string(fields[0]);
    const auto ts = csv::parse_int(fields[1]);
    if (!ts) throw UnparsableValue(data_row, "timestamp_ms");
    rec.timestamp_ms = *ts;
    rec.missing_reason = std::string(fields.back());

    if (!fields[2].empty()) {
      auto need = [&](std::size_t f) {
        const auto v = csv::parse_double(fields[2 + f]);
        if (!v)
          throw UnparsableValue(data_row,
                                std::string(feature_names()[f]));
        return *v;
      };
      HrvFeatures hf;
      hf.bpm = need(0);
      hf.ibi = need(1);
      hf.sdnn = need(2);
      hf.rmssd = need(3);
      hf.pnn20 = need(4);
      hf.pnn50 = need(5);
      hf.hr_mad = need(6);
      hf.sd1 = need(7);
      hf.sd2 = need(8);
      hf.s = need(9);
      hf.sd1_sd2 = csv::parse_double(fields[2 + 10]);
      hf.breathing_rate = csv::parse_double(fields[2 + 11]);
      rec.features = hf;
    }
    records.push_back(std::move(rec));
  }
  return records;
}

std::vector<FeatureRow> join_feature_rows(
    const std::vector<SurveyResponse> &surveys,
    const std::vector<FeatureRecord> &records) {
  std::unordered_map<std::string, const FeatureRecord *> by_key;
  for (const auto &rec : records)
    by_key[rec.participant_id + "\x1f" +
           std::to_string(rec.timestamp_ms)] = &rec;

  std::vector<FeatureRow> rows;
  rows.reserve(surveys.size());
  for (const auto &survey : surveys) {
    FeatureRow row;
    row.survey = survey;
    const auto it = by_key.find(survey.participant_id + "\x1f" +
                                std::to_string(survey.timestamp_ms));
    if (it != by_key.end()) {
      row.features = it->second->features;
      row.missing_reason = it->second->missing_reason;
    } else {
      row.missing_reason = "missing_signal";
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<std::string> correlation_variables() {
  std::vector<std::string> names;
  for (auto name : emotion_names()) names.emplace_back(name);
  names.emplace_back("cognitive_load");
  names.emplace_back("positive_affect");
  names.emplace_back("negative_affect");
  for (auto name : feature_names()) names.emplace_back(name);
  return names;
}

std::vector<std::vector<std::optional<double>>> stat_rows(
    const std::vector<FeatureRow> &rows) {
  std::vector<std::vector<std::optional<double>>> out;
  out.reserve(rows.size());
  for (const auto &row : rows) {
    std::vector<std::optional<double>> values;
    values.reserve(kEmotionCount + 3 + kFeatureCount);
    for (int score : row.survey.item_scores)
      values.emplace_back(static_cast<double>(score));
    values.emplace_back(static_cast<double>(row.survey.cognitive_load));
    const auto scores = affect_scores(row.survey);
    values.emplace_back(static_cast<double>(scores.positive_affect));
    values.emplace_back(static_cast<double>(scores.negative_affect));
    if (row.features) {
      for (const auto &v : feature_values(*row.features))
        values.push_back(v);
    } else {
      for (int f = 0; f < kFeatureCount; ++f)
        values.emplace_back(std::nullopt);
    }
    out.push_back(std::move(values));
  }
  return out;
}

TaskRun run_classification(const std::vector<FeatureRow> &rows,
                           const LabelRule &rule, double smoothing_alpha,
                           double train_frac) {
  TaskRun run;
  run.rule = rule;

  const Task task = build_task(rows, rule);
  run.counts = task.counts;

  const auto split = chrono_split(task.samples, train_frac);
  run.train_size = split.train.size();
  run.test_size = split.test.size();

  const auto scaler = MinMaxScaler::fit(feature_matrix(split.train));
  const auto train_x = scaler.transform_all(feature_matrix(split.train));
  const auto test_x = scaler.transform_all(feature_matrix(split.test));

  const auto model = MnbModel::train(train_x, label_vector(split.train),
                                     smoothing_alpha);
  std::vector<int> predictions;
  predictions.reserve(test_x.size());
  for (const auto &x : test_x) predictions.push_back(model.predict(x).label);

  run.metrics = evaluate(label_vector(split.test), predictions);
  return run;
}

}  // namespace valence
