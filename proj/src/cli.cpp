#include "valence/cli.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <filesystem>
#include <map>
#include <sstream>

#include "valence/affect.hpp"
#include "valence/csv.hpp"
#include "valence/errors.hpp"
#include "valence/ingest.hpp"
#include "valence/pipeline.hpp"
#include "valence/stats.hpp"
#include "valence/synth.hpp"
#include "valence/util.hpp"

namespace fs = std::filesystem;

namespace valence {

namespace {

std::string hex64(std::uint64_t v) {
  static const char *digits = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[static_cast<std::size_t>(i)] = digits[v & 0xf];
    v >>= 4;
  }
  return out;
}

std::vector<std::string> effective_targets(const RunConfig &config) {
  if (!config.targets.empty()) return config.targets;
  return {"positive_affect", "alert", "afraid", "active"};
}

void write_output(const RunConfig &config, const fs::path &path,
                  const std::string &body) {
  const std::string content =
      "# config_hash=" + config_hash(config) + "\n" + body;
  atomic_write_file(path.string(), content);
}

std::vector<PpgSession> load_signals(const std::string &dir) {
  if (!fs::is_directory(dir))
    throw ConfigError("signals directory not found: " + dir);
  std::vector<fs::path> paths;
  for (const auto &entry : fs::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".csv")
      paths.push_back(entry.path());
  std::sort(paths.begin(), paths.end());

  std::vector<PpgSession> sessions(paths.size());
  parallel_for(paths.size(), [&](std::size_t i) {
    sessions[i] = parse_signal_csv(read_file(paths[i].string()));
  });
  return sessions;
}

std::vector<SurveyResponse> load_surveys(const std::string &file) {
  if (!fs::is_regular_file(file))
    throw ConfigError("surveys file not found: " + file);
  return parse_survey_csv(read_file(file));
}

std::vector<FeatureRow> load_feature_rows(const RunConfig &config) {
  const auto surveys = load_surveys(config.surveys_file);
  if (!fs::is_regular_file(config.features_file))
    throw ConfigError("features file not found: " + config.features_file);
  const auto records = parse_features_csv(read_file(config.features_file));
  return join_feature_rows(surveys, records);
}

void run_synth(const RunConfig &config) {
  CohortSpec spec;
  spec.participants = config.participants;
  spec.responses_per_participant = config.responses;
  spec.effect = config.effect;
  spec.phone_only_fraction = config.phone_only_fraction;
  spec.seed = config.seed;
  const Cohort cohort = gen_cohort(spec);

  const fs::path out(config.out_dir);
  fs::create_directories(out / "signals");
  const std::string hash_comment = "config_hash=" + config_hash(config);

  parallel_for(cohort.sessions.size(), [&](std::size_t i) {
    const auto &session = cohort.sessions[i];
    atomic_write_file(
        (out / "signals" / (session.session_id + ".csv")).string(),
        write_signal_csv(session, {hash_comment}));
  });

  atomic_write_file((out / "surveys.csv").string(),
                    write_survey_csv(cohort.surveys, {hash_comment}));

  std::string labels = "participant_id,session_id,timestamp_ms,valence\n";
  for (const auto &label : cohort.labels) {
    labels += label.participant_id + ',' + label.session_id + ',' +
              csv::format_int(label.timestamp_ms) + ',' +
              csv::format_int(label.valence) + '\n';
  }
  write_output(config, out / "labels.csv", labels);
}

void run_extract(const RunConfig &config) {
  const auto sessions = load_signals(config.signals_dir);
  const auto surveys = load_surveys(config.surveys_file);
  const Dataset dataset = join_dataset(sessions, surveys);

  ExtractParams params;
  params.half_width_s = config.window_s;
  params.low_hz = config.band_low_hz;
  params.high_hz = config.band_high_hz;
  params.order = config.filter_order;
  const ExtractResult result = extract_features(dataset, params);

  const fs::path out(config.out_dir);
  fs::create_directories(out);
  write_output(config, out / "features.csv", write_features_csv(result.rows));

  std::string attrition = "reason,count\n";
  attrition += "total," + std::to_string(result.attrition.at("total")) + '\n';
  attrition += "ok," + std::to_string(result.attrition.at("ok")) + '\n';
  for (const auto &[reason, count] : result.attrition) {
    if (reason == "total" || reason == "ok") continue;
    attrition += reason + ',' + std::to_string(count) + '\n';
  }
  attrition += "matched," + std::to_string(dataset.join_report.matched) + '\n';
  attrition += "orphan_session," +
               std::to_string(dataset.join_report.orphan_session) + '\n';
  write_output(config, out / "attrition.csv", attrition);
}

std::string matrix_csv(const CorrelationMatrix &matrix,
                       const std::vector<std::vector<double>> &cells) {
  std::string out = "variable";
  for (const auto &name : matrix.variable_names) out += ',' + name;
  out += '\n';
  for (std::size_t i = 0; i < matrix.size(); ++i) {
    out += matrix.variable_names[i];
    for (std::size_t j = 0; j < matrix.size(); ++j) {
      out += ',';
      if (!std::isnan(cells[i][j])) out += csv::format_double(cells[i][j]);
    }
    out += '\n';
  }
  return out;
}

void run_correlate(const RunConfig &config) {
  const auto rows = load_feature_rows(config);
  const auto matrix = correlation_matrix(stat_rows(rows),
                                         correlation_variables(), config.alpha);

  const fs::path out(config.out_dir);
  fs::create_directories(out);
  write_output(config, out / "correlation_r.csv", matrix_csv(matrix, matrix.r));
  write_output(config, out / "correlation_p.csv", matrix_csv(matrix, matrix.p));

  std::string mask = "variable";
  for (const auto &name : matrix.variable_names) mask += ',' + name;
  mask += '\n';
  for (std::size_t i = 0; i < matrix.size(); ++i) {
    mask += matrix.variable_names[i];
    for (std::size_t j = 0; j < matrix.size(); ++j) {
      switch (matrix.state[i][j]) {
        case CellState::Significant:
          mask += ",1";
          break;
        case CellState::Masked:
          mask += ",0";
          break;
        case CellState::Undefined:
          mask += ",-1";
          break;
      }
    }
    mask += '\n';
  }
  write_output(config, out / "correlation_mask.csv", mask);
}

void run_classify(const RunConfig &config) {
  const auto rows = load_feature_rows(config);

  std::string metrics = "task,Accuracy,F1,Precision,Recall\n";
  for (const auto &target_text : effective_targets(config)) {
    const auto target = target_from_string(target_text);
    if (!target) throw ConfigError("unknown target: " + target_text);
    LabelRule rule = LabelRule::defaults_for(*target);
    if (config.high_min) rule.high_min = *config.high_min;
    if (config.low_max) rule.low_max = *config.low_max;
    if (rule.low_max >= rule.high_min)
      throw ConfigError("label rule requires low < high");

    const TaskRun run = run_classification(rows, rule, config.smoothing_alpha,
                                           config.train_frac);
    metrics += target_name(rule.target) + ',' +
               csv::format_double(run.metrics.accuracy) + ',' +
               csv::format_double(run.metrics.f1) + ',' +
               csv::format_double(run.metrics.precision) + ',' +
               csv::format_double(run.metrics.recall) + '\n';
  }

  const fs::path out(config.out_dir);
  fs::create_directories(out);
  write_output(config, out / "metrics.csv", metrics);
}

void run_report(const RunConfig &config) {
  const auto surveys = load_surveys(config.surveys_file);
  const fs::path out(config.out_dir);
  fs::create_directories(out);

  // per-item score histogram
  std::map<std::pair<std::string, int>, int> item_hist;
  for (const auto &survey : surveys)
    for (int e = 0; e < kEmotionCount; ++e)
      ++item_hist[{std::string(emotion_names()[static_cast<std::size_t>(e)]),
                   survey.item_scores[static_cast<std::size_t>(e)]}];
  std::string items = "item,score,count\n";
  for (auto name : emotion_names())
    for (int score = 1; score <= 5; ++score) {
      const auto it = item_hist.find({std::string(name), score});
      items += std::string(name) + ',' + std::to_string(score) + ',' +
               std::to_string(it == item_hist.end() ? 0 : it->second) + '\n';
    }
  write_output(config, out / "report_item_scores.csv", items);

  // affect sum histograms (5..25)
  std::map<std::pair<std::string, int>, int> affect_hist;
  for (const auto &survey : surveys) {
    const auto scores = affect_scores(survey);
    ++affect_hist[{"positive_affect", scores.positive_affect}];
    ++affect_hist[{"negative_affect", scores.negative_affect}];
  }
  std::string affect = "measure,sum,count\n";
  for (const std::string measure : {"positive_affect", "negative_affect"})
    for (int sum = 5; sum <= 25; ++sum) {
      const auto it = affect_hist.find({measure, sum});
      affect += measure + ',' + std::to_string(sum) + ',' +
                std::to_string(it == affect_hist.end() ? 0 : it->second) + '\n';
    }
  write_output(config, out / "report_affect.csv", affect);

  // cognitive load histogram
  std::array<int, 6> load_hist{};
  for (const auto &survey : surveys)
    ++load_hist[static_cast<std::size_t>(survey.cognitive_load)];
  std::string load = "score,count\n";
  for (int score = 1; score <= 5; ++score)
    load += std::to_string(score) + ',' +
            std::to_string(load_hist[static_cast<std::size_t>(score)]) + '\n';
  write_output(config, out / "report_cognitive_load.csv", load);

  // report time of day (UTC hour)
  std::array<int, 24> hour_hist{};
  for (const auto &survey : surveys) {
    const std::int64_t seconds_of_day =
        ((survey.timestamp_ms / 1000) % 86400 + 86400) % 86400;
    ++hour_hist[static_cast<std::size_t>(seconds_of_day / 3600)];
  }
  std::string hours = "hour,count\n";
  for (int hour = 0; hour < 24; ++hour)
    hours += std::to_string(hour) + ',' +
             std::to_string(hour_hist[static_cast<std::size_t>(hour)]) + '\n';
  write_output(config, out / "report_times.csv", hours);
}

}  // namespace

std::string canonical_config(const RunConfig &config) {
  std::ostringstream ss;
  ss << "command=" << config.command;
  if (config.command == "synth") {
    ss << ";effect=" << csv::format_double(config.effect)
       << ";participants=" << config.participants
       << ";phone_only=" << csv::format_double(config.phone_only_fraction)
       << ";responses=" << config.responses << ";seed=" << config.seed;
  } else if (config.command == "extract") {
    ss << ";band=" << csv::format_double(config.band_low_hz) << ':'
       << csv::format_double(config.band_high_hz)
       << ";order=" << config.filter_order
       << ";signals=" << config.signals_dir
       << ";surveys=" << config.surveys_file
       << ";window=" << csv::format_double(config.window_s);
  } else if (config.command == "correlate") {
    ss << ";alpha=" << csv::format_double(config.alpha)
       << ";features=" << config.features_file
       << ";surveys=" << config.surveys_file;
  } else if (config.command == "classify") {
    ss << ";features=" << config.features_file;
    if (config.high_min) ss << ";high=" << *config.high_min;
    if (config.low_max) ss << ";low=" << *config.low_max;
    ss << ";smoothing=" << csv::format_double(config.smoothing_alpha)
       << ";surveys=" << config.surveys_file;
    ss << ";targets=";
    const auto targets = effective_targets(config);
    for (std::size_t i = 0; i < targets.size(); ++i) {
      if (i > 0) ss << '+';
      ss << targets[i];
    }
    ss << ";train_frac=" << csv::format_double(config.train_frac);
  } else if (config.command == "report") {
    ss << ";surveys=" << config.surveys_file;
  }
  return ss.str();
}

std::string config_hash(const RunConfig &config) {
  return hex64(fnv1a64(canonical_config(config)));
}

void run(const RunConfig &config) {
  if (config.out_dir.empty()) throw ConfigError("--out is required");
  if (config.command == "synth") {
    run_synth(config);
  } else if (config.command == "extract") {
    if (config.signals_dir.empty()) throw ConfigError("--signals is required");
    if (config.surveys_file.empty()) throw ConfigError("--surveys is required");
    if (!(0.0 < config.band_low_hz && config.band_low_hz < config.band_high_hz))
      throw ConfigError("--band requires 0 < low < high");
    if (config.filter_order < 1) throw ConfigError("--order must be >= 1");
    if (config.window_s <= 0.0) throw ConfigError("--window must be > 0");
    run_extract(config);
  } else if (config.command == "correlate") {
    if (config.surveys_file.empty()) throw ConfigError("--surveys is required");
    if (config.features_file.empty())
      throw ConfigError("--features is required");
    if (!(0.0 < config.alpha && config.alpha < 1.0))
      throw ConfigError("--alpha must be in (0, 1)");
    run_correlate(config);
  } else if (config.command == "classify") {
    if (config.surveys_file.empty()) throw ConfigError("--surveys is required");
    if (config.features_file.empty())
      throw ConfigError("--features is required");
    if (config.smoothing_alpha <= 0.0)
      throw ConfigError("--smoothing must be > 0");
    if (!(0.0 < config.train_frac && config.train_frac < 1.0))
      throw ConfigError("--train-frac must be in (0, 1)");
    run_classify(config);
  } else if (config.command == "report") {
    if (config.surveys_file.empty()) throw ConfigError("--surveys is required");
    run_report(config);
  } else {
    throw ConfigError("unknown command: " + config.command);
  }
}

}  // namespace valence
