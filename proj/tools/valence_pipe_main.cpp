#include <CLI11.hpp>
#include <iostream>
#include <json.hpp>

#include "valence/cli.hpp"
#include "valence/errors.hpp"

namespace {

// "low:high" -> pair of cutoffs
bool parse_band(const std::string &text, valence::RunConfig &config) {
  const auto colon = text.find(':');
  if (colon == std::string::npos) return false;
  try {
    config.band_low_hz = std::stod(text.substr(0, colon));
    config.band_high_hz = std::stod(text.substr(colon + 1));
  } catch (const std::exception &) {
    return false;
  }
  return true;
}

}  // namespace

int main(int argc, char **argv) {
  CLI::App app{"PPG valence pipeline: synthetic cohorts, HRV features, "
               "correlation matrices and naive Bayes classification"};
  app.require_subcommand(1);

  valence::RunConfig config;
  std::string band_text;

  auto *synth = app.add_subcommand("synth", "generate a synthetic cohort");
  synth->add_option("--participants", config.participants, "cohort size");
  synth->add_option("--responses", config.responses,
                    "responses per participant");
  synth->add_option("--effect", config.effect,
                    "class separation (0 = no signal/label dependence)");
  synth->add_option("--phone-only", config.phone_only_fraction,
                    "fraction of responses without a signal session");
  synth->add_option("--seed", config.seed, "master seed");
  synth->add_option("--out", config.out_dir, "output directory")->required();

  auto *extract = app.add_subcommand("extract", "extract HRV features");
  extract->add_option("--signals", config.signals_dir, "signal CSV directory")
      ->required();
  extract->add_option("--surveys", config.surveys_file, "survey CSV file")
      ->required();
  extract->add_option("--band", band_text, "bandpass cutoffs, e.g. 0.5:4.0");
  extract->add_option("--order", config.filter_order, "Butterworth order");
  extract->add_option("--window", config.window_s,
                      "window half-width in seconds");
  extract->add_option("--out", config.out_dir, "output directory")->required();

  auto *correlate =
      app.add_subcommand("correlate", "correlation matrix with masking");
  correlate->add_option("--surveys", config.surveys_file, "survey CSV file")
      ->required();
  correlate->add_option("--features", config.features_file, "features CSV")
      ->required();
  correlate->add_option("--alpha", config.alpha, "significance level");
  correlate->add_option("--out", config.out_dir, "output directory")
      ->required();

  auto *classify =
      app.add_subcommand("classify", "train and score binary valence tasks");
  classify->add_option("--surveys", config.surveys_file, "survey CSV file")
      ->required();
  classify->add_option("--features", config.features_file, "features CSV")
      ->required();
  classify->add_option("--target", config.targets,
                       "positive_affect, negative_affect or an emotion name "
                       "(repeatable)");
  int high_min = 0, low_max = 0;
  auto *high_opt =
      classify->add_option("--high", high_min, "minimum score for label +1");
  auto *low_opt =
      classify->add_option("--low", low_max, "maximum score for label -1");
  classify->add_option("--smoothing", config.smoothing_alpha,
                       "Laplace smoothing alpha");
  classify->add_option("--train-frac", config.train_frac,
                       "chronological train fraction per participant");
  classify->add_option("--out", config.out_dir, "output directory")
      ->required();

  auto *report = app.add_subcommand("report", "self-report distributions");
  report->add_option("--surveys", config.surveys_file, "survey CSV file")
      ->required();
  report->add_option("--out", config.out_dir, "output directory")->required();

  CLI11_PARSE(app, argc, argv);

  config.command = app.get_subcommands().front()->get_name();
  if (!band_text.empty() && !parse_band(band_text, config)) {
    std::cerr << R"({"error":"config_error","message":"bad --band, expected low:high"})"
              << '\n';
    return 2;
  }
  if (high_opt->count() > 0) config.high_min = high_min;
  if (low_opt->count() > 0) config.low_max = low_max;

  try {
    valence::run(config);
  } catch (const valence::Error &e) {
    nlohmann::json record{{"error", e.code()},
                          {"message", e.what()},
                          {"command", config.command}};
    std::cerr << record.dump() << '\n';
    return 1;
  } catch (const std::exception &e) {
    nlohmann::json record{{"error", "internal"},
                          {"message", e.what()},
                          {"command", config.command}};
    std::cerr << record.dump() << '\n';
    return 1;
  }
  return 0;
}
