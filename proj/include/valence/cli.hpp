#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace valence {

struct RunConfig {
  std::string command;  // synth | extract | correlate | classify | report

  // inputs
  std::string signals_dir;
  std::string surveys_file;
  std::string features_file;
  std::string out_dir;

  // preprocess
  double band_low_hz = 0.5;
  double band_high_hz = 4.0;
  int filter_order = 2;
  double window_s = 30.0;

  // stats
  double alpha = 0.05;

  // classify
  std::vector<std::string> targets;  // default: positive_affect,alert,afraid,active
  std::optional<int> high_min;
  std::optional<int> low_max;
  double smoothing_alpha = 1.0;
  double train_frac = 2.0 / 3.0;

  // synth
  int participants = 15;
  int responses = 20;
  double effect = 2.0;
  double phone_only_fraction = 0.0;
  std::uint64_t seed = 7;
};

// Canonical flag serialization of everything that affects the command's
// output; its FNV-1a hash goes into every output file header.
std::string canonical_config(const RunConfig &config);
std::string config_hash(const RunConfig &config);

// Validates, runs the subcommand, writes output files atomically. Throws
// valence::Error (or derived) on failure; the binary turns that into a
// machine-readable record and a nonzero exit.
void run(const RunConfig &config);

}  // namespace valence
