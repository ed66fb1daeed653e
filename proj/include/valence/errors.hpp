#pragma once

#include <stdexcept>
#include <string>

namespace valence {

// Base for all pipeline errors; `code` is the stable machine-readable tag
// emitted in CLI error records and attrition reports.
class Error : public std::runtime_error {
 public:
  Error(std::string code, const std::string &message)
      : std::runtime_error(message), code_(std::move(code)) {}

  const std::string &code() const { return code_; }

 private:
  std::string code_;
};

// ---- ingest_io ----

struct MalformedHeader : Error {
  explicit MalformedHeader(const std::string &detail)
      : Error("malformed_header", "malformed header: " + detail) {}
};

struct NonMonotonicTimestamp : Error {
  explicit NonMonotonicTimestamp(int row_)
      : Error("non_monotonic_timestamp",
              "non-monotonic timestamp at row " + std::to_string(row_)),
        row(row_) {}
  int row;
};

struct UnparsableValue : Error {
  UnparsableValue(int row_, const std::string &detail)
      : Error("unparsable_value",
              "unparsable value at row " + std::to_string(row_) + ": " + detail),
        row(row_) {}
  int row;
};

struct ScoreOutOfRange : Error {
  ScoreOutOfRange(int row_, std::string column_)
      : Error("score_out_of_range", "score out of range at row " +
                                        std::to_string(row_) + ", column " +
                                        column_),
        row(row_),
        column(std::move(column_)) {}
  int row;
  std::string column;
};

struct MissingColumn : Error {
  explicit MissingColumn(std::string name_)
      : Error("missing_column", "missing column: " + name_),
        name(std::move(name_)) {}
  std::string name;
};

struct DuplicateSessionId : Error {
  explicit DuplicateSessionId(std::string id_)
      : Error("duplicate_session_id", "duplicate session id: " + id_),
        id(std::move(id_)) {}
  std::string id;
};

// ---- preprocess ----

struct WindowTooShort : Error {
  explicit WindowTooShort(double actual_duration_s_)
      : Error("window_too_short",
              "window too short: " + std::to_string(actual_duration_s_) + " s"),
        actual_duration_s(actual_duration_s_) {}
  double actual_duration_s;
};

struct EmptyWindow : Error {
  EmptyWindow() : Error("empty_window", "no samples in window") {}
};

struct InvalidBand : Error {
  explicit InvalidBand(const std::string &detail)
      : Error("invalid_band", "invalid band: " + detail) {}
};

struct AlreadyFiltered : Error {
  AlreadyFiltered() : Error("already_filtered", "segment already filtered") {}
};

// ---- hrv ----

struct NoPlausiblePeaks : Error {
  NoPlausiblePeaks()
      : Error("no_plausible_peaks", "no elevation yields BPM in [40, 180]") {}
};

struct TooFewIntervals : Error {
  explicit TooFewIntervals(int accepted_)
      : Error("too_few_intervals",
              "only " + std::to_string(accepted_) + " intervals accepted"),
        accepted(accepted_) {}
  int accepted;
};

// ---- stats ----

struct ConstantInput : Error {
  ConstantInput() : Error("constant_input", "input vector has zero variance") {}
};

struct LengthMismatch : Error {
  LengthMismatch(std::size_t a, std::size_t b)
      : Error("length_mismatch", "length mismatch: " + std::to_string(a) +
                                     " vs " + std::to_string(b)) {}
};

struct TooFewSamples : Error {
  explicit TooFewSamples(std::size_t n)
      : Error("too_few_samples",
              "need at least 3 samples, got " + std::to_string(n)) {}
};

// ---- affect / classify ----

struct EmptyClass : Error {
  explicit EmptyClass(int label)
      : Error("empty_class",
              "class " + std::to_string(label) + " has zero rows") {}
};

struct EmptyTestSet : Error {
  EmptyTestSet()
      : Error("empty_test_set", "no participant contributed a test sample") {}
};

struct NegativeFeature : Error {
  NegativeFeature() : Error("negative_feature", "feature value below zero") {}
};

struct SingleClass : Error {
  SingleClass() : Error("single_class", "training data has a single class") {}
};

struct FeatureMismatch : Error {
  FeatureMismatch(std::size_t expected, std::size_t got)
      : Error("feature_mismatch", "expected " + std::to_string(expected) +
                                      " features, got " + std::to_string(got)) {
  }
};

// ---- synth ----

struct InvalidSpec : Error {
  explicit InvalidSpec(const std::string &detail)
      : Error("invalid_spec", "invalid synth spec: " + detail) {}
};

// ---- cli ----

struct ConfigError : Error {
  explicit ConfigError(const std::string &detail)
      : Error("config_error", detail) {}
};

}  // namespace valence
