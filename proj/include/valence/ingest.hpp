#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "valence/types.hpp"

namespace valence {

struct JoinReport {
  int matched = 0;
  int missing_signal = 0;
  int orphan_session = 0;

  bool operator==(const JoinReport &) const = default;
};

struct DatasetRow {
  SurveyResponse survey;
  std::optional<PpgSession> session;
};

// One row per survey, sorted by (timestamp, participant, session).
struct Dataset {
  std::vector<DatasetRow> rows;
  JoinReport join_report;
};

// Signal file: `# key=value` sidecar lines (session_id, participant_id,
// sample_rate_hz; unknown keys ignored), then `timestamp_ms,ppg_green`
// and one sample per row.
PpgSession parse_signal_csv(std::string_view content);
std::string write_signal_csv(const PpgSession &session,
                             const std::vector<std::string> &extra_comments = {});

// Survey file: participant_id,session_id,timestamp_ms,<10 items>,cognitive_load.
// Leading `#` comment lines are ignored. Columns may appear in any order
// but the set is closed; an empty session_id field means phone-reported.
std::vector<SurveyResponse> parse_survey_csv(std::string_view content);
std::string write_survey_csv(const std::vector<SurveyResponse> &surveys,
                             const std::vector<std::string> &extra_comments = {});

Dataset join_dataset(const std::vector<PpgSession> &sessions,
                     const std::vector<SurveyResponse> &surveys);

}  // namespace valence
