#include "valence/ingest.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <unordered_map>
#include <unordered_set>

#include "valence/csv.hpp"
#include "valence/errors.hpp"

namespace valence {

namespace {

constexpr std::string_view kSignalHeader = "timestamp_ms,ppg_green";

// survey column order is the canonical write order
std::vector<std::string> survey_columns() {
  std::vector<std::string> cols = {"participant_id", "session_id",
                                   "timestamp_ms"};
  for (auto name : emotion_names()) cols.emplace_back(name);
  cols.emplace_back("cognitive_load");
  return cols;
}

}  // namespace

PpgSession parse_signal_csv(std::string_view content) {
  const auto lines = csv::split_lines(content);
  PpgSession session;
  bool saw_session_id = false;
  bool saw_participant_id = false;
  bool saw_header = false;
  int data_row = 0;

  for (const auto line : lines) {
    if (!saw_header) {
      if (line.rfind("# ", 0) == 0) {
        const std::string_view body = line.substr(2);
        const std::size_t eq = body.find('=');
        if (eq == std::string_view::npos)
          throw MalformedHeader("sidecar line without '=': " +
                                std::string(line));
        const std::string_view key = body.substr(0, eq);
        const std::string_view value = body.substr(eq + 1);
        if (key == "session_id") {
          session.session_id = std::string(value);
          saw_session_id = true;
        } else if (key == "participant_id") {
          session.participant_id = std::string(value);
          saw_participant_id = true;
        } else if (key == "sample_rate_hz") {
          const auto rate = csv::parse_double(value);
          if (!rate || *rate <= 0.0)
            throw MalformedHeader("bad sample_rate_hz: " + std::string(value));
          session.sample_rate_hz = *rate;
        }
        // unknown sidecar keys (e.g. config_hash) are tolerated
        continue;
      }
      if (line == kSignalHeader) {
        saw_header = true;
        continue;
      }
      throw MalformedHeader("expected '" + std::string(kSignalHeader) +
                            "', got '" + std::string(line) + "'");
    }

    ++data_row;
    if (line.empty()) throw UnparsableValue(data_row, "empty row");
    const auto fields = csv::split_line(line);
    if (fields.size() != 2)
      throw UnparsableValue(data_row, "expected 2 fields, got " +
                                          std::to_string(fields.size()));
    const auto ts = csv::parse_int(fields[0]);
    if (!ts) throw UnparsableValue(data_row, "timestamp_ms");
    const auto value = csv::parse_double(fields[1]);
    if (!value) throw UnparsableValue(data_row, "ppg_green");
    if (!session.samples.empty() && *ts <= session.samples.back().timestamp_ms)
      throw NonMonotonicTimestamp(data_row);
    session.samples.push_back({*ts, *value});
  }

  if (!saw_header) throw MalformedHeader("missing column header");
  if (!saw_session_id) throw MalformedHeader("missing session_id sidecar");
  if (!saw_participant_id)
    throw MalformedHeader("missing participant_id sidecar");
  return session;
}

std::string write_signal_csv(const PpgSession &session,
                             const std::vector<std::string> &extra_comments) {
  std::string out;
  out.reserve(32 * session.samples.size() + 128);
  for (const auto &comment : extra_comments) {
    out += "# ";
    out += comment;
    out += '\n';
  }
  out += "# session_id=" + session.session_id + '\n';
  out += "# participant_id=" + session.participant_id + '\n';
  out += "# sample_rate_hz=" + csv::format_double(session.sample_rate_hz) + '\n';
  out += kSignalHeader;
  out += '\n';
  for (const auto &s : session.samples) {
    out += csv::format_int(s.timestamp_ms);
    out += ',';
    out += csv::format_double(s.value);
    out += '\n';
  }
  return out;
}

std::vector<SurveyResponse> parse_survey_csv(std::string_view content) {
  const auto lines = csv::split_lines(content);
  const auto expected = survey_columns();

  std::size_t idx = 0;
  while (idx < lines.size() && lines[idx].rfind("#", 0) == 0) ++idx;
  if (idx >= lines.size()) throw MalformedHeader("missing column header");

  const auto header_fields = csv::split_line(lines[idx]);
  std::unordered_map<std::string, std::size_t> col_index;
  for (std::size_t i = 0; i < header_fields.size(); ++i) {
    const std::string name(header_fields[i]);
    if (std::find(expected.begin(), expected.end(), name) == expected.end())
      throw MalformedHeader("unknown column: " + name);
    if (!col_index.emplace(name, i).second)
      throw MalformedHeader("duplicate column: " + name);
  }
  for (const auto &name : expected)
    if (col_index.find(name) == col_index.end()) throw MissingColumn(name);

  std::vector<SurveyResponse> surveys;
  int data_row = 0;
  for (std::size_t li = idx + 1; li < lines.size(); ++li) {
    const auto line = lines[li];
    ++data_row;
    if (line.empty()) throw UnparsableValue(data_row, "empty row");
    const auto fields = csv::split_line(line);
    if (fields.size() != header_fields.size())
      throw UnparsableValue(data_row, "expected " +
                                          std::to_string(header_fields.size()) +
                                          " fields, got " +
                                          std::to_string(fields.size()));

    SurveyResponse r;
    r.participant_id = std::string(fields[col_index.at("participant_id")]);
    r.session_id = std::string(fields[col_index.at("session_id")]);
    const auto ts = csv::parse_int(fields[col_index.at("timestamp_ms")]);
    if (!ts) throw UnparsableValue(data_row, "timestamp_ms");
    r.timestamp_ms = *ts;

    auto read_score = [&](const std::string &column) {
      const auto v = csv::parse_int(fields[col_index.at(column)]);
      if (!v) throw UnparsableValue(data_row, column);
      if (*v < 1 || *v > 5) throw ScoreOutOfRange(data_row, column);
      return static_cast<int>(*v);
    };

    for (int e = 0; e < kEmotionCount; ++e)
      r.item_scores[static_cast<std::size_t>(e)] =
          read_score(std::string(emotion_names()[static_cast<std::size_t>(e)]));
    r.cognitive_load = read_score("cognitive_load");
    surveys.push_back(std::move(r));
  }
  return surveys;
}

std::string write_survey_csv(const std::vector<SurveyResponse> &surveys,
                             const std::vector<std::string> &extra_comments) {
  std::string out;
  for (const auto &comment : extra_comments) {
    out += "# ";
    out += comment;
    out += '\n';
  }
  const auto cols = survey_columns();
  for (std::size_t i = 0; i < cols.size(); ++i) {
    if (i > 0) out += ',';
    out += cols[i];
  }
  out += '\n';
  for (const auto &r : surveys) {
    out += r.participant_id;
    out += ',';
    out += r.session_id;
    out += ',';
    out += csv::format_int(r.timestamp_ms);
    for (int score : r.item_scores) {
      out += ',';
      out += csv::format_int(score);
    }
    out += ',';
    out += csv::format_int(r.cognitive_load);
    out += '\n';
  }
  return out;
}

Dataset join_dataset(const std::vector<PpgSession> &sessions,
                     const std::vector<SurveyResponse> &surveys) {
  std::unordered_map<std::string, const PpgSession *> by_id;
  for (const auto &s : sessions)
    if (!by_id.emplace(s.session_id, &s).second)
      throw DuplicateSessionId(s.session_id);

  Dataset ds;
  std::unordered_set<std::string> referenced;
  for (const auto &survey : surveys) {
    DatasetRow row{survey, std::nullopt};
    if (!survey.session_id.empty()) {
      const auto it = by_id.find(survey.session_id);
      if (it != by_id.end()) {
        row.session = *it->second;
        referenced.insert(survey.session_id);
      }
    }
    if (row.session)
      ++ds.join_report.matched;
    else
      ++ds.join_report.missing_signal;
    ds.rows.push_back(std::move(row));
  }
  for (const auto &s : sessions)
    if (referenced.find(s.session_id) == referenced.end())
      ++ds.join_report.orphan_session;

  std::sort(ds.rows.begin(), ds.rows.end(),
            [](const DatasetRow &a, const DatasetRow &b) {
              return std::tie(a.survey.timestamp_ms, a.survey.participant_id,
                              a.survey.session_id) <
                     std::tie(b.survey.timestamp_ms, b.survey.participant_id,
                              b.survey.session_id);
            });
  return ds;
}

}  // namespace valence
