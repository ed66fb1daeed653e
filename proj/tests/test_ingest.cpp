#include <doctest.h>

#include <algorithm>
#include <random>
#include <sstream>

#include "valence/errors.hpp"
#include "valence/ingest.hpp"

using namespace valence;

namespace {

const char *kTwoSampleSignal =
    "# session_id=s1\n"
    "# participant_id=p1\n"
    "timestamp_ms,ppg_green\n"
    "0,512.0\n"
    "40,510.0\n";

SurveyResponse make_survey(const std::string &participant,
                           const std::string &session, std::int64_t ts,
                           int score = 3) {
  SurveyResponse r;
  r.participant_id = participant;
  r.session_id = session;
  r.timestamp_ms = ts;
  r.item_scores.fill(score);
  r.cognitive_load = score;
  return r;
}

std::string survey_line(const std::string &participant,
                        const std::string &session, std::int64_t ts,
                        int score) {
  std::ostringstream ss;
  ss << participant << ',' << session << ',' << ts;
  for (int i = 0; i < 11; ++i) ss << ',' << score;
  return ss.str();
}

const char *kSurveyHeader =
    "participant_id,session_id,timestamp_ms,active,inspired,attentive,"
    "determined,alert,hostile,nervous,upset,afraid,ashamed,cognitive_load";

}  // namespace

TEST_CASE("parse_signal_csv maps rows directly") {
  const auto session = parse_signal_csv(kTwoSampleSignal);
  CHECK(session.session_id == "s1");
  CHECK(session.participant_id == "p1");
  CHECK(session.sample_rate_hz == 25.0);  // nominal default
  REQUIRE(session.samples.size() == 2);
  CHECK(session.samples[0].timestamp_ms == 0);
  CHECK(session.samples[0].value == 512.0);
  CHECK(session.samples[1].timestamp_ms == 40);
}

TEST_CASE("parse_signal_csv rejects non-monotonic timestamps") {
  const std::string content =
      "# session_id=s1\n# participant_id=p1\ntimestamp_ms,ppg_green\n"
      "40,1.0\n0,2.0\n";
  CHECK_THROWS_AS(parse_signal_csv(content), NonMonotonicTimestamp);
  try {
    parse_signal_csv(content);
  } catch (const NonMonotonicTimestamp &e) {
    CHECK(e.row == 2);
  }
}

TEST_CASE("parse_signal_csv error cases") {
  CHECK_THROWS_AS(parse_signal_csv("timestamp_ms,ppg_green\n0,1\n"),
                  MalformedHeader);  // missing sidecar ids
  CHECK_THROWS_AS(parse_signal_csv("# session_id=s\n# participant_id=p\n"
                                   "time,value\n"),
                  MalformedHeader);
  CHECK_THROWS_AS(parse_signal_csv("# session_id=s\n# participant_id=p\n"
                                   "timestamp_ms,ppg_green\n0,abc\n"),
                  UnparsableValue);
}

TEST_CASE("signal csv round-trips byte-for-byte on canonical files") {
  std::mt19937_64 rng(12345);
  std::uniform_real_distribution<double> value(-1000.0, 1000.0);
  std::uniform_int_distribution<int> gap(1, 80);
  std::uniform_int_distribution<int> count(1, 200);

  for (int trial = 0; trial < 40; ++trial) {
    PpgSession session;
    session.session_id = "s" + std::to_string(trial);
    session.participant_id = "p" + std::to_string(trial % 7);
    session.sample_rate_hz = trial % 2 == 0 ? 25.0 : 32.5;
    std::int64_t t = rng() % 1000;
    const int n = count(rng);
    for (int i = 0; i < n; ++i) {
      session.samples.push_back({t, value(rng)});
      t += gap(rng);
    }
    const std::string canonical = write_signal_csv(session);
    const auto parsed = parse_signal_csv(canonical);
    CHECK(parsed.session_id == session.session_id);
    CHECK(parsed.sample_rate_hz == session.sample_rate_hz);
    REQUIRE(parsed.samples.size() == session.samples.size());
    for (std::size_t i = 0; i < parsed.samples.size(); ++i) {
      CHECK(parsed.samples[i].timestamp_ms == session.samples[i].timestamp_ms);
      CHECK(parsed.samples[i].value == session.samples[i].value);
    }
    CHECK(write_signal_csv(parsed) == canonical);
  }
}

TEST_CASE("extra sidecar comments parse but are not round-tripped") {
  const auto with_extra = write_signal_csv(
      parse_signal_csv(kTwoSampleSignal), {"config_hash=deadbeef"});
  const auto parsed = parse_signal_csv(with_extra);
  CHECK(parsed.samples.size() == 2);
}

TEST_CASE("parse_survey_csv maps a row directly") {
  const std::string content =
      std::string(kSurveyHeader) + "\n" + survey_line("p1", "s1", 1000, 3) +
      "\n";
  const auto surveys = parse_survey_csv(content);
  REQUIRE(surveys.size() == 1);
  CHECK(surveys[0].participant_id == "p1");
  CHECK(surveys[0].session_id == "s1");
  for (int score : surveys[0].item_scores) CHECK(score == 3);
  CHECK(surveys[0].cognitive_load == 3);
}

TEST_CASE("parse_survey_csv rejects out-of-range scores naming the column") {
  const std::string content = std::string(kSurveyHeader) +
                              "\np1,s1,1000,3,3,3,3,6,3,3,3,3,3,3\n";
  CHECK_THROWS_AS(parse_survey_csv(content), ScoreOutOfRange);
  try {
    parse_survey_csv(content);
  } catch (const ScoreOutOfRange &e) {
    CHECK(e.row == 1);
    CHECK(e.column == "alert");
  }
}

TEST_CASE("parse_survey_csv requires every column") {
  const std::string header_missing =
      "participant_id,session_id,timestamp_ms,active,inspired,attentive,"
      "determined,alert,hostile,nervous,upset,afraid,ashamed";  // no load
  CHECK_THROWS_AS(parse_survey_csv(header_missing + "\n"), MissingColumn);
  CHECK_THROWS_AS(parse_survey_csv("participant_id,mood\n"), MalformedHeader);
}

TEST_CASE("cohort-scale survey file parses to 482 responses") {
  std::string content = std::string(kSurveyHeader) + "\n";
  for (int i = 0; i < 482; ++i)
    content += survey_line("p" + std::to_string(i % 15),
                           i % 3 == 0 ? "" : "s" + std::to_string(i),
                           1000000 + i * 7200000LL, 1 + i % 5) +
               "\n";
  CHECK(parse_survey_csv(content).size() == 482);
}

TEST_CASE("survey csv round-trips") {
  std::vector<SurveyResponse> surveys;
  std::mt19937_64 rng(99);
  for (int i = 0; i < 60; ++i) {
    auto r = make_survey("p" + std::to_string(i % 5),
                         i % 4 == 0 ? "" : "s" + std::to_string(i),
                         500000 + i * 1000, 1 + static_cast<int>(rng() % 5));
    for (auto &score : r.item_scores) score = 1 + static_cast<int>(rng() % 5);
    surveys.push_back(r);
  }
  const auto text = write_survey_csv(surveys);
  const auto parsed = parse_survey_csv(text);
  REQUIRE(parsed.size() == surveys.size());
  for (std::size_t i = 0; i < parsed.size(); ++i) CHECK(parsed[i] == surveys[i]);
  CHECK(write_survey_csv(parsed) == text);
}

TEST_CASE("join_dataset identity join") {
  PpgSession session;
  session.session_id = "S";
  session.participant_id = "p1";
  session.samples = {{0, 1.0}, {40, 2.0}};
  const auto ds = join_dataset({session}, {make_survey("p1", "S", 100)});
  CHECK(ds.join_report == JoinReport{1, 0, 0});
  REQUIRE(ds.rows.size() == 1);
  CHECK(ds.rows[0].session.has_value());
}

TEST_CASE("join_dataset counts a phone-only survey as missing signal") {
  const auto ds = join_dataset({}, {make_survey("p1", "", 100)});
  CHECK(ds.join_report == JoinReport{0, 1, 0});
  CHECK(!ds.rows[0].session.has_value());
}

TEST_CASE("join_dataset counts enumerate the hand-built join") {
  // 3 surveys / 2 sessions; one session orphaned, one survey phone-only
  PpgSession a, b;
  a.session_id = "A";
  a.samples = {{0, 1.0}};
  b.session_id = "B";
  b.samples = {{0, 1.0}};
  const std::vector<SurveyResponse> surveys = {
      make_survey("p1", "A", 100),
      make_survey("p1", "", 200),
      make_survey("p2", "C", 300),  // names a session nobody recorded
  };
  const auto ds = join_dataset({a, b}, surveys);
  CHECK(ds.join_report.matched == 1);
  CHECK(ds.join_report.missing_signal == 2);
  CHECK(ds.join_report.orphan_session == 1);
  CHECK(ds.join_report.matched + ds.join_report.missing_signal ==
        static_cast<int>(surveys.size()));
}

TEST_CASE("join_dataset rejects duplicate session ids") {
  PpgSession a;
  a.session_id = "A";
  a.samples = {{0, 1.0}};
  CHECK_THROWS_AS(join_dataset({a, a}, {}), DuplicateSessionId);
}

TEST_CASE("join_dataset is order-independent in its inputs") {
  std::vector<PpgSession> sessions;
  std::vector<SurveyResponse> surveys;
  for (int i = 0; i < 12; ++i) {
    PpgSession s;
    s.session_id = "s" + std::to_string(i);
    s.samples = {{0, 1.0}};
    sessions.push_back(s);
    surveys.push_back(make_survey("p" + std::to_string(i % 3),
                                  i % 4 == 0 ? "" : "s" + std::to_string(i),
                                  1000 + i * 10));
  }
  const auto baseline = join_dataset(sessions, surveys);

  std::mt19937_64 rng(7);
  for (int trial = 0; trial < 5; ++trial) {
    std::shuffle(sessions.begin(), sessions.end(), rng);
    std::shuffle(surveys.begin(), surveys.end(), rng);
    const auto shuffled = join_dataset(sessions, surveys);
    CHECK(shuffled.join_report == baseline.join_report);
    REQUIRE(shuffled.rows.size() == baseline.rows.size());
    for (std::size_t i = 0; i < shuffled.rows.size(); ++i) {
      CHECK(shuffled.rows[i].survey == baseline.rows[i].survey);
      CHECK(shuffled.rows[i].session.has_value() ==
            baseline.rows[i].session.has_value());
    }
  }
}
