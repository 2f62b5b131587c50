#include <algorithm>
#include <fstream>
#include <functional>
#include <map>
#include <memory>
#include <sstream>

#include <gtest/gtest.h>

#include "essmart/service/service.h"
#include "test_support.h"

namespace essmart::service {
namespace {

using nlohmann::json;

// Top-down memoized edit distance over whitespace tokens; a second,
// independent formulation of the word-diff contract.
std::size_t levenshtein_oracle(const std::string& a, const std::string& b) {
  auto split = [](const std::string& s) {
    std::istringstream in(s);
    std::vector<std::string> out;
    for (std::string w; in >> w;) out.push_back(w);
    return out;
  };
  const auto x = split(a), y = split(b);
  std::map<std::pair<std::size_t, std::size_t>, std::size_t> memo;
  std::function<std::size_t(std::size_t, std::size_t)> d = [&](std::size_t i, std::size_t j) {
    if (i == x.size()) return y.size() - j;
    if (j == y.size()) return x.size() - i;
    if (auto it = memo.find({i, j}); it != memo.end()) return it->second;
    std::size_t best = x[i] == y[j] ? d(i + 1, j + 1) : 1 + d(i + 1, j + 1);
    best = std::min({best, 1 + d(i + 1, j), 1 + d(i, j + 1)});
    return memo[{i, j}] = best;
  };
  return d(0, 0);
}

std::string random_sentence(Rng& rng) {
  const char* words[] = {"the", "app", "crash", "login", "page", "slow", "inbox", "fax"};
  std::string s;
  for (std::size_t n = rng.uniform_index(31); n > 0; --n) {
    s += words[rng.uniform_index(8)];
    s += rng.uniform_index(5) == 0 ? "   " : " ";
  }
  return s;
}

TEST(WordDiff, MatchesLevenshteinOracle) {
  Rng rng(500);
  for (int i = 0; i < 500; ++i) {
    const auto a = random_sentence(rng), b = random_sentence(rng);
    EXPECT_EQ(word_diff(a, b), levenshtein_oracle(a, b)) << a << " | " << b;
  }
  EXPECT_EQ(word_diff("a b c", "a x c"), 1u);
  EXPECT_EQ(word_diff("", "a b"), 2u);
}

TEST(MakeEdit, CountsWordsAndSentences) {
  EXPECT_EQ(make_edit("s", EditField::kContent, "a b c", "a x c").changed_word_count, 1u);
  const auto e = make_edit("s", EditField::kSummarySentences, json{"One two.", "Three four."},
                           json{"One two.", "Five six."});
  EXPECT_EQ(e.changed_sentence_count, 2u);
  EXPECT_EQ(e.changed_word_count, 2u);
  EXPECT_EQ(make_edit("s", EditField::kPriority, "Major", "Major").changed_word_count, 0u);
}

TEST(DurationStats, MeanAndMedian) {
  const auto odd = duration_stats({10, 90, 20});
  EXPECT_EQ(odd.count, 3u);
  EXPECT_DOUBLE_EQ(odd.mean_ms, 40);
  EXPECT_DOUBLE_EQ(odd.median_ms, 20);
  EXPECT_DOUBLE_EQ(duration_stats({10, 20, 30, 100}).median_ms, 25);
  EXPECT_EQ(duration_stats({}).count, 0u);
}

struct Harness {
  std::shared_ptr<Millis> now = std::make_shared<Millis>(0);
  std::unique_ptr<TriageService> service;

  explicit Harness(std::vector<std::string> ids,
                   std::optional<std::filesystem::path> log = std::nullopt) {
    std::vector<corpus::UserRequest> requests;
    for (const auto& id : ids) requests.push_back(essmart::testing::simple_request(id, "Hi."));
    ServiceOptions opts;
    opts.event_log = log;
    auto clock = now;
    opts.clock = [clock] { return *clock; };
    service = std::make_unique<TriageService>(requests, nullptr, opts);
  }

  std::string open(const std::string& user, const std::string& role, const std::string& id,
                   const std::string& mode) {
    const auto r = service->open_session(
        {{"user", user}, {"role", role}, {"request_id", id}, {"mode", mode}}, "");
    EXPECT_EQ(r.status, 201) << r.body.dump();
    return r.body.value("session_id", "");
  }

  int submit(const std::string& session, json decisions, json edits = json::array()) {
    return service->submit(session, {{"decisions", decisions}, {"edits", edits}}).status;
  }

  static json pm_decisions() {
    return {{"title", "Crash in inbox"}, {"content", "In the EMR system; a crash."},
            {"priority", "Major"}, {"assignee", "dev_alex"}};
  }
};

TEST(TimingAnalytics, FakeClockReproducesKnownDurations) {
  Harness h({"R1", "R2", "R3", "R4"});
  auto crm = [&](const std::string& id, const std::string& mode, Millis start, Millis end) {
    *h.now = start;
    const auto s = h.open("crm", "crm_expert", id, mode);
    *h.now = end;
    EXPECT_EQ(h.submit(s, {{"escalate", true}}), 200);
  };
  crm("R1", "manual", 0, 100'000);
  crm("R2", "manual", 100'000, 240'000);
  crm("R3", "assisted", 240'000, 290'000);
  crm("R4", "assisted", 290'000, 360'000);
  auto pm = [&](const std::string& id, Millis start, Millis end) {
    *h.now = start;
    const auto s = h.open("pm", "project_manager", id, "assisted");
    *h.now = end;
    EXPECT_EQ(h.submit(s, Harness::pm_decisions()), 200);
  };
  pm("R1", 360'000, 400'000);
  pm("R2", 400'000, 480'000);

  const auto t = h.service->timing_analytics();
  EXPECT_DOUBLE_EQ(t.escalation_time.at("manual").mean_ms, 120'000);
  EXPECT_DOUBLE_EQ(t.escalation_time.at("manual").median_ms, 120'000);
  EXPECT_DOUBLE_EQ(t.escalation_time.at("assisted").mean_ms, 60'000);
  EXPECT_DOUBLE_EQ(t.escalation_time.at("assisted").median_ms, 60'000);
  ASSERT_TRUE(t.escalation_saving_ms);
  EXPECT_DOUBLE_EQ(*t.escalation_saving_ms, 60'000);
  EXPECT_DOUBLE_EQ(t.decision_time.at("assisted").mean_ms, 60'000);
  EXPECT_FALSE(t.decision_saving_ms);
  // R1: decided at 100 s of 400 s; R2: 240 s of 480 s.
  EXPECT_EQ(t.cycles, 2u);
  ASSERT_TRUE(t.escalation_share);
  EXPECT_DOUBLE_EQ(*t.escalation_share, (100.0 / 400.0 + 240.0 / 480.0) / 2);
  EXPECT_EQ(t.per_user.at("crm").first, 4u);
  EXPECT_DOUBLE_EQ(t.per_user.at("crm").second, 360'000);
}

TEST(TimingAnalytics, FirstInteractionVariant) {
  Harness h({"R1"});
  const auto s = h.open("crm", "crm_expert", "R1", "manual");
  *h.now = 5'000;
  h.service->interact(s);
  *h.now = 8'000;
  h.service->interact(s);
  *h.now = 65'000;
  ASSERT_EQ(h.submit(s, {{"escalate", false}}), 200);
  const auto t = h.service->timing_analytics();
  EXPECT_DOUBLE_EQ(t.escalation_time.at("manual").mean_ms, 65'000);
  EXPECT_DOUBLE_EQ(t.escalation_time_from_first_interaction.at("manual").mean_ms, 60'000);
  EXPECT_EQ(h.service->request_entry("R1")->state, RequestState::kNotEscalated);
}

TEST(EditAnalytics, BucketsAssistedSessions) {
  Harness h({"R1", "R2", "R3"});
  for (const char* id : {"R1", "R2", "R3"}) {
    h.submit(h.open("crm", "crm_expert", id, "assisted"), {{"escalate", true}});
  }
  h.submit(h.open("pm", "project_manager", "R1", "assisted"), Harness::pm_decisions());
  h.submit(h.open("pm", "project_manager", "R2", "assisted"), Harness::pm_decisions(),
           json::array({{{"field", "content"}, {"before", "a b c"}, {"after", "a x c"}}}));
  h.submit(h.open("pm", "project_manager", "R3", "assisted"), Harness::pm_decisions(),
           json::array({{{"field", "content"},
                         {"before", "one two three four five six seven eight nine ten eleven"},
                         {"after", "1 2 3 4 5 6 7 8 9 10 11"}}}));
  const auto e = h.service->edit_analytics();
  EXPECT_EQ(e.pm_sessions, 3u);
  EXPECT_EQ(e.changed_words.at("0"), 1u);
  EXPECT_EQ(e.changed_words.at("1-2"), 1u);
  EXPECT_EQ(e.changed_words.at(">10"), 1u);
  EXPECT_DOUBLE_EQ(e.unchanged_share, 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(e.over_ten_share, 1.0 / 3.0);
  EXPECT_DOUBLE_EQ(e.mean_changed_words, 12.0 / 3.0);
  EXPECT_EQ(e.changed_sentences.at("0"), 3u);
}

TEST(Service, PmQueueIffEscalatingCrmSubmission) {
  Rng rng(77);
  for (int trial = 0; trial < 30; ++trial) {
    std::vector<std::string> ids;
    for (int i = 0; i < 6; ++i) ids.push_back("R" + std::to_string(i));
    Harness h(ids);
    std::map<std::string, bool> escalated;
    for (int step = 0; step < 40; ++step) {
      const auto& id = ids[rng.uniform_index(ids.size())];
      const bool as_pm = rng.uniform_index(2);
      const auto r = h.service->open_session(
          {{"user", "u" + std::to_string(rng.uniform_index(3))},
           {"role", as_pm ? "project_manager" : "crm_expert"},
           {"request_id", id}},
          "");
      if (r.status != 201) continue;
      const auto sid = r.body.at("session_id").get<std::string>();
      if (rng.uniform_index(4) == 0) continue;  // left open
      if (as_pm) {
        h.submit(sid, Harness::pm_decisions());
      } else {
        const bool esc = rng.uniform_index(2);
        if (h.submit(sid, {{"escalate", esc}}) == 200 && esc) escalated[id] = true;
      }
    }
    for (const auto& id : ids) {
      const auto state = h.service->request_entry(id)->state;
      const bool reached = state == RequestState::kPmQueue || state == RequestState::kTicketed;
      EXPECT_EQ(reached, escalated.contains(id)) << id;
    }
    for (const auto& s : h.service->sessions()) {
      if (s.submitted_at) {
        EXPECT_GE(*s.submitted_at, s.started_at);
      }
    }
  }
}

TEST(Service, ReplayRebuildsStateAndAnalytics) {
  essmart::testing::TempDir dir;
  const auto log = dir / "events.jsonl";
  json timing, edits, sessions;
  {
    Harness h({"R1", "R2"}, log);
    *h.now = 1'000;
    const auto a = h.open("crm", "crm_expert", "R1", "assisted");
    *h.now = 31'000;
    h.submit(a, {{"escalate", true}, {"summary_sentences", json::array({"Hi."})}},
             json::array({{{"field", "summary_sentences"}, {"before", json::array({"Hi."})},
                           {"after", json::array()}}}));
    const auto b = h.open("pm", "project_manager", "R1", "manual");
    *h.now = 91'000;
    h.submit(b, Harness::pm_decisions());
    h.open("crm", "crm_expert", "R2", "manual");
    timing = h.service->timing_analytics().to_json();
    edits = h.service->edit_analytics().to_json();
    for (const auto& s : h.service->sessions()) sessions.push_back(s.to_json());
    const auto events = TriageService::read_event_log(log);
    EXPECT_EQ(TriageService::timing_from_events(events).to_json(), timing);
    EXPECT_EQ(TriageService::edits_from_events(events).to_json(), edits);
  }
  Harness again({"R1", "R2"}, log);
  EXPECT_EQ(again.service->timing_analytics().to_json(), timing);
  EXPECT_EQ(again.service->edit_analytics().to_json(), edits);
  json replayed;
  for (const auto& s : again.service->sessions()) replayed.push_back(s.to_json());
  EXPECT_EQ(replayed, sessions);
  EXPECT_EQ(again.service->request_entry("R1")->state, RequestState::kTicketed);
  EXPECT_EQ(again.service->queue(RequestState::kTicketed).size(), 1u);
  // Open session survived the restart, so a second one for the same user conflicts.
  EXPECT_EQ(again.service
                ->open_session({{"user", "crm"}, {"role", "crm_expert"}, {"request_id", "R2"}}, "")
                .status,
            409);
}

TEST(Http, RoutesAndErrorStatuses) {
  Harness h({"R1"});
  auto call = [&](const std::string& method, const std::string& path, const std::string& body = "",
                  std::map<std::string, std::string> query = {}) {
    return h.service->handle(method, path, query, body, "alice");
  };
  EXPECT_EQ(call("GET", "/health").status, 200);
  EXPECT_EQ(call("GET", "/nope").status, 404);
  EXPECT_EQ(call("DELETE", "/health").status, 405);
  EXPECT_EQ(call("GET", "/requests/R9").status, 404);
  EXPECT_EQ(call("POST", "/sessions", "{not json").status, 422);
  EXPECT_EQ(call("POST", "/sessions", R"({"role": "ceo", "request_id": "R1"})").status, 422);
  EXPECT_EQ(call("POST", "/sessions", R"({"role": "crm_expert", "request_id": "R9"})").status,
            404);
  EXPECT_EQ(call("POST", "/sessions", R"({"role": "project_manager", "request_id": "R1"})").status,
            409);
  const auto opened = call("POST", "/sessions", R"({"role": "crm_expert", "request_id": "R1"})");
  ASSERT_EQ(opened.status, 201);
  EXPECT_EQ(opened.body.at("user"), "alice");
  const auto sid = opened.body.at("session_id").get<std::string>();
  EXPECT_EQ(call("POST", "/sessions", R"({"role": "crm_expert", "request_id": "R1"})").status, 409);
  EXPECT_EQ(call("POST", "/sessions/" + sid + "/submit", R"({"decisions": {}})").status, 422);
  EXPECT_EQ(call("POST", "/sessions/" + sid + "/submit",
                 R"({"decisions": {"escalate": true}, "edits": [{"field": "title", "before": "a", "after": "b"}]})")
                .status,
            422);
  EXPECT_EQ(call("GET", "/requests/R1/suggestion", "", {{"session", sid}}).status, 503);
  EXPECT_EQ(call("POST", "/sessions/" + sid + "/interact").status, 200);
  EXPECT_EQ(call("POST", "/sessions/" + sid + "/submit", R"({"decisions": {"escalate": true}})")
                .status,
            200);
  EXPECT_EQ(call("POST", "/sessions/" + sid + "/submit", R"({"decisions": {"escalate": true}})")
                .status,
            409);
  EXPECT_EQ(call("POST", "/sessions/s99/submit", "{}").status, 404);
  const auto queue = call("GET", "/requests", "", {{"state", "pm_queue"}});
  ASSERT_EQ(queue.status, 200);
  EXPECT_EQ(queue.body.dump().find("R1") != std::string::npos, true);
  EXPECT_EQ(call("GET", "/requests", "", {{"state", "bogus"}}).status, 422);
  EXPECT_EQ(call("GET", "/analytics/timing").status, 200);
  EXPECT_EQ(call("GET", "/analytics/edits").status, 200);
  EXPECT_EQ(call("GET", "/sessions/" + sid).status, 200);
}

TEST(Http, ManualModeCarriesNoSuggestion) {
  Harness h({"R1"});
  const auto sid = h.open("crm", "crm_expert", "R1", "manual");
  const auto r = h.service->suggestion("R1", sid);
  ASSERT_EQ(r.status, 200);
  EXPECT_FALSE(r.body.contains("suggestion"));
  EXPECT_EQ(r.body.at("mode"), "manual");
}

TEST(ServiceConfig, FileThenEnvironment) {
  essmart::testing::TempDir dir;
  std::ofstream(dir / "c.json") << R"({"port": 9001, "bundle": "/tmp/b"})";
  auto c = ServiceConfig::from_file(dir / "c.json");
  EXPECT_EQ(c.port, 9001);
  ::setenv("ESSMART_PORT", "9100", 1);
  c.apply_env();
  ::unsetenv("ESSMART_PORT");
  EXPECT_EQ(c.port, 9100);
  EXPECT_EQ(c.bundle->string(), "/tmp/b");
}

}  // namespace
}  // namespace essmart::service
