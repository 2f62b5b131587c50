#ifndef ESSMART_SERVICE_SERVICE_H_
#define ESSMART_SERVICE_SERVICE_H_

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>

#include "essmart/corpus/types.h"
#include "essmart/pipeline/pipeline.h"

namespace essmart::service {

// Word-level Levenshtein distance (substitutions + insertions + deletions)
// between whitespace-separated tokens.
std::size_t word_diff(std::string_view before, std::string_view after);
std::size_t word_diff(const std::vector<std::string>& before,
                      const std::vector<std::string>& after);

enum class Role { kCrmExpert, kProjectManager };
enum class Mode { kManual, kAssisted };
enum class EditField { kSummarySentences, kTitle, kContent, kPriority, kAssignee, kEscalate };
enum class RequestState { kPending, kPmQueue, kNotEscalated, kTicketed };

std::string_view to_string(Role role);
std::string_view to_string(Mode mode);
std::string_view to_string(EditField field);
std::string_view to_string(RequestState state);
std::optional<Role> role_from_string(std::string_view name);
std::optional<Mode> mode_from_string(std::string_view name);
std::optional<EditField> edit_field_from_string(std::string_view name);
std::optional<RequestState> request_state_from_string(std::string_view name);

// Milliseconds since the Unix epoch.
using Millis = std::int64_t;
using ClockFn = std::function<Millis()>;
Millis system_clock_ms();

struct EditRecord {
  std::string session_id;
  EditField field = EditField::kContent;
  nlohmann::json before;
  nlohmann::json after;
  std::size_t changed_word_count = 0;
  std::size_t changed_sentence_count = 0;  // summary_sentences only

  nlohmann::json to_json() const;
};

// Word and sentence counts of one edit. Strings are word-diffed; sentence
// lists count sentences in one list but not the other and word-diff the
// joined text; other values are compared by their JSON text.
EditRecord make_edit(std::string session_id, EditField field, nlohmann::json before,
                     nlohmann::json after);

struct TriageSession {
  std::string session_id;
  std::string user;
  Role role = Role::kCrmExpert;
  std::string request_id;
  Mode mode = Mode::kAssisted;
  Millis started_at = 0;
  std::optional<Millis> first_interaction_at;
  std::optional<Millis> submitted_at;
  std::int64_t client_active_ms = 0;
  nlohmann::json decisions;
  std::vector<EditRecord> edits;

  bool open() const { return !submitted_at; }
  std::optional<Millis> duration_ms() const;
  nlohmann::json to_json() const;
};

struct RequestEntry {
  std::string request_id;
  std::string subject;
  RequestState state = RequestState::kPending;
  Millis received_at = 0;
  std::optional<Millis> escalation_decided_at;
  std::optional<Millis> ticketed_at;
  std::optional<corpus::DevelopmentTicket> final_ticket;
};

struct DurationStats {
  std::size_t count = 0;
  double mean_ms = 0.0;
  double median_ms = 0.0;
  nlohmann::json to_json() const;
};

DurationStats duration_stats(std::vector<double> values);

struct TimingAnalytics {
  // Keyed by mode name. Escalation_time comes from CRM sessions and
  // Decision_time from project-manager sessions.
  std::map<std::string, DurationStats> escalation_time;
  std::map<std::string, DurationStats> decision_time;
  std::map<std::string, DurationStats> escalation_time_from_first_interaction;
  std::map<std::string, DurationStats> decision_time_from_first_interaction;
  // manual mean minus assisted mean, when both modes have sessions
  std::optional<double> escalation_saving_ms;
  std::optional<double> decision_saving_ms;
  std::map<std::string, std::pair<std::size_t, double>> per_user;  // sessions, total ms
  // Mean over ticketed requests of (escalation decision - receipt) /
  // (ticket finalized - receipt).
  std::optional<double> escalation_share;
  std::size_t cycles = 0;

  nlohmann::json to_json() const;
};

struct EditAnalytics {
  // Assisted sessions only; manual sessions have no suggestion to edit.
  std::map<std::string, std::size_t> changed_words;      // PM sessions, bucketed
  std::map<std::string, std::size_t> changed_sentences;  // CRM sessions, bucketed
  std::size_t pm_sessions = 0;
  std::size_t crm_sessions = 0;
  double mean_changed_words = 0.0;
  double unchanged_share = 0.0;     // PM sessions with no changed word
  double over_ten_share = 0.0;      // PM sessions with more than 10

  nlohmann::json to_json() const;
};

// "0", "1-2", "3-5", "6-10", ">10".
std::string count_bucket(std::size_t count);

struct Event {
  std::string type;  // request_received, session_opened, session_interaction, session_submitted
  Millis at = 0;
  nlohmann::json data;

  nlohmann::json to_json() const;
  static Event from_json(const nlohmann::json& j);
};

struct ServiceOptions {
  std::optional<std::filesystem::path> event_log;  // append-only JSONL; replayed on start
  ClockFn clock = system_clock_ms;
};

struct HttpResponse {
  int status = 200;
  nlohmann::json body;
};

// Queues, sessions and analytics of the triage workflow. Every state change
// is an event: it is appended to the log and then applied, so replaying the
// log rebuilds the same state. All public members are serialized by one
// mutex.
class TriageService {
 public:
  TriageService(std::vector<corpus::UserRequest> requests,
                std::shared_ptr<const pipeline::PipelineBundle> bundle,
                ServiceOptions options = {});

  // Enqueues a request not seen before; known ids are left untouched.
  void add_request(corpus::UserRequest request);

  std::vector<RequestEntry> queue(RequestState state) const;
  std::optional<RequestEntry> request_entry(const std::string& id) const;

  HttpResponse open_session(const nlohmann::json& body, const std::string& header_user);
  HttpResponse interact(const std::string& session_id);
  HttpResponse submit(const std::string& session_id, const nlohmann::json& body);
  HttpResponse suggestion(const std::string& request_id,
                          const std::optional<std::string>& session_id);

  std::optional<TriageSession> session(const std::string& id) const;
  std::vector<TriageSession> sessions() const;
  std::vector<Event> events() const;

  TimingAnalytics timing_analytics() const;
  EditAnalytics edit_analytics() const;

  // Routes a request of the HTTP API: method, path, query string
  // parameters, JSON body text and the X-User header.
  HttpResponse handle(const std::string& method, const std::string& path,
                      const std::map<std::string, std::string>& query,
                      const std::string& body, const std::string& header_user);

  // Analytics recomputed from a raw event list alone.
  static TimingAnalytics timing_from_events(const std::vector<Event>& events);
  static EditAnalytics edits_from_events(const std::vector<Event>& events);
  static std::vector<Event> read_event_log(const std::filesystem::path& path);

 private:
  struct State {
    std::map<std::string, RequestEntry> requests;
    std::vector<std::string> order;
    std::map<std::string, TriageSession> sessions;
    std::vector<std::string> session_order;
  };

  void record(Event event);
  static void apply(State& state, const Event& event);
  static TimingAnalytics timing_of(const State& state);
  static EditAnalytics edits_of(const State& state);
  const pipeline::TriageSuggestion& cached_suggestion(const corpus::UserRequest& request);

  mutable std::mutex mutex_;
  std::map<std::string, corpus::UserRequest> corpus_;
  std::shared_ptr<const pipeline::PipelineBundle> bundle_;
  ServiceOptions options_;
  State state_;
  std::vector<Event> events_;
  std::map<std::string, pipeline::TriageSuggestion> suggestions_;
  std::uint64_t next_session_ = 1;
};

struct ServiceConfig {
  std::string host = "127.0.0.1";
  int port = 8080;
  std::optional<std::filesystem::path> bundle;
  std::optional<std::filesystem::path> corpus;
  std::optional<std::filesystem::path> event_log;

  // Reads a JSON config file (all keys optional).
  static ServiceConfig from_file(const std::filesystem::path& path);
  // ESSMART_PORT and ESSMART_BUNDLE override port and bundle path.
  void apply_env();
};

}  // namespace essmart::service

#endif  // ESSMART_SERVICE_SERVICE_H_
