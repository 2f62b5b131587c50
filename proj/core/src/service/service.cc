#include "essmart/service/service.h"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <fstream>
#include <set>
#include <sstream>

#include "essmart/common/error.h"
#include "essmart/common/io.h"
#include "essmart/corpus/io.h"

namespace essmart::service {
namespace {

std::vector<std::string> split_words(std::string_view s) {
  std::vector<std::string> out;
  std::istringstream in{std::string(s)};
  std::string w;
  while (in >> w) out.push_back(w);
  return out;
}

HttpResponse error_response(int status, std::string_view code, const std::string& message) {
  return {status, {{"error", {{"code", code}, {"message", message}}}}};
}

HttpResponse not_found(const std::string& what) {
  return error_response(404, "not_found", what);
}

HttpResponse conflict(const std::string& what) { return error_response(409, "conflict", what); }

HttpResponse invalid(const std::string& what) {
  return error_response(422, "invalid_payload", what);
}

nlohmann::json raw_request_view(const corpus::UserRequest& r) {
  nlohmann::json conversation = nlohmann::json::array();
  for (const auto& u : r.conversation) {
    conversation.push_back({{"speaker", std::string(to_string(u.speaker_role))}, {"text", u.text}});
  }
  return {{"request_id", r.id},
          {"subject", r.subject},
          {"requester", r.requester},
          {"brand_name", r.brand_name},
          {"organization", r.organization},
          {"conversation", conversation}};
}

nlohmann::json entry_json(const RequestEntry& e) {
  nlohmann::json j{{"request_id", e.request_id},
                   {"subject", e.subject},
                   {"state", std::string(to_string(e.state))},
                   {"received_at", e.received_at}};
  if (e.escalation_decided_at) j["escalation_decided_at"] = *e.escalation_decided_at;
  if (e.ticketed_at) j["ticketed_at"] = *e.ticketed_at;
  if (e.final_ticket) j["ticket"] = corpus::to_json(*e.final_ticket);
  return j;
}

template <typename E, std::size_t N>
std::optional<E> lookup(const std::pair<E, std::string_view> (&table)[N], std::string_view name) {
  for (const auto& [value, text] : table) {
    if (text == name) return value;
  }
  return std::nullopt;
}

template <typename E, std::size_t N>
std::string_view name_of(const std::pair<E, std::string_view> (&table)[N], E value) {
  for (const auto& [v, text] : table) {
    if (v == value) return text;
  }
  return "";
}

constexpr std::pair<Role, std::string_view> kRoles[] = {
    {Role::kCrmExpert, "crm_expert"}, {Role::kProjectManager, "project_manager"}};
constexpr std::pair<Mode, std::string_view> kModes[] = {{Mode::kManual, "manual"},
                                                        {Mode::kAssisted, "assisted"}};
constexpr std::pair<EditField, std::string_view> kFields[] = {
    {EditField::kSummarySentences, "summary_sentences"},
    {EditField::kTitle, "title"},
    {EditField::kContent, "content"},
    {EditField::kPriority, "priority"},
    {EditField::kAssignee, "assignee"},
    {EditField::kEscalate, "escalate"}};
constexpr std::pair<RequestState, std::string_view> kStates[] = {
    {RequestState::kPending, "pending"},
    {RequestState::kPmQueue, "pm_queue"},
    {RequestState::kNotEscalated, "not_escalated"},
    {RequestState::kTicketed, "ticketed"}};

bool field_for_role(EditField f, Role role) {
  const bool crm = f == EditField::kSummarySentences || f == EditField::kEscalate;
  return crm == (role == Role::kCrmExpert);
}

std::string value_text(const nlohmann::json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_null()) return "";
  return v.dump();
}

}  // namespace

std::size_t word_diff(const std::vector<std::string>& a, const std::vector<std::string>& b) {
  std::vector<std::size_t> prev(b.size() + 1), cur(b.size() + 1);
  for (std::size_t j = 0; j <= b.size(); ++j) prev[j] = j;
  for (std::size_t i = 1; i <= a.size(); ++i) {
    cur[0] = i;
    for (std::size_t j = 1; j <= b.size(); ++j) {
      cur[j] = std::min({prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (a[i - 1] == b[j - 1] ? 0 : 1)});
    }
    std::swap(prev, cur);
  }
  return prev[b.size()];
}

std::size_t word_diff(std::string_view before, std::string_view after) {
  return word_diff(split_words(before), split_words(after));
}

std::string_view to_string(Role role) { return name_of(kRoles, role); }
std::string_view to_string(Mode mode) { return name_of(kModes, mode); }
std::string_view to_string(EditField field) { return name_of(kFields, field); }
std::string_view to_string(RequestState state) { return name_of(kStates, state); }
std::optional<Role> role_from_string(std::string_view n) { return lookup(kRoles, n); }
std::optional<Mode> mode_from_string(std::string_view n) { return lookup(kModes, n); }
std::optional<EditField> edit_field_from_string(std::string_view n) { return lookup(kFields, n); }
std::optional<RequestState> request_state_from_string(std::string_view n) {
  return lookup(kStates, n);
}

Millis system_clock_ms() {
  return std::chrono::duration_cast<std::chrono::milliseconds>(
             std::chrono::system_clock::now().time_since_epoch())
      .count();
}

nlohmann::json EditRecord::to_json() const {
  return {{"session_id", session_id},
          {"field", std::string(to_string(field))},
          {"before", before},
          {"after", after},
          {"changed_word_count", changed_word_count},
          {"changed_sentence_count", changed_sentence_count}};
}

EditRecord make_edit(std::string session_id, EditField field, nlohmann::json before,
                     nlohmann::json after) {
  EditRecord e{std::move(session_id), field, std::move(before), std::move(after), 0, 0};
  if (field == EditField::kSummarySentences && e.before.is_array() && e.after.is_array()) {
    std::vector<std::string> a, b;
    for (const auto& v : e.before) a.push_back(value_text(v));
    for (const auto& v : e.after) b.push_back(value_text(v));
    const std::multiset<std::string> sa(a.begin(), a.end()), sb(b.begin(), b.end());
    std::vector<std::string> only;
    std::set_symmetric_difference(sa.begin(), sa.end(), sb.begin(), sb.end(),
                                  std::back_inserter(only));
    e.changed_sentence_count = only.size();
    std::vector<std::string> wa, wb;
    for (const auto& s : a) {
      for (auto& w : split_words(s)) wa.push_back(std::move(w));
    }
    for (const auto& s : b) {
      for (auto& w : split_words(s)) wb.push_back(std::move(w));
    }
    e.changed_word_count = word_diff(wa, wb);
  } else {
    e.changed_word_count = word_diff(value_text(e.before), value_text(e.after));
  }
  return e;
}

std::optional<Millis> TriageSession::duration_ms() const {
  if (!submitted_at) return std::nullopt;
  return *submitted_at - started_at;
}

nlohmann::json TriageSession::to_json() const {
  nlohmann::json edits_json = nlohmann::json::array();
  for (const auto& e : edits) edits_json.push_back(e.to_json());
  nlohmann::json j{{"session_id", session_id},
                   {"user", user},
                   {"role", std::string(to_string(role))},
                   {"request_id", request_id},
                   {"mode", std::string(to_string(mode))},
                   {"started_at", started_at},
                   {"client_active_ms", client_active_ms},
                   {"decisions", decisions},
                   {"edits", edits_json},
                   {"open", open()}};
  j["first_interaction_at"] =
      first_interaction_at ? nlohmann::json(*first_interaction_at) : nlohmann::json(nullptr);
  j["submitted_at"] = submitted_at ? nlohmann::json(*submitted_at) : nlohmann::json(nullptr);
  return j;
}

DurationStats duration_stats(std::vector<double> values) {
  DurationStats s;
  s.count = values.size();
  if (values.empty()) return s;
  double sum = 0.0;
  for (double v : values) sum += v;
  s.mean_ms = sum / static_cast<double>(values.size());
  std::sort(values.begin(), values.end());
  const std::size_t mid = values.size() / 2;
  s.median_ms = values.size() % 2 ? values[mid] : (values[mid - 1] + values[mid]) / 2.0;
  return s;
}

nlohmann::json DurationStats::to_json() const {
  return {{"count", count}, {"mean_ms", mean_ms}, {"median_ms", median_ms}};
}

nlohmann::json TimingAnalytics::to_json() const {
  auto group = [](const std::map<std::string, DurationStats>& m) {
    nlohmann::json j = nlohmann::json::object();
    for (const auto& [mode, stats] : m) j[mode] = stats.to_json();
    return j;
  };
  auto opt = [](const std::optional<double>& v) {
    return v ? nlohmann::json(*v) : nlohmann::json(nullptr);
  };
  nlohmann::json users = nlohmann::json::object();
  for (const auto& [user, totals] : per_user) {
    users[user] = {{"sessions", totals.first}, {"total_ms", totals.second}};
  }
  return {{"escalation_time", group(escalation_time)},
          {"decision_time", group(decision_time)},
          {"escalation_time_from_first_interaction", group(escalation_time_from_first_interaction)},
          {"decision_time_from_first_interaction", group(decision_time_from_first_interaction)},
          {"escalation_saving_ms", opt(escalation_saving_ms)},
          {"decision_saving_ms", opt(decision_saving_ms)},
          {"per_user", users},
          {"escalation_share", opt(escalation_share)},
          {"cycles", cycles}};
}

std::string count_bucket(std::size_t count) {
  if (count == 0) return "0";
  if (count <= 2) return "1-2";
  if (count <= 5) return "3-5";
  if (count <= 10) return "6-10";
  return ">10";
}

nlohmann::json EditAnalytics::to_json() const {
  return {{"changed_words", changed_words},
          {"changed_sentences", changed_sentences},
          {"pm_sessions", pm_sessions},
          {"crm_sessions", crm_sessions},
          {"mean_changed_words", mean_changed_words},
          {"unchanged_share", unchanged_share},
          {"over_ten_share", over_ten_share}};
}

nlohmann::json Event::to_json() const { return {{"type", type}, {"at", at}, {"data", data}}; }

Event Event::from_json(const nlohmann::json& j) {
  return {j.at("type").get<std::string>(), j.at("at").get<Millis>(), j.at("data")};
}

TriageService::TriageService(std::vector<corpus::UserRequest> requests,
                             std::shared_ptr<const pipeline::PipelineBundle> bundle,
                             ServiceOptions options)
    : bundle_(std::move(bundle)), options_(std::move(options)) {
  if (!options_.clock) options_.clock = system_clock_ms;
  if (options_.event_log && std::filesystem::exists(*options_.event_log)) {
    for (auto& e : read_event_log(*options_.event_log)) {
      apply(state_, e);
      events_.push_back(std::move(e));
    }
    for (const auto& id : state_.session_order) {
      const auto digits = id.substr(1);
      if (!digits.empty() && std::all_of(digits.begin(), digits.end(), ::isdigit)) {
        next_session_ = std::max<std::uint64_t>(next_session_, std::stoull(digits) + 1);
      }
    }
  }
  for (auto& r : requests) add_request(std::move(r));
}

std::vector<Event> TriageService::read_event_log(const std::filesystem::path& path) {
  std::vector<Event> out;
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::kIo, "cannot read event log " + path.string());
  std::string line;
  std::size_t number = 0;
  while (std::getline(in, line)) {
    ++number;
    if (trim(line).empty()) continue;
    try {
      out.push_back(Event::from_json(nlohmann::json::parse(line)));
    } catch (const nlohmann::json::exception& e) {
      throw Error(ErrorCode::kMalformedRecord,
                  "event log line " + std::to_string(number) + ": " + e.what());
    }
  }
  return out;
}

void TriageService::record(Event event) {
  if (options_.event_log) {
    std::ofstream out(*options_.event_log, std::ios::app);
    if (!out) throw Error(ErrorCode::kIo, "cannot append to event log");
    out << event.to_json().dump() << '\n';
  }
  apply(state_, event);
  events_.push_back(std::move(event));
}

void TriageService::apply(State& state, const Event& e) {
  const auto& d = e.data;
  if (e.type == "request_received") {
    const auto id = d.at("request_id").get<std::string>();
    if (state.requests.contains(id)) return;
    state.requests[id] = {id, d.value("subject", ""), RequestState::kPending, e.at, {}, {}, {}};
    state.order.push_back(id);
  } else if (e.type == "session_opened") {
    TriageSession s;
    s.session_id = d.at("session_id").get<std::string>();
    s.user = d.at("user").get<std::string>();
    s.role = role_from_string(d.at("role").get<std::string>()).value();
    s.request_id = d.at("request_id").get<std::string>();
    s.mode = mode_from_string(d.at("mode").get<std::string>()).value();
    s.started_at = e.at;
    state.session_order.push_back(s.session_id);
    state.sessions[s.session_id] = std::move(s);
  } else if (e.type == "session_interaction") {
    auto& s = state.sessions.at(d.at("session_id").get<std::string>());
    if (!s.first_interaction_at) s.first_interaction_at = e.at;
  } else if (e.type == "session_submitted") {
    auto& s = state.sessions.at(d.at("session_id").get<std::string>());
    s.submitted_at = e.at;
    s.client_active_ms = d.value("client_active_ms", std::int64_t{0});
    s.decisions = d.at("decisions");
    s.edits.clear();
    for (const auto& ej : d.at("edits")) {
      EditRecord r;
      r.session_id = s.session_id;
      r.field = edit_field_from_string(ej.at("field").get<std::string>()).value();
      r.before = ej.at("before");
      r.after = ej.at("after");
      r.changed_word_count = ej.at("changed_word_count").get<std::size_t>();
      r.changed_sentence_count = ej.value("changed_sentence_count", std::size_t{0});
      s.edits.push_back(std::move(r));
    }
    auto& entry = state.requests.at(s.request_id);
    if (s.role == Role::kCrmExpert) {
      entry.escalation_decided_at = e.at;
      entry.state = s.decisions.at("escalate").get<bool>() ? RequestState::kPmQueue
                                                           : RequestState::kNotEscalated;
    } else {
      entry.ticketed_at = e.at;
      entry.state = RequestState::kTicketed;
      corpus::DevelopmentTicket t;
      t.request_id = entry.request_id;
      t.title = s.decisions.at("title").get<std::string>();
      t.content = s.decisions.at("content").get<std::string>();
      t.priority = corpus::priority_from_string(s.decisions.at("priority").get<std::string>());
      t.assignee = s.decisions.value("assignee", "");
      t.source = corpus::TicketSource::kHuman;
      entry.final_ticket = std::move(t);
    }
  } else {
    throw Error(ErrorCode::kMalformedRecord, "unknown event type " + e.type);
  }
}

void TriageService::add_request(corpus::UserRequest request) {
  std::lock_guard lock(mutex_);
  const std::string id = request.id;
  if (!state_.requests.contains(id)) {
    record({"request_received", options_.clock(), {{"request_id", id}, {"subject", request.subject}}});
  }
  corpus_[id] = std::move(request);
}

std::vector<RequestEntry> TriageService::queue(RequestState state) const {
  std::lock_guard lock(mutex_);
  std::vector<RequestEntry> out;
  for (const auto& id : state_.order) {
    const auto& e = state_.requests.at(id);
    if (e.state == state) out.push_back(e);
  }
  return out;
}

std::optional<RequestEntry> TriageService::request_entry(const std::string& id) const {
  std::lock_guard lock(mutex_);
  const auto it = state_.requests.find(id);
  if (it == state_.requests.end()) return std::nullopt;
  return it->second;
}

HttpResponse TriageService::open_session(const nlohmann::json& body,
                                         const std::string& header_user) {
  std::lock_guard lock(mutex_);
  if (!body.is_object()) return invalid("body must be a JSON object");
  const auto role = body.contains("role") && body["role"].is_string()
                        ? role_from_string(body["role"].get<std::string>())
                        : std::nullopt;
  if (!role) return invalid("role must be crm_expert or project_manager");
  const auto mode = body.contains("mode") && body["mode"].is_string()
                        ? mode_from_string(body["mode"].get<std::string>())
                        : std::optional<Mode>(Mode::kAssisted);
  if (!mode) return invalid("mode must be manual or assisted");
  if (!body.contains("request_id") || !body["request_id"].is_string()) {
    return invalid("request_id must be a string");
  }
  std::string user = header_user;
  if (body.contains("user")) {
    if (!body["user"].is_string()) return invalid("user must be a string");
    user = body["user"].get<std::string>();
  }
  if (user.empty()) user = "anonymous";
  const auto request_id = body["request_id"].get<std::string>();
  const auto it = state_.requests.find(request_id);
  if (it == state_.requests.end()) return not_found("unknown request " + request_id);
  for (const auto& [id, s] : state_.sessions) {
    if (s.open() && s.user == user && s.request_id == request_id) {
      return conflict("user " + user + " already has open session " + id);
    }
  }
  const RequestState needed =
      *role == Role::kCrmExpert ? RequestState::kPending : RequestState::kPmQueue;
  if (it->second.state != needed) {
    return conflict("request " + request_id + " is " + std::string(to_string(it->second.state)));
  }
  const std::string session_id = "s" + std::to_string(next_session_++);
  record({"session_opened",
          options_.clock(),
          {{"session_id", session_id},
           {"user", user},
           {"role", std::string(to_string(*role))},
           {"request_id", request_id},
           {"mode", std::string(to_string(*mode))}}});
  return {201, state_.sessions.at(session_id).to_json()};
}

HttpResponse TriageService::interact(const std::string& session_id) {
  std::lock_guard lock(mutex_);
  const auto it = state_.sessions.find(session_id);
  if (it == state_.sessions.end()) return not_found("unknown session " + session_id);
  if (!it->second.open()) return conflict("session " + session_id + " is closed");
  if (!it->second.first_interaction_at) {
    record({"session_interaction", std::max(options_.clock(), it->second.started_at),
            {{"session_id", session_id}}});
  }
  return {200, it->second.to_json()};
}

HttpResponse TriageService::submit(const std::string& session_id, const nlohmann::json& body) {
  std::lock_guard lock(mutex_);
  const auto it = state_.sessions.find(session_id);
  if (it == state_.sessions.end()) return not_found("unknown session " + session_id);
  const TriageSession& s = it->second;
  if (!s.open()) return conflict("session " + session_id + " is already submitted");
  const RequestState needed =
      s.role == Role::kCrmExpert ? RequestState::kPending : RequestState::kPmQueue;
  if (state_.requests.at(s.request_id).state != needed) {
    return conflict("request " + s.request_id + " was decided in another session");
  }
  if (!body.is_object()) return invalid("body must be a JSON object");
  if (!body.contains("decisions") || !body["decisions"].is_object()) {
    return invalid("decisions must be an object");
  }
  const auto& decisions = body["decisions"];
  if (s.role == Role::kCrmExpert) {
    if (!decisions.contains("escalate") || !decisions["escalate"].is_boolean()) {
      return invalid("decisions.escalate must be a boolean");
    }
    if (decisions.contains("summary_sentences") && !decisions["summary_sentences"].is_array()) {
      return invalid("decisions.summary_sentences must be an array");
    }
  } else {
    for (const char* key : {"title", "content", "priority"}) {
      if (!decisions.contains(key) || !decisions[key].is_string()) {
        return invalid(std::string("decisions.") + key + " must be a string");
      }
    }
    if (decisions["title"].get<std::string>().empty()) return invalid("title must not be empty");
    if (!corpus::try_priority_from_string(decisions["priority"].get<std::string>())) {
      return invalid("unknown priority " + decisions["priority"].get<std::string>());
    }
    if (decisions.contains("assignee") && !decisions["assignee"].is_string()) {
      return invalid("decisions.assignee must be a string");
    }
  }
  std::int64_t active = 0;
  if (body.contains("client_active_ms")) {
    if (!body["client_active_ms"].is_number_integer() ||
        body["client_active_ms"].get<std::int64_t>() < 0) {
      return invalid("client_active_ms must be a nonnegative integer");
    }
    active = body["client_active_ms"].get<std::int64_t>();
  }
  nlohmann::json edits = nlohmann::json::array();
  if (body.contains("edits")) {
    if (!body["edits"].is_array()) return invalid("edits must be an array");
    for (const auto& ej : body["edits"]) {
      if (!ej.is_object() || !ej.contains("field") || !ej["field"].is_string() ||
          !ej.contains("before") || !ej.contains("after")) {
        return invalid("each edit needs field, before and after");
      }
      const auto field = edit_field_from_string(ej["field"].get<std::string>());
      if (!field) return invalid("unknown edit field " + ej["field"].get<std::string>());
      if (!field_for_role(*field, s.role)) {
        return invalid("field " + ej["field"].get<std::string>() + " is not editable by " +
                       std::string(to_string(s.role)));
      }
      edits.push_back(make_edit(session_id, *field, ej["before"], ej["after"]).to_json());
    }
  }
  record({"session_submitted",
          std::max(options_.clock(), s.started_at),
          {{"session_id", session_id},
           {"client_active_ms", active},
           {"decisions", decisions},
           {"edits", edits}}});
  nlohmann::json out = state_.sessions.at(session_id).to_json();
  out["request"] = entry_json(state_.requests.at(s.request_id));
  return {200, out};
}

const pipeline::TriageSuggestion& TriageService::cached_suggestion(
    const corpus::UserRequest& request) {
  auto it = suggestions_.find(request.id);
  if (it == suggestions_.end()) {
    it = suggestions_.emplace(request.id, pipeline::process_request(*bundle_, request)).first;
  }
  return it->second;
}

HttpResponse TriageService::suggestion(const std::string& request_id,
                                       const std::optional<std::string>& session_id) {
  std::lock_guard lock(mutex_);
  const auto r = corpus_.find(request_id);
  if (r == corpus_.end()) return not_found("unknown request " + request_id);
  Mode mode = Mode::kAssisted;
  if (session_id) {
    const auto s = state_.sessions.find(*session_id);
    if (s == state_.sessions.end()) return not_found("unknown session " + *session_id);
    if (s->second.request_id != request_id) {
      return invalid("session " + *session_id + " belongs to another request");
    }
    mode = s->second.mode;
  }
  nlohmann::json out = raw_request_view(r->second);
  out["mode"] = std::string(to_string(mode));
  if (mode == Mode::kAssisted) {
    if (!bundle_) return error_response(503, "no_bundle", "no pipeline bundle is loaded");
    out["suggestion"] = cached_suggestion(r->second).to_json();
  }
  return {200, out};
}

std::optional<TriageSession> TriageService::session(const std::string& id) const {
  std::lock_guard lock(mutex_);
  const auto it = state_.sessions.find(id);
  if (it == state_.sessions.end()) return std::nullopt;
  return it->second;
}

std::vector<TriageSession> TriageService::sessions() const {
  std::lock_guard lock(mutex_);
  std::vector<TriageSession> out;
  for (const auto& id : state_.session_order) out.push_back(state_.sessions.at(id));
  return out;
}

std::vector<Event> TriageService::events() const {
  std::lock_guard lock(mutex_);
  return events_;
}

TimingAnalytics TriageService::timing_of(const State& state) {
  TimingAnalytics a;
  std::map<std::string, std::vector<double>> esc, dec, esc_first, dec_first;
  for (const auto& id : state.session_order) {
    const auto& s = state.sessions.at(id);
    if (!s.submitted_at) continue;
    const auto mode = std::string(to_string(s.mode));
    const double d = static_cast<double>(*s.duration_ms());
    const bool crm = s.role == Role::kCrmExpert;
    (crm ? esc : dec)[mode].push_back(d);
    if (s.first_interaction_at) {
      (crm ? esc_first : dec_first)[mode].push_back(
          static_cast<double>(*s.submitted_at - *s.first_interaction_at));
    }
    auto& user = a.per_user[s.user];
    user.first += 1;
    user.second += d;
  }
  for (auto [in, out] : {std::pair{&esc, &a.escalation_time}, std::pair{&dec, &a.decision_time},
                         std::pair{&esc_first, &a.escalation_time_from_first_interaction},
                         std::pair{&dec_first, &a.decision_time_from_first_interaction}}) {
    for (auto& [mode, values] : *in) (*out)[mode] = duration_stats(std::move(values));
  }
  auto saving = [](const std::map<std::string, DurationStats>& m) -> std::optional<double> {
    if (!m.contains("manual") || !m.contains("assisted")) return std::nullopt;
    return m.at("manual").mean_ms - m.at("assisted").mean_ms;
  };
  a.escalation_saving_ms = saving(a.escalation_time);
  a.decision_saving_ms = saving(a.decision_time);

  double share_sum = 0.0;
  for (const auto& id : state.order) {
    const auto& e = state.requests.at(id);
    if (!e.escalation_decided_at || !e.ticketed_at || *e.ticketed_at <= e.received_at) continue;
    share_sum += static_cast<double>(*e.escalation_decided_at - e.received_at) /
                 static_cast<double>(*e.ticketed_at - e.received_at);
    ++a.cycles;
  }
  if (a.cycles > 0) a.escalation_share = share_sum / static_cast<double>(a.cycles);
  return a;
}

EditAnalytics TriageService::edits_of(const State& state) {
  EditAnalytics a;
  for (const char* b : {"0", "1-2", "3-5", "6-10", ">10"}) {
    a.changed_words[b] = 0;
    a.changed_sentences[b] = 0;
  }
  std::size_t total_words = 0, unchanged = 0, over_ten = 0;
  for (const auto& id : state.session_order) {
    const auto& s = state.sessions.at(id);
    if (!s.submitted_at || s.mode != Mode::kAssisted) continue;
    if (s.role == Role::kProjectManager) {
      std::size_t words = 0;
      for (const auto& e : s.edits) words += e.changed_word_count;
      ++a.changed_words[count_bucket(words)];
      ++a.pm_sessions;
      total_words += words;
      unchanged += words == 0;
      over_ten += words > 10;
    } else {
      std::size_t sentences = 0;
      for (const auto& e : s.edits) sentences += e.changed_sentence_count;
      ++a.changed_sentences[count_bucket(sentences)];
      ++a.crm_sessions;
    }
  }
  if (a.pm_sessions > 0) {
    const auto n = static_cast<double>(a.pm_sessions);
    a.mean_changed_words = static_cast<double>(total_words) / n;
    a.unchanged_share = static_cast<double>(unchanged) / n;
    a.over_ten_share = static_cast<double>(over_ten) / n;
  }
  return a;
}

TimingAnalytics TriageService::timing_analytics() const {
  std::lock_guard lock(mutex_);
  return timing_of(state_);
}

EditAnalytics TriageService::edit_analytics() const {
  std::lock_guard lock(mutex_);
  return edits_of(state_);
}

TimingAnalytics TriageService::timing_from_events(const std::vector<Event>& events) {
  State state;
  for (const auto& e : events) apply(state, e);
  return timing_of(state);
}

EditAnalytics TriageService::edits_from_events(const std::vector<Event>& events) {
  State state;
  for (const auto& e : events) apply(state, e);
  return edits_of(state);
}

HttpResponse TriageService::handle(const std::string& method, const std::string& path,
                                   const std::map<std::string, std::string>& query,
                                   const std::string& body, const std::string& header_user) {
  std::vector<std::string> parts;
  {
    std::string part;
    std::istringstream in(path);
    while (std::getline(in, part, '/')) {
      if (!part.empty()) parts.push_back(part);
    }
  }
  auto parse_body = [&]() -> std::optional<nlohmann::json> {
    if (trim(body).empty()) return nlohmann::json::object();
    auto j = nlohmann::json::parse(body, nullptr, false);
    if (j.is_discarded()) return std::nullopt;
    return j;
  };
  auto method_not_allowed = [] {
    return error_response(405, "method_not_allowed", "method not allowed");
  };

  try {
    if (parts.size() == 1 && parts[0] == "health") {
      if (method != "GET") return method_not_allowed();
      return {200, {{"status", "ok"}, {"bundle", bundle_ != nullptr}}};
    }
    if (!parts.empty() && parts[0] == "requests") {
      if (method != "GET") return method_not_allowed();
      if (parts.size() == 1) {
        const auto name = query.contains("state") ? query.at("state") : "pending";
        const auto state = request_state_from_string(name);
        if (!state) return invalid("unknown state " + name);
        nlohmann::json items = nlohmann::json::array();
        for (const auto& e : queue(*state)) items.push_back(entry_json(e));
        return {200, {{"state", name}, {"requests", items}}};
      }
      if (parts.size() == 2) {
        const auto e = request_entry(parts[1]);
        if (!e) return not_found("unknown request " + parts[1]);
        nlohmann::json out = entry_json(*e);
        std::lock_guard lock(mutex_);
        if (const auto r = corpus_.find(parts[1]); r != corpus_.end()) {
          out["conversation"] = raw_request_view(r->second)["conversation"];
        }
        return {200, out};
      }
      if (parts.size() == 3 && parts[2] == "suggestion") {
        std::optional<std::string> session_id;
        if (query.contains("session")) session_id = query.at("session");
        return suggestion(parts[1], session_id);
      }
    }
    if (!parts.empty() && parts[0] == "sessions") {
      if (parts.size() == 1) {
        if (method != "POST") return method_not_allowed();
        const auto j = parse_body();
        if (!j) return invalid("body is not JSON");
        return open_session(*j, header_user);
      }
      if (parts.size() == 2) {
        if (method != "GET") return method_not_allowed();
        const auto s = session(parts[1]);
        if (!s) return not_found("unknown session " + parts[1]);
        return {200, s->to_json()};
      }
      if (parts.size() == 3 && (parts[2] == "submit" || parts[2] == "interact")) {
        if (method != "POST") return method_not_allowed();
        if (parts[2] == "interact") return interact(parts[1]);
        const auto j = parse_body();
        if (!j) return invalid("body is not JSON");
        return submit(parts[1], *j);
      }
    }
    if (parts.size() == 2 && parts[0] == "analytics") {
      if (method != "GET") return method_not_allowed();
      if (parts[1] == "timing") return {200, timing_analytics().to_json()};
      if (parts[1] == "edits") return {200, edit_analytics().to_json()};
    }
    return not_found("no route for " + path);
  } catch (const Error& e) {
    return error_response(500, to_string(e.code()), e.what());
  }
}

ServiceConfig ServiceConfig::from_file(const std::filesystem::path& path) {
  ServiceConfig c;
  const auto j = nlohmann::json::parse(read_file(path), nullptr, false);
  if (j.is_discarded() || !j.is_object()) {
    throw Error(ErrorCode::kInvalidArgument, "service config is not a JSON object");
  }
  try {
    c.host = j.value("host", c.host);
    c.port = j.value("port", c.port);
    if (j.contains("bundle")) c.bundle = j.at("bundle").get<std::string>();
    if (j.contains("corpus")) c.corpus = j.at("corpus").get<std::string>();
    if (j.contains("event_log")) c.event_log = j.at("event_log").get<std::string>();
  } catch (const nlohmann::json::exception& e) {
    throw Error(ErrorCode::kInvalidArgument, std::string("service config: ") + e.what());
  }
  return c;
}

void ServiceConfig::apply_env() {
  if (const char* port_env = std::getenv("ESSMART_PORT"); port_env && *port_env) {
    char* end = nullptr;
    const long v = std::strtol(port_env, &end, 10);
    if (*end != '\0' || v < 0 || v > 65535) {
      throw Error(ErrorCode::kInvalidArgument, "ESSMART_PORT is not a port number");
    }
    port = static_cast<int>(v);
  }
  if (const char* bundle_env = std::getenv("ESSMART_BUNDLE"); bundle_env && *bundle_env) {
    bundle = bundle_env;
  }
}

}  // namespace essmart::service
