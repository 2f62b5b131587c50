#include "essmart/corpus/io.h"

#include <cstdio>
#include <set>
#include <unordered_set>

#include "essmart/common/error.h"
#include "essmart/common/io.h"

namespace essmart::corpus {
namespace {

using nlohmann::json;

[[noreturn]] void malformed(const std::string& reason) {
  throw Error(ErrorCode::kMalformedRecord, reason);
}

std::string optional_string(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return {};
  if (!it->is_string()) malformed(std::string("field '") + key + "' must be a string");
  return it->get<std::string>();
}

std::optional<Timestamp> optional_time(const json& j, const char* key) {
  auto it = j.find(key);
  if (it == j.end() || it->is_null()) return std::nullopt;
  if (it->is_number_integer()) return Timestamp(std::chrono::seconds(it->get<long long>()));
  if (!it->is_string()) malformed(std::string("field '") + key + "' must be a timestamp");
  try {
    return parse_timestamp(it->get<std::string>());
  } catch (const Error& e) {
    malformed(std::string("field '") + key + "': " + e.what());
  }
}

std::vector<text::SentenceOrigin> parse_origins(const json& j) {
  if (!j.is_array()) malformed("gold_summary must be an array of [utterance, sentence]");
  std::vector<text::SentenceOrigin> out;
  for (const auto& pair : j) {
    if (!pair.is_array() || pair.size() != 2 || !pair[0].is_number_integer() ||
        !pair[1].is_number_integer()) {
      malformed("gold_summary entries must be [utterance, sentence] integer pairs");
    }
    out.push_back({pair[0].get<int>(), pair[1].get<int>()});
  }
  return out;
}

void validate(const UserRequest& r) {
  if (r.conversation.empty()) malformed("conversation must be non-empty");
  for (std::size_t i = 0; i < r.conversation.size(); ++i) {
    if (trim(r.conversation[i].text).empty()) {
      malformed("utterance " + std::to_string(i) + " has empty text");
    }
    if (i > 0 && r.conversation[i].index <= r.conversation[i - 1].index) {
      malformed("utterance indices must be strictly increasing");
    }
  }
  if (r.time_open && r.time_escalated && *r.time_escalated < *r.time_open) {
    malformed("time_escalated precedes time_open");
  }
  if (r.gold_summary) {
    if (r.gold_summary->empty()) malformed("gold_summary must be non-empty");
    auto sentences = conversation_sentences(r);
    std::set<text::SentenceOrigin> known;
    for (const auto& s : sentences) known.insert(s.origin);
    for (const auto& o : *r.gold_summary) {
      if (known.count(o) == 0) {
        malformed("gold_summary index [" + std::to_string(o.utterance) + ", " +
                  std::to_string(o.sentence) + "] does not resolve to a sentence");
      }
    }
  }
  if (r.ticket && word_count(r.ticket->title) > kMaxTitleWords) {
    malformed("ticket title exceeds " + std::to_string(kMaxTitleWords) + " words");
  }
}

}  // namespace

std::string format_timestamp(Timestamp t) {
  auto days = std::chrono::floor<std::chrono::days>(t);
  std::chrono::year_month_day ymd{days};
  std::chrono::hh_mm_ss hms{t - days};
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%04d-%02u-%02uT%02lld:%02lld:%02lldZ",
                static_cast<int>(ymd.year()), static_cast<unsigned>(ymd.month()),
                static_cast<unsigned>(ymd.day()),
                static_cast<long long>(hms.hours().count()),
                static_cast<long long>(hms.minutes().count()),
                static_cast<long long>(hms.seconds().count()));
  return buf;
}

Timestamp parse_timestamp(std::string_view text) {
  int y = 0;
  unsigned mo = 0, d = 0, h = 0, mi = 0, s = 0;
  char tail[8] = {0};
  std::string copy(text);
  int n = std::sscanf(copy.c_str(), "%4d-%2u-%2uT%2u:%2u:%2u%7s", &y, &mo, &d, &h,
                      &mi, &s, tail);
  if (n < 6 || (n == 7 && std::string(tail) != "Z" && std::string(tail) != "+00:00")) {
    throw Error(ErrorCode::kInvalidArgument,
                "expected UTC timestamp YYYY-MM-DDTHH:MM:SSZ, got '" + copy + "'");
  }
  std::chrono::year_month_day ymd{std::chrono::year(y), std::chrono::month(mo),
                                  std::chrono::day(d)};
  if (!ymd.ok() || h > 23 || mi > 59 || s > 60) {
    throw Error(ErrorCode::kInvalidArgument, "invalid timestamp '" + copy + "'");
  }
  return std::chrono::sys_days(ymd) + std::chrono::hours(h) +
         std::chrono::minutes(mi) + std::chrono::seconds(s);
}

DevelopmentTicket ticket_from_json(const json& j, const std::string& request_id) {
  if (!j.is_object()) malformed("ticket must be an object");
  DevelopmentTicket t;
  t.request_id = request_id;
  t.title = optional_string(j, "title");
  t.content = optional_string(j, "content");
  std::string priority = optional_string(j, "priority");
  if (priority.empty()) priority = "Major";
  auto p = try_priority_from_string(priority);
  if (!p) malformed("ticket priority '" + priority + "' is not a valid priority");
  t.priority = *p;
  t.assignee = optional_string(j, "assignee");
  std::string source = optional_string(j, "source");
  t.source = source == "generated" ? TicketSource::kGenerated : TicketSource::kHuman;
  return t;
}

UserRequest request_from_json(const json& j) {
  if (!j.is_object()) malformed("record must be a JSON object");
  UserRequest r;
  auto id = j.find("id");
  if (id == j.end() || !id->is_string() || id->get<std::string>().empty()) {
    malformed("missing required string field 'id'");
  }
  r.id = id->get<std::string>();
  auto conv = j.find("conversation");
  if (conv == j.end() || !conv->is_array()) {
    malformed("missing required array field 'conversation'");
  }
  int position = 0;
  for (const auto& u : *conv) {
    if (!u.is_object()) malformed("conversation entries must be objects");
    Utterance utt;
    try {
      utt.speaker_role = speaker_role_from_string(optional_string(u, "speaker_role"));
    } catch (const Error& e) {
      malformed(e.what());
    }
    auto text = u.find("text");
    if (text == u.end() || !text->is_string()) malformed("utterance missing 'text'");
    utt.text = text->get<std::string>();
    auto index = u.find("index");
    utt.index = (index != u.end() && index->is_number_integer()) ? index->get<int>()
                                                                  : position;
    ++position;
    r.conversation.push_back(std::move(utt));
  }
  auto subject = j.find("subject");
  if (subject == j.end() || !subject->is_string()) {
    malformed("missing required string field 'subject'");
  }
  r.subject = subject->get<std::string>();
  r.requester = optional_string(j, "requester");
  r.ticket_type = optional_string(j, "ticket_type");
  if (auto tags = j.find("tags"); tags != j.end() && !tags->is_null()) {
    if (!tags->is_array()) malformed("tags must be an array of strings");
    for (const auto& t : *tags) {
      if (!t.is_string()) malformed("tags must be an array of strings");
      r.tags.insert(t.get<std::string>());
    }
  }
  r.via = optional_string(j, "via");
  r.severity = optional_string(j, "severity");
  if (auto a = j.find("assignee"); a != j.end() && !a->is_null()) {
    r.assignee = optional_string(j, "assignee");
  }
  r.time_open = optional_time(j, "time_open");
  r.time_escalated = optional_time(j, "time_escalated");
  if (auto t = j.find("time_to_assign"); t != j.end() && !t->is_null()) {
    if (!t->is_number()) malformed("time_to_assign must be a number of seconds");
    r.time_to_assign = t->get<long long>();
  }
  r.brand_name = optional_string(j, "brand_name");
  r.organization = optional_string(j, "organization");
  if (auto e = j.find("escalated"); e != j.end() && !e->is_null()) {
    if (!e->is_boolean()) malformed("escalated must be a boolean");
    r.escalated = e->get<bool>();
  }
  if (auto g = j.find("gold_summary"); g != j.end() && !g->is_null()) {
    r.gold_summary = parse_origins(*g);
  }
  if (auto t = j.find("ticket"); t != j.end() && !t->is_null()) {
    r.ticket = ticket_from_json(*t, r.id);
  }
  validate(r);
  return r;
}

json to_json(const DevelopmentTicket& t) {
  return json{{"title", t.title},
              {"content", t.content},
              {"priority", to_string(t.priority)},
              {"assignee", t.assignee},
              {"source", t.source == TicketSource::kHuman ? "human" : "generated"}};
}

json to_json(const UserRequest& r) {
  json j;
  j["id"] = r.id;
  json conv = json::array();
  for (const auto& u : r.conversation) {
    conv.push_back({{"speaker_role", to_string(u.speaker_role)},
                    {"text", u.text},
                    {"index", u.index}});
  }
  j["conversation"] = conv;
  j["requester"] = r.requester;
  j["ticket_type"] = r.ticket_type;
  j["tags"] = std::vector<std::string>(r.tags.begin(), r.tags.end());
  j["via"] = r.via;
  j["severity"] = r.severity;
  if (r.assignee) j["assignee"] = *r.assignee;
  if (r.time_open) j["time_open"] = format_timestamp(*r.time_open);
  if (r.time_escalated) j["time_escalated"] = format_timestamp(*r.time_escalated);
  if (r.time_to_assign) j["time_to_assign"] = *r.time_to_assign;
  j["subject"] = r.subject;
  j["brand_name"] = r.brand_name;
  j["organization"] = r.organization;
  if (r.escalated) j["escalated"] = *r.escalated;
  if (r.gold_summary) {
    json g = json::array();
    for (const auto& o : *r.gold_summary) g.push_back({o.utterance, o.sentence});
    j["gold_summary"] = g;
  }
  if (r.ticket) j["ticket"] = to_json(*r.ticket);
  return j;
}

std::vector<UserRequest> parse_requests(std::string_view contents) {
  std::vector<UserRequest> out;
  std::unordered_set<std::string> ids;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < contents.size()) {
    std::size_t end = contents.find('\n', pos);
    if (end == std::string_view::npos) end = contents.size();
    std::string_view line = contents.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (trim(line).empty()) continue;
    UserRequest r;
    try {
      r = request_from_json(json::parse(line));
    } catch (const json::exception& e) {
      throw Error(ErrorCode::kMalformedRecord,
                  "line " + std::to_string(line_no) + ": " + e.what());
    } catch (const Error& e) {
      throw Error(ErrorCode::kMalformedRecord,
                  "line " + std::to_string(line_no) + ": " + e.what());
    }
    if (!ids.insert(r.id).second) throw Error(ErrorCode::kDuplicateId, r.id);
    out.push_back(std::move(r));
  }
  return out;
}

std::vector<UserRequest> ingest_requests(const std::filesystem::path& path, Format) {
  return parse_requests(read_file(path));
}

std::string serialize_requests(const std::vector<UserRequest>& requests) {
  std::string out;
  for (const auto& r : requests) {
    out += to_json(r).dump();
    out.push_back('\n');
  }
  return out;
}

void write_requests(const std::filesystem::path& path,
                    const std::vector<UserRequest>& requests) {
  write_file(path, serialize_requests(requests));
}

std::vector<SourceDocument> parse_documents(std::string_view contents) {
  std::vector<SourceDocument> out;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos < contents.size()) {
    std::size_t end = contents.find('\n', pos);
    if (end == std::string_view::npos) end = contents.size();
    std::string_view line = contents.substr(pos, end - pos);
    pos = end + 1;
    ++line_no;
    if (trim(line).empty()) continue;
    try {
      json j = json::parse(line);
      SourceDocument doc;
      doc.id = j.value("id", "doc" + std::to_string(line_no));
      doc.kind = document_kind_from_string(j.at("kind").get<std::string>());
      doc.text = j.at("text").get<std::string>();
      out.push_back(std::move(doc));
    } catch (const std::exception& e) {
      throw Error(ErrorCode::kMalformedRecord,
                  "line " + std::to_string(line_no) + ": " + e.what());
    }
  }
  return out;
}

std::vector<SourceDocument> ingest_documents(const std::filesystem::path& path) {
  return parse_documents(read_file(path));
}

std::vector<std::pair<std::string, std::string>> parse_personnel(
    std::string_view contents) {
  std::vector<std::pair<std::string, std::string>> out;
  std::size_t line_no = 0;
  for (const auto& line : parse_list(contents)) {
    ++line_no;
    auto comma = line.find(',');
    if (comma == std::string::npos) {
      throw Error(ErrorCode::kMalformedRecord,
                  "personnel row " + std::to_string(line_no) + " needs 'name,role'");
    }
    std::string name(trim(std::string_view(line).substr(0, comma)));
    std::string role(trim(std::string_view(line).substr(comma + 1)));
    if (line_no == 1 && to_lower(name) == "name" && to_lower(role) == "role") continue;
    if (name.empty() || role.empty()) {
      throw Error(ErrorCode::kMalformedRecord,
                  "personnel row " + std::to_string(line_no) + " has an empty field");
    }
    out.emplace_back(std::move(name), std::move(role));
  }
  return out;
}

std::vector<std::pair<std::string, std::string>> ingest_personnel(
    const std::filesystem::path& path) {
  return parse_personnel(read_file(path));
}

}  // namespace essmart::corpus
