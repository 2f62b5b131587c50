#include "essmart/synthetic.h"

#include <algorithm>
#include <cstdio>
#include <string>
#include <vector>

#include "essmart/common/error.h"
#include "essmart/common/random.h"
#include "essmart/ticketgen/content.h"

namespace essmart::synthetic {
namespace {

struct Person {
  const char* name;
  const char* role;
};

constexpr Person kPersonnel[] = {
    {"Alice Martin", "doctor"},      {"Omar Haddad", "nurse"},
    {"Grace Liu", "pharmacist"},     {"Ivan Petrov", "receptionist"},
    {"Emma Stone", "administrator"}, {"Noah Brooks", "dentist"},
    {"Sofia Rossi", "doctor"},       {"Liam Walsh", "nurse"},
};

constexpr const char* kOrganizations[] = {"Northside Clinic", "Harbor Health", "Maple Dental",
                                          "Riverside Pharmacy"};

struct Brand {
  const char* name;
  const char* developer;
  corpus::Priority priority;
};

constexpr Brand kBrands[] = {{"EMR", "dev_alex", corpus::Priority::kCritical},
                             {"SecureMail", "dev_bea", corpus::Priority::kMajor},
                             {"Patient Portal", "dev_chen", corpus::Priority::kMinor}};

constexpr const char* kFeatures[] = {"inbox",    "calendar", "billing",
                                     "messages", "attachments", "contacts"};

constexpr const char* kTicketTypes[] = {"question", "incident", "problem", "task"};
constexpr const char* kVia[] = {"email", "web", "phone"};
constexpr const char* kSeverity[] = {"low", "normal", "high"};

// One sentence per priority, all mentioning the crash so escalation stays
// separable on that single word.
constexpr std::pair<corpus::Priority, const char*> kPrioritySentences[] = {
    {corpus::Priority::kBlocker, "This outage stops the whole office from working."},
    {corpus::Priority::kCritical, "We lost patient data when the crash happened."},
    {corpus::Priority::kMajor, "The crash forces us to restart several times a day."},
    {corpus::Priority::kMinor, "We found a workaround but the crash is annoying."},
    {corpus::Priority::kTrivial, "The crash only hits a cosmetic settings page."},
};

constexpr const char* kEscalatedOpeners[] = {
    "The app has a crash every time I open the %s.",
    "After the update we see a crash in the %s screen.",
    "Our staff reports a crash when saving the %s.",
};

constexpr const char* kRoutineQuestions[] = {
    "How do I change my %s preferences?",
    "Can you explain how to export the %s report?",
    "I forgot where the %s settings are.",
    "Please tell me how to share the %s with a colleague.",
};

constexpr const char* kCrmReplies[] = {
    "Thanks for reaching out to us.",
    "I will look into the %s question right away.",
    "Could you tell me which version you are using?",
};

constexpr const char* kCustomerFollowUps[] = {
    "We are using the latest version.",
    "Thank you for the quick reply.",
    "Let me know if you need more details.",
};

constexpr const char* kContextSentences[] = {
    "Our staff opens the %s screen every morning.",
    "The %s list loads slowly for the staff.",
    "We use the %s list for daily work.",
    "The %s screen is part of our routine.",
    "Everyone checks the %s list before lunch.",
};

constexpr const char* kAsides[] = {
    "By the way, my neighbour mentioned a %s story yesterday.",
    "Unrelated, but a cousin joked about a %s during dinner.",
};

std::string fill(const char* pattern, const std::string& value) {
  char buf[256];
  std::snprintf(buf, sizeof buf, pattern, value.c_str());
  return buf;
}

template <typename T, std::size_t N>
const T& pick(Rng& rng, const T (&items)[N]) {
  return items[rng.uniform_index(N)];
}

std::string id_of(std::size_t i) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "R%05zu", i + 1);
  return buf;
}

struct Draft {
  std::vector<corpus::Utterance> utterances;
  std::vector<text::SentenceOrigin> gold;
  std::string title;
  corpus::Priority priority = corpus::Priority::kMajor;
};

void say(Draft& d, SpeakerRole role, std::vector<std::string> sentences,
         std::vector<std::size_t> gold_sentences = {}) {
  const int index = static_cast<int>(d.utterances.size());
  std::string text;
  for (const auto& s : sentences) text += (text.empty() ? "" : " ") + s;
  d.utterances.push_back({role, text, index});
  for (std::size_t g : gold_sentences) d.gold.push_back({index, static_cast<int>(g)});
}

Draft separable(Rng& rng, bool escalate, const std::string& feature) {
  Draft d;
  std::vector<std::string> opening;
  if (escalate) {
    const auto& [priority, sentence] = pick(rng, kPrioritySentences);
    d.priority = priority;
    opening = {"Hello support team.", fill(pick(rng, kEscalatedOpeners), feature), sentence};
    if (rng.uniform_index(2) == 0) {
      opening.push_back(std::string("My colleague ") + pick(rng, kPersonnel).name +
                        " wanted a copy of the " + feature + " log.");
    }
    d.title = "Crash in " + feature + " screen";
    say(d, SpeakerRole::kCustomer, opening, {1, 2});
  } else {
    opening = {"Hello support team.", fill(pick(rng, kRoutineQuestions), feature)};
    say(d, SpeakerRole::kCustomer, opening, {1});
  }
  say(d, SpeakerRole::kCrmStaff,
      {kCrmReplies[0], fill(kCrmReplies[1 + rng.uniform_index(2)], feature)}, {1});
  say(d, SpeakerRole::kCustomer, {pick(rng, kCustomerFollowUps)});
  return d;
}

Draft concentrated(Rng& rng, bool escalate, const std::string& feature) {
  Draft d;
  const std::string word = escalate ? "crash" : "tooltip";
  const std::string central =
      "The " + feature + " screen shows a " + word + " when the " + feature + " list loads.";
  std::vector<std::string> context;
  for (const char* c : kContextSentences) context.push_back(fill(c, feature));
  const std::string aside = fill(pick(rng, kAsides), rng.uniform_index(2) ? "crash" : "tooltip");
  // Central sentence goes at a random slot among the context sentences.
  const std::size_t slot = rng.uniform_index(context.size() + 1);
  std::vector<std::string> all = context;
  all.insert(all.begin() + static_cast<std::ptrdiff_t>(slot), central);
  std::vector<std::string> u1(all.begin(), all.begin() + 3);
  std::vector<std::string> u3(all.begin() + 3, all.end());
  u3.push_back(aside);
  say(d, SpeakerRole::kCustomer, u1, slot < 3 ? std::vector<std::size_t>{slot}
                                              : std::vector<std::size_t>{});
  say(d, SpeakerRole::kCrmStaff, {"Thanks for the report."});
  say(d, SpeakerRole::kCustomer, u3,
      slot >= 3 ? std::vector<std::size_t>{slot - 3} : std::vector<std::size_t>{});
  d.title = escalate ? "Crash in " + feature + " list" : "";
  return d;
}

}  // namespace

pipeline::TrainingCorpus generate(const Params& params) {
  if (params.requests < 2) throw Error(ErrorCode::kInvalidArgument, "need at least two requests");
  if (!(params.escalation_rate > 0.0 && params.escalation_rate < 1.0)) {
    throw Error(ErrorCode::kInvalidArgument, "escalation_rate must be in (0, 1)");
  }
  Rng rng(params.seed);
  pipeline::TrainingCorpus out;
  for (const auto& p : kPersonnel) out.personnel.emplace_back(p.name, p.role);

  // Escalated count is fixed so both classes always exist.
  const auto escalated_count = std::clamp<std::size_t>(
      static_cast<std::size_t>(params.escalation_rate * static_cast<double>(params.requests) + 0.5),
      1, params.requests - 1);
  std::vector<bool> escalate(params.requests, false);
  std::fill(escalate.begin(), escalate.begin() + static_cast<std::ptrdiff_t>(escalated_count), true);
  for (std::size_t i = escalate.size(); i > 1; --i) {
    const std::size_t j = rng.uniform_index(i);
    const bool tmp = escalate[i - 1];
    escalate[i - 1] = escalate[j];
    escalate[j] = tmp;
  }

  const auto base = corpus::Timestamp(std::chrono::seconds(1420070400));  // 2015-01-01
  for (std::size_t i = 0; i < params.requests; ++i) {
    const Person& requester = pick(rng, kPersonnel);
    const Brand& brand = pick(rng, kBrands);
    const std::string feature = pick(rng, kFeatures);
    Draft d = params.shape == Shape::kSeparable ? separable(rng, escalate[i], feature)
                                                : concentrated(rng, escalate[i], feature);
    if (params.priority_from_brand || params.shape == Shape::kSummaryConcentrated) {
      d.priority = brand.priority;
    }
    corpus::UserRequest r;
    r.id = id_of(i);
    r.conversation = std::move(d.utterances);
    r.requester = requester.name;
    r.ticket_type = pick(rng, kTicketTypes);
    r.tags = {feature};
    r.via = pick(rng, kVia);
    r.severity = pick(rng, kSeverity);
    if (params.assignees) r.assignee = "Dana Lee";
    r.time_open = base + std::chrono::hours(static_cast<long>(i) * 7);
    r.time_to_assign = static_cast<long long>(600 + rng.uniform_index(86400));
    r.subject = "Question about the " + feature;
    r.brand_name = brand.name;
    r.organization = pick(rng, kOrganizations);
    r.escalated = escalate[i];
    if (params.gold_summaries && !d.gold.empty()) r.gold_summary = d.gold;
    if (escalate[i]) {
      r.time_escalated = *r.time_open + std::chrono::seconds(*r.time_to_assign / 2);
      if (params.tickets) {
        corpus::DevelopmentTicket t;
        t.request_id = r.id;
        t.title = d.title;
        t.content = std::string("In the ") + brand.name + " system; " +
                    ticketgen::indefinite_article(requester.role) + " " + requester.role +
                    " reports a crash in the " + feature + ".";
        t.priority = d.priority;
        t.assignee = params.assignees ? brand.developer : "";
        r.ticket = std::move(t);
      }
    }
    out.requests.push_back(std::move(r));
  }

  for (const auto& b : kBrands) {
    out.documents.push_back({std::string("brand-") + b.name, corpus::DocumentKind::kBrandDescription,
                             std::string("Brightsquid sells the ") + b.name +
                                 " product to clinics. Clinics trust the " + b.name +
                                 " product for secure work."});
  }
  for (const char* o : kOrganizations) {
    out.documents.push_back({std::string("org-") + o, corpus::DocumentKind::kOrgDescription,
                             std::string("The staff at ") + o +
                                 " relies on Brightsquid every day."});
  }
  out.documents.push_back({"team-mobile", corpus::DocumentKind::kTeamDescription,
                           "The work of the Mobile Team covers the phone apps."});
  out.documents.push_back({"story-1", corpus::DocumentKind::kUserStory,
                           "As a doctor I want the Inbox Search to find messages quickly."});
  return out;
}

}  // namespace essmart::synthetic
