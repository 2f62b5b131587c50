#ifndef ESSMART_CORPUS_TYPES_H_
#define ESSMART_CORPUS_TYPES_H_

#include <chrono>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "essmart/common/types.h"
#include "essmart/textproc/sentence.h"

namespace essmart::corpus {

using Timestamp = std::chrono::sys_seconds;

struct Utterance {
  SpeakerRole speaker_role = SpeakerRole::kCustomer;
  std::string text;
  int index = 0;

  bool operator==(const Utterance&) const = default;
};

enum class Priority { kBlocker, kCritical, kMajor, kMinor, kTrivial };

inline constexpr Priority kAllPriorities[] = {Priority::kBlocker, Priority::kCritical,
                                              Priority::kMajor, Priority::kMinor,
                                              Priority::kTrivial};

std::string_view to_string(Priority priority);
Priority priority_from_string(std::string_view name);
std::optional<Priority> try_priority_from_string(std::string_view name);

enum class TicketSource { kHuman, kGenerated };

struct DevelopmentTicket {
  std::string request_id;
  std::string title;  // at most kMaxTitleWords word tokens
  std::string content;
  Priority priority = Priority::kMajor;
  std::string assignee;
  TicketSource source = TicketSource::kHuman;

  bool operator==(const DevelopmentTicket&) const = default;
};

inline constexpr std::size_t kMaxTitleWords = 11;

// One customer conversation with its satellite attributes. Gold labels
// (escalated, gold_summary, ticket) are optional so the same record serves
// training and live triage.
struct UserRequest {
  std::string id;
  std::vector<Utterance> conversation;
  std::string requester;
  std::string ticket_type;
  std::set<std::string> tags;
  std::string via;
  std::string severity;
  std::optional<std::string> assignee;
  std::optional<Timestamp> time_open;
  std::optional<Timestamp> time_escalated;
  std::optional<long long> time_to_assign;  // seconds
  std::string subject;
  std::string brand_name;
  std::string organization;
  std::optional<bool> escalated;
  std::optional<std::vector<text::SentenceOrigin>> gold_summary;
  std::optional<DevelopmentTicket> ticket;

  bool operator==(const UserRequest&) const = default;
};

struct GoldSummary {
  std::string request_id;
  std::vector<text::SentenceOrigin> sentence_indices;
};

enum class DocumentKind {
  kUserStory,
  kReleaseNote,
  kOrgDescription,
  kTeamDescription,
  kBrandDescription,
};

std::string_view to_string(DocumentKind kind);
DocumentKind document_kind_from_string(std::string_view name);

struct SourceDocument {
  std::string id;
  DocumentKind kind = DocumentKind::kUserStory;
  std::string text;
};

// Sentences of every utterance in order, origins (utterance, sentence).
std::vector<text::SentenceRecord> conversation_sentences(const UserRequest& request);

// Whole thread joined with single spaces.
std::string conversation_text(const UserRequest& request);

std::optional<GoldSummary> gold_summary(const UserRequest& request);

std::size_t word_count(std::string_view text);

}  // namespace essmart::corpus

#endif  // ESSMART_CORPUS_TYPES_H_
