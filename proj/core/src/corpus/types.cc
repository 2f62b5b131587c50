#include "essmart/corpus/types.h"

#include "essmart/common/error.h"
#include "essmart/textproc/tokenizer.h"

namespace essmart::corpus {

std::string_view to_string(Priority priority) {
  switch (priority) {
    case Priority::kBlocker: return "Blocker";
    case Priority::kCritical: return "Critical";
    case Priority::kMajor: return "Major";
    case Priority::kMinor: return "Minor";
    case Priority::kTrivial: return "Trivial";
  }
  return "Major";
}

std::optional<Priority> try_priority_from_string(std::string_view name) {
  for (Priority p : kAllPriorities) {
    if (to_string(p) == name) return p;
  }
  return std::nullopt;
}

Priority priority_from_string(std::string_view name) {
  if (auto p = try_priority_from_string(name)) return *p;
  throw Error(ErrorCode::kInvalidArgument,
              "priority must be Blocker, Critical, Major, Minor or Trivial, got '" +
                  std::string(name) + "'");
}

std::string_view to_string(DocumentKind kind) {
  switch (kind) {
    case DocumentKind::kUserStory: return "user_story";
    case DocumentKind::kReleaseNote: return "release_note";
    case DocumentKind::kOrgDescription: return "org_description";
    case DocumentKind::kTeamDescription: return "team_description";
    case DocumentKind::kBrandDescription: return "brand_description";
  }
  return "user_story";
}

DocumentKind document_kind_from_string(std::string_view name) {
  for (auto kind : {DocumentKind::kUserStory, DocumentKind::kReleaseNote,
                    DocumentKind::kOrgDescription, DocumentKind::kTeamDescription,
                    DocumentKind::kBrandDescription}) {
    if (to_string(kind) == name) return kind;
  }
  throw Error(ErrorCode::kInvalidArgument,
              "unknown document kind '" + std::string(name) + "'");
}

std::vector<text::SentenceRecord> conversation_sentences(const UserRequest& request) {
  std::vector<text::SentenceRecord> out;
  for (std::size_t u = 0; u < request.conversation.size(); ++u) {
    const auto& utt = request.conversation[u];
    auto sentences = text::sentence_split(utt.text, static_cast<int>(u), utt.speaker_role);
    for (auto& s : sentences) out.push_back(std::move(s));
  }
  return out;
}

std::string conversation_text(const UserRequest& request) {
  std::string out;
  for (const auto& utt : request.conversation) {
    if (!out.empty()) out.push_back(' ');
    out += utt.text;
  }
  return out;
}

std::optional<GoldSummary> gold_summary(const UserRequest& request) {
  if (!request.gold_summary) return std::nullopt;
  return GoldSummary{request.id, *request.gold_summary};
}

std::size_t word_count(std::string_view text) {
  return text::tokenize(text).size();
}

}  // namespace essmart::corpus
