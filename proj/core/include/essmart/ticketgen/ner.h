#ifndef ESSMART_TICKETGEN_NER_H_
#define ESSMART_TICKETGEN_NER_H_

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "essmart/textproc/sentence.h"
#include "essmart/ticketgen/thesaurus.h"

namespace essmart::ticketgen {

enum class MentionSource { kGazetteer, kCapitalized, kEmail, kPhone };

std::string_view to_string(MentionSource source);

struct EntityMention {
  std::size_t begin = 0;  // token index
  std::size_t end = 0;    // one past the last token
  std::string surface;
  std::optional<EntityKind> kind;  // empty when unresolved
  std::string canonical;           // thesaurus canonical form when resolved
  MentionSource source = MentionSource::kGazetteer;
};

// Token indices refer to text::tokenize(sentence.text). Candidates are the
// longest thesaurus match at each position, e-mail addresses, phone numbers
// and capitalized runs that do not start the sentence; overlaps are resolved
// longest first, then leftmost, with thesaurus matches preferred at equal
// length. Mentions come back in text order.
std::vector<EntityMention> ner_detect(const text::SentenceRecord& sentence,
                                      const Thesaurus& thesaurus);

}  // namespace essmart::ticketgen

#endif  // ESSMART_TICKETGEN_NER_H_
