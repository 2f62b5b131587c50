#ifndef ESSMART_TEXTPROC_SENTENCE_H_
#define ESSMART_TEXTPROC_SENTENCE_H_

#include <compare>
#include <string>
#include <string_view>
#include <vector>

#include "essmart/common/types.h"
#include "essmart/textproc/word_lists.h"

namespace essmart::text {

// Position of a sentence inside a conversation.
struct SentenceOrigin {
  int utterance = 0;
  int sentence = 0;

  auto operator<=>(const SentenceOrigin&) const = default;
};

struct SentenceRecord {
  std::string text;                            // verbatim source substring
  std::vector<std::string> tokens;             // word tokens as written
  std::vector<std::string> normalized_tokens;  // lowercased tokens
  SentenceOrigin origin;
  SpeakerRole speaker = SpeakerRole::kCustomer;

  bool operator==(const SentenceRecord&) const = default;
};

// Splits on '.', '!' or '?' (plus any trailing closing quotes/brackets) when
// followed by end of input or by whitespace and an uppercase letter. A '.'
// ending a listed abbreviation or a single-letter initial is not a boundary.
std::vector<SentenceRecord> sentence_split(
    std::string_view text, int utterance_index = 0,
    SpeakerRole speaker = SpeakerRole::kCustomer,
    const WordSet& abbreviations = default_abbreviations());

SentenceRecord make_sentence(std::string_view text, SentenceOrigin origin,
                             SpeakerRole speaker = SpeakerRole::kCustomer);

}  // namespace essmart::text

#endif  // ESSMART_TEXTPROC_SENTENCE_H_
