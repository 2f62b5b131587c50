#include "essmart/textproc/sentence.h"

#include <cctype>

#include "essmart/common/io.h"
#include "essmart/textproc/tokenizer.h"

namespace essmart::text {
namespace {

bool is_terminal(char c) { return c == '.' || c == '!' || c == '?'; }

bool is_closer(char c) {
  return c == '"' || c == '\'' || c == ')' || c == ']';
}

bool is_opener(char c) { return c == '"' || c == '\'' || c == '(' || c == '['; }

bool is_space(char c) { return std::isspace(static_cast<unsigned char>(c)); }

bool is_upper(char c) { return std::isupper(static_cast<unsigned char>(c)); }

// The whitespace-delimited word that ends with the '.' at `dot`.
std::string word_before(std::string_view text, std::size_t dot) {
  std::size_t b = dot;
  while (b > 0 && !is_space(text[b - 1])) --b;
  std::string_view word = text.substr(b, dot + 1 - b);
  while (!word.empty() && is_opener(word.front())) word.remove_prefix(1);
  return to_lower(word);
}

bool is_abbreviation(std::string_view text, std::size_t dot,
                     const WordSet& abbreviations) {
  std::string word = word_before(text, dot);
  if (abbreviations.count(word) > 0) return true;
  // Single-letter initial such as "J."
  return word.size() == 2 && std::isalpha(static_cast<unsigned char>(word[0]));
}

}  // namespace

SentenceRecord make_sentence(std::string_view text, SentenceOrigin origin,
                             SpeakerRole speaker) {
  SentenceRecord record;
  record.text = std::string(text);
  record.tokens = word_tokens(text);
  record.normalized_tokens.reserve(record.tokens.size());
  for (const auto& t : record.tokens) {
    record.normalized_tokens.push_back(to_lower(t));
  }
  record.origin = origin;
  record.speaker = speaker;
  return record;
}

std::vector<SentenceRecord> sentence_split(std::string_view text,
                                           int utterance_index,
                                           SpeakerRole speaker,
                                           const WordSet& abbreviations) {
  std::vector<SentenceRecord> out;
  const std::size_t n = text.size();
  std::size_t start = 0;
  auto emit = [&](std::size_t end) {
    std::string_view piece = trim(text.substr(start, end - start));
    if (!piece.empty()) {
      out.push_back(make_sentence(
          piece, {utterance_index, static_cast<int>(out.size())}, speaker));
    }
    start = end;
  };

  std::size_t i = 0;
  while (i < n) {
    if (!is_terminal(text[i])) {
      ++i;
      continue;
    }
    std::size_t j = i;
    while (j < n && is_terminal(text[j])) ++j;
    while (j < n && is_closer(text[j])) ++j;
    const bool single_dot = (j == i + 1 || is_closer(text[i + 1])) && text[i] == '.';

    std::size_t k = j;
    while (k < n && is_space(text[k])) ++k;
    bool boundary = false;
    if (k == n) {
      boundary = true;
    } else if (k > j) {
      char next = text[k];
      if (is_opener(next) && k + 1 < n) next = text[k + 1];
      boundary = is_upper(next);
      if (boundary && single_dot && is_abbreviation(text, i, abbreviations)) {
        boundary = false;
      }
    }
    if (boundary) emit(j);
    i = j;
  }
  emit(n);
  return out;
}

}  // namespace essmart::text
